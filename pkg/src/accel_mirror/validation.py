"""Self-contained invariant suite run by ``accel-mirror validate``."""

import math
from dataclasses import dataclass

import numpy as np

from . import circuit, detector, statistics
from .circuit import MirrorModel, closed_form_transform, compose
from .errors import MirrorError
from .modes import Wavepacket, thermal_factors
from .numerics import integrate_semi_infinite, spectral_weights


@dataclass
class Check:
    name: str
    measured: float
    tolerance: float
    passed: bool
    note: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        extra = f"  ({self.note})" if self.note else ""
        return f"{status}  {self.name:<44s} measured={self.measured:.3e}  tol={self.tolerance:.1e}{extra}"


def _le(name, measured, tol, note=""):
    ok = bool(np.isfinite(measured) and measured <= tol)
    return Check(name, float(measured), tol, ok, note)


def random_circuits(n, seed=20150101):
    """Random (Omega, R, phi) draws shared by the circuit checks."""
    rng = np.random.default_rng(seed)
    omegas = rng.uniform(0.01, 5.0, n)
    refl = rng.uniform(0.0, 1.0, n)
    phases = rng.uniform(0.0, 2.0 * math.pi, n)
    return [(float(w), MirrorModel.tabulated([(0.0, r), (10.0, r)], phase=float(p)))
            for w, r, p in zip(omegas, refl, phases)]


def _composer(perturb):
    if not perturb:
        return compose

    def perturbed(omega, model):
        m = np.array(compose(omega, model).m)
        m[0, 0] += perturb
        return circuit.ModeTransform(m, omega, "composed")
    return perturbed


def circuit_checks(n=1000, perturb=0.0):
    build = _composer(perturb)
    draws = random_circuits(n)
    bog = oracle = conj = 0.0
    for omega, model in draws:
        m = build(omega, model)
        bog = max(bog, m.bogoliubov_residual())
        conj = max(conj, m.conjugation_residual())
        oracle = max(oracle, float(np.max(np.abs(m.m - closed_form_transform(omega, model).m))))
    return [
        _le("bogoliubov residual |MJM^+ - J|", bog, 1e-12, f"{n} draws"),
        _le("conjugate row pairing", conj, 1e-12),
        _le("compose vs closed form (max abs)", oracle, 1e-12, f"{n} draws"),
    ]


def statistics_checks(n=500, perturb=0.0):
    build = _composer(perturb)
    draws = random_circuits(n, seed=7)
    num_err = pair_err = zero_err = 0.0
    for omega, model in draws:
        m = build(omega, model)
        n_closed = statistics.number_spectrum(omega, model)
        for k in range(4):
            num_err = max(num_err, abs(statistics.vacuum_number(m, k) - n_closed))
        closed = statistics.closed_form_pair_moments(omega, model)
        for x in statistics.OUTPUTS:
            for y in statistics.OUTPUTS:
                got = statistics.vacuum_pair_moment(m, x, y, "aa")
                want = closed.get((x, y), 0j)
                dd = statistics.vacuum_pair_moment(m, x, y, "dd")
                want_dd = np.conj(closed.get((y, x), 0j))
                if (x, y) in closed:
                    pair_err = max(pair_err, abs(got - want), abs(dd - want_dd))
                else:
                    zero_err = max(zero_err, abs(got), abs(dd))
                if x != y:
                    zero_err = max(zero_err, abs(statistics.vacuum_pair_moment(m, x, y, "da")))
    w = math.log(2.0) / math.pi
    spot = statistics.vacuum_number(build(w, MirrorModel.perfect()), 0)
    return [
        _le("vacuum number vs closed-form spectrum", num_err, 1e-12, f"{n} draws"),
        _le("pair moments vs closed forms", pair_err, 1e-12),
        _le("unlisted pair moments vanish", zero_err, 1e-14),
        _le("n(ln2/pi), perfect mirror = 8/9", abs(spot - 8.0 / 9.0), 1e-12),
    ]


def quadrature_checks():
    out = []
    r = integrate_semi_infinite(lambda x: spectral_weights(x)[2])
    out.append(_le("int_0^inf w_min = 1/(2 pi)", abs(r.value * 2 * math.pi - 1.0), 1e-8))
    r = integrate_semi_infinite(lambda x: spectral_weights(x)[0], lower=0.05)
    exact = 1.0 / (2.0 * math.pi * math.expm1(0.1 * math.pi))
    out.append(_le("int_0.05^inf w_n (antiderivative)", abs(r.value / exact - 1.0), 1e-8))
    r = integrate_semi_infinite(lambda x: np.exp(-x))
    out.append(_le("int_0^inf e^-x = 1", abs(r.value - 1.0), 1e-8))
    om = np.linspace(0.01, 5.0, 1000)
    w_n, w_aa, w_min = spectral_weights(om)
    out.append(_le("w_aa - 2 w_n = w_min (relative)",
                   float(np.max(np.abs(w_aa - 2 * w_n - w_min) / w_aa)), 1e-13))
    tf = thermal_factors(1.0)
    out.append(_le("cosh^2 r - sinh^2 r = 1", abs(tf.cosh2 - tf.sinh2 - 1.0), 1e-12))
    return out


def detector_checks():
    out = []
    rat = MirrorModel.rational(10.0)
    wp = Wavepacket(20.0, 1.0, 0.0)
    wp3 = Wavepacket(20.0, 1.0, 0.3)
    sym = abs(detector.flux_particle_number(wp3, rat)
              - detector.flux_particle_number(wp3.with_v0(-0.3), rat))
    out.append(_le("N(V0) = N(-V0)", sym, 1e-8))

    n_f = detector.flux_particle_number(wp3, rat)
    aa = detector.pair_moment_aa(wp3, rat)
    vmin, _ = detector.min_variance(wp3, rat)
    out.append(_le("combined vs separated var_min (rel)",
                   abs(vmin - (1 + 2 * n_f - 2 * abs(aa))) / vmin, 1e-6))

    phase_err = abs(detector.reduce_phase(np.angle(aa * np.exp(2j * wp3.shift)) - math.pi))
    out.append(_le("arg <aa> = pi - 2 k0 V0", phase_err, 1e-12))

    worst = 0.0
    for eps in (0.02, 0.05, 0.1):
        num = detector.flux_particle_number(wp, MirrorModel.sharp(eps))
        worst = max(worst, abs(num / detector.approx_particle_number(wp, eps) - 1))
    out.append(_le("sharp cutoff numeric vs analytic", worst, 1e-2))

    vperf, _ = detector.min_variance(wp, MirrorModel.perfect())
    out.append(_le("perfect mirror var_min = 0.9746", abs(vperf - 0.9746), 2e-3))

    bound = max(0.5 - vmin, vmin - 1.0, 0.5 - vperf, vperf - 1.0, 0.0)
    out.append(_le("0.5 <= var_min <= 1", bound, 0.0))

    transp = MirrorModel.transparent()
    null = max(detector.flux_particle_number(wp3, transp), abs(detector.pair_moment_aa(wp3, transp)),
               abs(detector.variance(wp3, transp, 0.7) - 1.0))
    out.append(_le("transparent mirror null", null, 1e-14))
    return out


def run_checks(perturb=0.0, n_circuits=1000):
    """Run every invariant; a raised library error counts as a failed check."""
    checks = []
    groups = (lambda: circuit_checks(n_circuits, perturb),
              lambda: statistics_checks(max(n_circuits // 2, 10), perturb),
              quadrature_checks, detector_checks)
    for group in groups:
        try:
            checks.extend(group())
        except MirrorError as exc:
            checks.append(Check(f"error: {type(exc).__name__}", math.nan, 0.0, False, str(exc)))
    return checks
