"""Inertial-detector observables for narrowband Gaussian wavepacket modes.

Only left-moving detector modes are treated.  With the Gaussian weights

    G-(W) = exp(-2 (sigma/k0)^2 (W - k0 V0)^2)
    G+(W) = exp(-2 (sigma/k0)^2 (W + k0 V0)^2)

and ``C = sqrt(8/pi) sigma / k0`` the observables are one-dimensional
integrals over the Rindler frequency W:

    N     = C   int (G- + G+) (1 - cos theta) w_n
    <aa>  = -C e^{-2 i k0 V0} int sqrt(G- G+) (1 - cos theta) w_aa
    Var(phi) = 1 + 2 N + 2 Re[<aa> e^{-2 i phi}]
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DivergenceError, DomainError
from .numerics import QuadratureSpec, integrate_semi_infinite, spectral_weights


@dataclass(frozen=True)
class DetectorReport:
    n_f: float
    e_f: float
    aa: complex
    var_min: float
    var_max: float
    phi_s: float
    diagnostics: dict = field(default_factory=dict)


def _prefactor(wp):
    return math.sqrt(8.0 / math.pi) * wp.sigma / wp.k0


def _spec_for(wp, model, quad):
    quad = quad or QuadratureSpec()
    return quad.with_hints(abs(wp.shift), *model.breakpoints)


def _require_regular(model, what):
    if not model.ir_regular:
        raise DivergenceError(
            f"{what} is infrared divergent for the {model.describe()} mirror "
            "(integrand ~ 1/Omega^2 at 0); use a low-frequency cutoff")


def reduce_phase(phi):
    """Map an angle onto [-pi/2, pi/2), the fundamental period of the variance."""
    return float((phi + 0.5 * math.pi) % math.pi - 0.5 * math.pi)


def _gaussians(omega, wp):
    c = (wp.sigma / wp.k0) ** 2
    s = wp.shift
    g_minus = np.exp(-2.0 * c * (omega - s) ** 2)
    g_plus = np.exp(-2.0 * c * (omega + s) ** 2)
    return g_minus, g_plus


def _flux_integrand(wp, model):
    def f(omega):
        g_minus, g_plus = _gaussians(omega, wp)
        w_n, _, _ = spectral_weights(omega)
        return (g_minus + g_plus) * model.one_minus_cos(omega) * w_n
    return f


def _pair_integrand(wp, model):
    c = (wp.sigma / wp.k0) ** 2
    s = wp.shift

    def f(omega):
        # sqrt(G- G+) collapses to a single Gaussian in omega
        root = np.exp(-2.0 * c * (omega * omega + s * s))
        _, w_aa, _ = spectral_weights(omega)
        return root * model.one_minus_cos(omega) * w_aa
    return f


def _squeeze_integrand(wp, model):
    c = (wp.sigma / wp.k0) ** 2
    s = wp.shift

    def f(omega):
        q = c * (omega * omega + s * s)
        z = 2.0 * c * omega * s
        # sqrt(G-) - sqrt(G+) = 2 sinh(z) e^{-q}, written to avoid cancellation
        diff = np.where(np.abs(z) < 1.0, 2.0 * np.sinh(z) * np.exp(-q),
                        np.exp(z - q) - np.exp(-z - q))
        w_n, _, w_min = spectral_weights(omega)
        bracket = 2.0 * w_n * diff * diff - 2.0 * np.exp(-2.0 * q) * w_min
        return model.one_minus_cos(omega) * bracket
    return f


def flux_integral(wp, model, quad=None):
    """Quadrature result for the particle number (before the prefactor)."""
    _require_regular(model, "the particle number")
    return integrate_semi_infinite(_flux_integrand(wp, model), _spec_for(wp, model, quad))


def flux_particle_number(wp, model, quad=None):
    """Mean number of Minkowski particles ``N(f)`` in the wavepacket mode.

    Raises DivergenceError for mirrors that reflect down to zero
    frequency (no infrared cutoff).
    """
    if model.law == "transparent":
        return 0.0
    res = flux_integral(wp, model, quad)
    return _prefactor(wp) * res.value


def energy(wp, model, quad=None):
    """Wavepacket energy ``E(f) = k0 N(f)`` in units of the acceleration."""
    return wp.k0 * flux_particle_number(wp, model, quad)


def pair_moment_aa(wp, model, quad=None):
    """Anomalous moment ``<a(f) a(f)>``; its phase is ``pi - 2 k0 V0``."""
    if model.law == "transparent":
        return 0j
    _require_regular(model, "the pair moment <aa>")
    res = integrate_semi_infinite(_pair_integrand(wp, model), _spec_for(wp, model, quad))
    return complex(-_prefactor(wp) * res.value * np.exp(-2j * wp.shift))


def squeezing_phase(wp):
    """Quadrature angle of minimum variance, ``-k0 V0`` reduced mod pi."""
    return reduce_phase(-wp.shift)


def min_variance(wp, model, quad=None):
    """Minimum quadrature variance and the angle where it occurs.

    Uses a single integrand in which the infrared-divergent parts of
    ``2N`` and ``2|<aa>|`` cancel pointwise, so it is finite for a
    perfect mirror as well.

    Returns
    -------
    (var_min, phi_s)
    """
    phi_s = squeezing_phase(wp)
    if model.law == "transparent":
        return 1.0, phi_s
    res = integrate_semi_infinite(_squeeze_integrand(wp, model), _spec_for(wp, model, quad))
    return 1.0 + _prefactor(wp) * res.value, phi_s


def variance(wp, model, phi, quad=None):
    """Quadrature variance ``(Delta X(phi))^2`` of the wavepacket mode.

    For mirrors without an infrared cutoff only ``phi = phi_s`` (mod pi)
    is finite; other angles raise DivergenceError.
    """
    if not math.isfinite(phi):
        raise DomainError("quadrature angle must be finite")
    if not model.ir_regular:
        if abs(reduce_phase(phi - squeezing_phase(wp))) < 1e-12:
            return min_variance(wp, model, quad)[0]
        raise DivergenceError(
            f"variance at phi={phi:g} diverges for the {model.describe()} mirror; "
            "only the squeezed quadrature is finite")
    n_f = flux_particle_number(wp, model, quad)
    aa = pair_moment_aa(wp, model, quad)
    return 1.0 + 2.0 * n_f + 2.0 * (aa * np.exp(-2j * phi)).real


def approx_particle_number(wp, epsilon):
    """Closed-form high-``k0`` approximation of N(f) for a sharp cutoff at ``epsilon``.

    Second-order Taylor expansion of the Gaussian weights about W = 0,
    valid when ``epsilon`` is small.
    """
    if not (math.isfinite(epsilon) and epsilon > 0):
        raise DomainError("cutoff epsilon must be finite and > 0")
    ratio = wp.sigma / wp.k0
    sv2 = (wp.sigma * wp.v0) ** 2
    lead = 1.0 / math.expm1(2.0 * math.pi * epsilon)
    corr = 2.0 * ratio ** 2 * (4.0 * sv2 - 1.0) * (1.0 / 12.0 - epsilon ** 2 / (2.0 * math.pi))
    return (2.0 / math.pi) ** 1.5 * ratio * math.exp(-2.0 * sv2) * (lead + corr)


def detector_report(wp, model, quad=None):
    """Evaluate every observable; divergent quantities are reported as inf/nan."""
    spec = _spec_for(wp, model, quad)
    diag = {"mirror": model.describe(), "ir_regular": model.ir_regular,
            "divergent": not model.ir_regular}
    c = _prefactor(wp)
    if model.ir_regular and model.law != "transparent":
        rn = integrate_semi_infinite(_flux_integrand(wp, model), spec)
        ra = integrate_semi_infinite(_pair_integrand(wp, model), spec)
        n_f = c * rn.value
        aa = complex(-c * ra.value * np.exp(-2j * wp.shift))
        diag.update(n_err=c * rn.err_estimate, aa_err=c * ra.err_estimate,
                    n_upper=rn.upper, aa_upper=ra.upper,
                    n_subdivisions=rn.subdivisions, aa_subdivisions=ra.subdivisions)
        var_max = 1.0 + 2.0 * n_f + 2.0 * abs(aa)
    elif model.law == "transparent":
        n_f, aa, var_max = 0.0, 0j, 1.0
    else:
        n_f, aa, var_max = math.inf, complex(math.nan, math.nan), math.inf
    if model.law == "transparent":
        var_min, phi_s = 1.0, squeezing_phase(wp)
    else:
        rs = integrate_semi_infinite(_squeeze_integrand(wp, model), spec)
        var_min, phi_s = 1.0 + c * rs.value, squeezing_phase(wp)
        diag.update(var_min_err=c * rs.err_estimate, var_min_upper=rs.upper,
                    var_min_subdivisions=rs.subdivisions)
    return DetectorReport(n_f, wp.k0 * n_f, aa, var_min, var_max, phi_s, diag)
