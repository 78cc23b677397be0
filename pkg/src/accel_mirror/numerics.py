"""Adaptive Gauss-Kronrod quadrature on [lower, inf) and stable spectral weights."""

import heapq
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, QuadratureError
from .modes import check_frequency

# 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15 constants).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[1:7:2] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[9:14:2] = _WG[2::-1]

_EPS = np.finfo(float).eps
_SERIES_BELOW = 1e-6


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and hints for :func:`integrate_semi_infinite`."""

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    peak_hints: tuple = field(default_factory=tuple)
    omega_ceiling: float = 50.0

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ConfigError("rel_tol and abs_tol must be positive")
        if self.max_subdivisions < 10:
            raise ConfigError("max_subdivisions must be >= 10")
        if not self.omega_ceiling > 0:
            raise ConfigError("omega_ceiling must be positive")
        hints = tuple(float(h) for h in self.peak_hints)
        if any(not math.isfinite(h) or h < 0 for h in hints):
            raise ConfigError("peak hints must be finite and nonnegative")
        object.__setattr__(self, "peak_hints", hints)

    def with_hints(self, *hints):
        return QuadratureSpec(self.rel_tol, self.abs_tol, self.max_subdivisions,
                              self.peak_hints + tuple(hints), self.omega_ceiling)


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    err_estimate: float
    subdivisions: int
    upper: float

    def __iter__(self):
        # allows ``value, err = integrate_semi_infinite(...)``
        return iter((self.value, self.err_estimate))


def _panel(f, a, b):
    half = 0.5 * (b - a)
    x = 0.5 * (a + b) + half * NODES
    y = np.asarray(f(x), dtype=float)
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    if not np.all(np.isfinite(y)):
        raise QuadratureError(f"integrand not finite on [{a:g}, {b:g}]")
    kron = half * float(KRONROD_WEIGHTS @ y)
    gauss = half * float(GAUSS_WEIGHTS @ y)
    resabs = half * float(KRONROD_WEIGHTS @ np.abs(y))
    err = max(abs(kron - gauss), 50.0 * _EPS * resabs)
    return kron, err


_LADDER = tuple(0.25 * 2.0 ** j for j in range(12))


def _initial_breaks(lower, spec):
    pts = {lower, spec.omega_ceiling}
    pts.update(p for p in _LADDER if lower < p < spec.omega_ceiling)
    pts.update(h for h in spec.peak_hints if lower < h < spec.omega_ceiling)
    return sorted(pts)


def integrate_semi_infinite(f, spec=None, lower=0.0):
    """Integrate a vectorised function over ``[lower, inf)``.

    The range is cut at an upper limit chosen on the fly: panels on a
    doubling ladder (plus the peak hints) are accepted left to right
    until a whole doubling panel beyond the last hint contributes less
    than 1% of the tolerance; its size is added to the error estimate as
    the tail bound.  ``spec.omega_ceiling`` is a hard stop.  The kept
    panels are then refined adaptively, always bisecting the panel with
    the largest Kronrod-minus-Gauss difference.

    Returns a :class:`QuadratureResult`, which unpacks as
    ``(value, err_estimate)``.  Raises QuadratureError if the tolerance
    is not met within ``spec.max_subdivisions`` bisections.
    """
    spec = spec or QuadratureSpec()
    lower = float(lower)
    if not (math.isfinite(lower) and 0.0 <= lower < spec.omega_ceiling):
        raise ConfigError("lower limit must lie in [0, omega_ceiling)")

    breaks = _initial_breaks(lower, spec)
    last_hint = max((h for h in spec.peak_hints), default=lower)
    panels = []
    running = 0.0
    tail = 0.0
    upper = breaks[-1]
    for a, b in zip(breaks[:-1], breaks[1:]):
        val, err = _panel(f, a, b)
        panels.append((a, b, val, err))
        running += val
        # only whole doubling panels past every hint may end the range
        if a in _LADDER and a >= max(last_hint, 1.0):
            tol = max(spec.abs_tol, spec.rel_tol * abs(running))
            if abs(val) + err < 0.01 * tol:
                tail = abs(val) + err
                upper = b
                break

    heap = [(-err, a, b, val) for a, b, val, err in panels]
    heapq.heapify(heap)
    splits = 0
    while True:
        ordered = sorted(heap, key=lambda p: p[1])
        value = math.fsum(p[3] for p in ordered)
        err_total = math.fsum(-p[0] for p in ordered) + tail
        if err_total <= max(spec.abs_tol, spec.rel_tol * abs(value)):
            return QuadratureResult(value, float(err_total), splits, upper)
        if splits >= spec.max_subdivisions:
            raise QuadratureError(
                f"no convergence after {splits} subdivisions "
                f"(value {value:.6g}, error {err_total:.3g})",
                value=value, err_estimate=err_total, subdivisions=splits)
        neg_err, a, b, _ = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        if not a < mid < b:
            raise QuadratureError(
                f"panel [{a:g}, {b:g}] cannot be bisected further",
                value=value, err_estimate=err_total, subdivisions=splits)
        for lo, hi in ((a, mid), (mid, b)):
            val, err = _panel(f, lo, hi)
            heapq.heappush(heap, (-err, lo, hi, val))
        splits += 1


def spectral_weights(omega):
    """Spectral weights of the flux, pair-moment and squeezing integrands.

    Returns ``(w_n, w_aa, w_min)`` with::

        w_n   = e^{2 pi W} / (e^{2 pi W} - 1)^2
        w_aa  = e^{pi W} (e^{2 pi W} + 1) / (e^{2 pi W} - 1)^2
        w_min = e^{pi W} / (e^{pi W} + 1)^2  ( = w_aa - 2 w_n )

    written in terms of ``e^{-pi W}`` and ``expm1`` so nothing overflows;
    below ``W = 1e-6`` the Laurent series are used instead.
    """
    om = check_frequency(omega)
    y = np.pi * om
    with np.errstate(under="ignore"):
        t = np.exp(-y)
        d2 = -np.expm1(-2.0 * y)     # 1 - e^{-2y}
        w_n = t * t / (d2 * d2)
        w_aa = t * (1.0 + t * t) / (d2 * d2)
        w_min = t / ((1.0 + t) * (1.0 + t))
    small = om < _SERIES_BELOW
    if np.any(small):
        ys = np.where(small, y, 1.0)
        y2 = ys * ys
        w_n = np.where(small, 0.25 / y2 - 1.0 / 12.0 + y2 / 60.0, w_n)
        w_aa = np.where(small, 0.5 / y2 + 1.0 / 12.0 - 7.0 * y2 / 240.0, w_aa)
        w_min = np.where(small, 0.25 - y2 / 16.0, w_min)
    if np.ndim(om) == 0:
        return float(w_n), float(w_aa), float(w_min)
    return w_n, w_aa, w_min
