"""Closed-form relations between Minkowski, Unruh and Rindler modes.

All frequencies are dimensionless Rindler frequencies ``Omega = omega / a``;
the proper acceleration is fixed to ``a = 1``.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

OMEGA_MAX = 700.0
NARROWBAND_WARN = 0.2
NARROWBAND_MAX = 0.5


def check_frequency(omega, name="omega"):
    """Validate dimensionless frequencies and return them as a float array.

    Raises DomainError unless every entry satisfies ``0 < omega <= 700``.
    """
    arr = np.asarray(omega, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    if np.any(arr <= 0.0):
        raise DomainError(f"{name} must be > 0 (squeezing diverges at 0)")
    if np.any(arr > OMEGA_MAX):
        raise DomainError(f"{name} must be <= {OMEGA_MAX}")
    return arr


def _scalar_or_array(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


@dataclass(frozen=True)
class ThermalFactors:
    """Hyperbolic functions of the Unruh squeezing parameter.

    ``log_sinh2`` is carried alongside ``sinh2`` because the latter
    underflows in double precision once ``2*pi*Omega`` exceeds ~745.
    """

    r: float
    cosh2: float
    sinh2: float
    cs: float
    log_sinh2: float

    @property
    def cosh(self):
        return math.sqrt(self.cosh2)

    @property
    def sinh(self):
        return math.sqrt(self.sinh2)


@dataclass(frozen=True)
class Wavepacket:
    """Gaussian detector mode with central frequency, bandwidth and position.

    ``k0`` and ``sigma`` are in units of the acceleration, ``v0`` is the
    dimensionless product ``a * V0``.
    """

    k0: float
    sigma: float
    v0: float = 0.0

    def __post_init__(self):
        for name in ("k0", "sigma", "v0"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"wavepacket {name} must be finite")
        if self.k0 <= 0.0 or self.sigma <= 0.0:
            raise DomainError("wavepacket needs k0 > 0 and sigma > 0")
        ratio = self.sigma / self.k0
        if ratio > NARROWBAND_MAX:
            raise DomainError(
                f"sigma/k0 = {ratio:.3g} exceeds {NARROWBAND_MAX}; "
                "the narrowband overlaps are not valid there")
        if ratio > NARROWBAND_WARN:
            warnings.warn(
                f"sigma/k0 = {ratio:.3g} > {NARROWBAND_WARN}: narrowband "
                "approximation is degraded", RuntimeWarning, stacklevel=3)

    @property
    def shift(self):
        """Peak location ``k0 * V0`` of the Gaussian weights in Omega."""
        return self.k0 * self.v0

    def with_v0(self, v0):
        return Wavepacket(self.k0, self.sigma, v0)


def squeeze_param(omega):
    """Squeezing parameter ``r`` with ``tanh(r) = exp(-pi*Omega)``.

    Uses ``r = -log(tanh(pi*Omega/2)) / 2`` and switches to a ``log1p``
    form at large Omega so neither end loses relative accuracy.
    """
    y = np.pi * check_frequency(omega)
    with np.errstate(under="ignore"):
        t = np.exp(-y)
        small = -0.5 * np.log(np.tanh(0.5 * np.minimum(y, 1.0)))
        large = -0.5 * np.log1p(-2.0 * t / (1.0 + t))
    return _scalar_or_array(np.where(y < 1.0, small, large))


def thermal_factors(omega):
    """Return cosh^2 r, sinh^2 r and cosh r sinh r for a scalar frequency.

    Evaluated from ``exp(-2 pi Omega)`` and ``expm1`` so that
    ``sinh2 = 1 / (e^{2 pi Omega} - 1)`` never comes from ``cosh2 - 1``.
    """
    om = float(check_frequency(omega))
    x = 2.0 * math.pi * om
    denom = -math.expm1(-x)          # 1 - e^{-x}
    cosh2 = 1.0 / denom
    log_sinh2 = -x - math.log(denom)
    sinh2 = math.exp(log_sinh2)
    cs = math.exp(-0.5 * x) / denom
    return ThermalFactors(float(squeeze_param(om)), cosh2, sinh2, cs, log_sinh2)


def gamma_abs2(x):
    """``|Gamma(1 + i x)|^2 = pi x / sinh(pi x)``, equal to 1 at ``x = 0``."""
    ax = np.abs(np.asarray(x, dtype=float))
    y = np.pi * ax
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        # 2y e^{-y} / (1 - e^{-2y}) avoids overflow of sinh for large y
        direct = 2.0 * y * np.exp(-y) / -np.expm1(-2.0 * np.where(y > 0, y, 1.0))
    series = 1.0 - y * y / 6.0 + 7.0 * y ** 4 / 360.0
    return _scalar_or_array(np.where(y < 1e-4, series, direct))


def minkowski_unruh_abs2(k):
    """``|A_k|^2 = |B_k|^2 = 1 / (2 pi k)``; independent of the Rindler frequency.

    The Gamma-function magnitude cancels the ``sinh`` prefactor of the
    Klein-Gordon overlap exactly.
    """
    karr = np.asarray(k, dtype=float)
    if not np.all(np.isfinite(karr)) or np.any(karr <= 0.0):
        raise DomainError("Minkowski frequency k must be finite and > 0")
    return _scalar_or_array(1.0 / (2.0 * np.pi * karr))


def narrowband_overlap(omega, wp):
    """Squared narrowband overlaps of a Gaussian wavepacket with Unruh modes.

    Parameters
    ----------
    omega : float or array
        Rindler frequency.  ``omega = 0`` is accepted here because the
        Gaussian form is regular there.
    wp : Wavepacket

    Returns
    -------
    (a2, b2)
        ``|A_Omega|^2`` and ``|B_Omega|^2``, Gaussians centred at
        ``+k0 V0`` and ``-k0 V0`` respectively.
    """
    om = np.asarray(omega, dtype=float)
    if not np.all(np.isfinite(om)) or np.any(om < 0.0):
        raise DomainError("omega must be finite and >= 0")
    scale = math.sqrt(2.0 / math.pi) * wp.sigma / wp.k0
    c = 2.0 * (wp.sigma / wp.k0) ** 2
    a2 = scale * np.exp(-c * (om - wp.shift) ** 2)
    b2 = scale * np.exp(-c * (om + wp.shift) ** 2)
    return _scalar_or_array(a2), _scalar_or_array(b2)
