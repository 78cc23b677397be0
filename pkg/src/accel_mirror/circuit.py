"""Per-frequency Bogoliubov circuit: squeezer, mirror, and their composition.

Every transform acts on the doubled operator vector in the fixed order

    (c1, c1^dag, d1, d1^dag, c2, c2^dag, d2, d2^dag)

where ``c``/``d`` are Unruh modes and 1/2 label left/right movers.  The
mirror stage acts on Rindler modes laid out the same way,
``(bR1, bR1^dag, bL1, bL1^dag, bR2, bR2^dag, bL2, bL2^dag)``.

Only frequency-diagonal couplings are modelled.  A frequency-mixing
kernel would replace the single 8x8 ``ModeTransform`` per frequency by an
operator-valued kernel over frequency pairs; nothing here computes one.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .errors import ConfigError
from .modes import check_frequency, thermal_factors

LAWS = ("transparent", "perfect", "rational", "sharp", "tabulated")

J = np.diag([1.0, -1.0] * 4).astype(complex)

_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])
_I2 = np.eye(2)


@dataclass(frozen=True)
class MirrorModel:
    """Reflectivity law ``R(Omega)`` plus beamsplitter phase ``phi(Omega)``.

    Build instances through the named constructors (:meth:`rational`,
    :meth:`sharp`, ...).  ``phase`` is either a constant in radians or a
    callable of Omega.
    """

    law: str
    g: Optional[float] = None
    epsilon: Optional[float] = None
    table: Optional[tuple] = None
    phase: Union[float, Callable] = 0.0
    _knots: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.law not in LAWS:
            raise ConfigError(f"unknown mirror law {self.law!r}; expected one of {LAWS}")
        if self.law == "rational" and not (self.g is not None and math.isfinite(self.g) and self.g > 0):
            raise ConfigError("rational law needs g > 0")
        if self.law == "sharp" and not (self.epsilon is not None and math.isfinite(self.epsilon)
                                        and self.epsilon > 0):
            raise ConfigError("sharp law needs epsilon > 0")
        if self.law == "tabulated":
            if not self.table or len(self.table) < 1:
                raise ConfigError("tabulated law needs at least one (Omega, R) point")
            pts = np.asarray(self.table, dtype=float)
            if pts.ndim != 2 or pts.shape[1] != 2 or not np.all(np.isfinite(pts)):
                raise ConfigError("tabulated law needs finite (Omega, R) pairs")
            if np.any(np.diff(pts[:, 0]) <= 0):
                raise ConfigError("tabulated Omega knots must be strictly increasing")
            if pts[0, 0] < 0:
                raise ConfigError("tabulated Omega knots must be nonnegative")
            object.__setattr__(self, "_knots", (pts[:, 0].copy(), pts[:, 1].copy()))
        if not callable(self.phase) and not math.isfinite(float(self.phase)):
            raise ConfigError("mirror phase must be finite")

    @classmethod
    def transparent(cls, phase=0.0):
        return cls("transparent", phase=phase)

    @classmethod
    def perfect(cls, phase=0.0):
        return cls("perfect", phase=phase)

    @classmethod
    def rational(cls, g, phase=0.0):
        """``R = g^2 W^2 / (1 + g^2 W^2)``: transparent below ``W ~ 1/g``."""
        return cls("rational", g=float(g), phase=phase)

    @classmethod
    def sharp(cls, epsilon, phase=0.0):
        return cls("sharp", epsilon=float(epsilon), phase=phase)

    @classmethod
    def tabulated(cls, points, phase=0.0):
        return cls("tabulated", table=tuple((float(w), float(r)) for w, r in points),
                   phase=phase)

    def reflectivity(self, omega):
        """Intensity reflectivity ``R(Omega)`` in [0, 1] (vectorised)."""
        om = np.asarray(omega, dtype=float)
        if self.law == "transparent":
            r = np.zeros_like(om)
        elif self.law == "perfect":
            r = np.ones_like(om)
        elif self.law == "rational":
            x = (self.g * om) ** 2
            r = x / (1.0 + x)
        elif self.law == "sharp":
            r = np.where(om >= self.epsilon, 1.0, 0.0)
        else:
            w, rv = self._knots
            r = np.where(om < w[0], 0.0, np.interp(om, w, rv))
            r = np.clip(r, 0.0, 1.0)
        return float(r) if np.ndim(r) == 0 else r

    def one_minus_cos(self, omega):
        """``1 - cos(theta)`` evaluated as ``R / (1 + sqrt(1 - R))``."""
        r = np.asarray(self.reflectivity(omega), dtype=float)
        out = r / (1.0 + np.sqrt(1.0 - r))
        return float(out) if np.ndim(out) == 0 else out

    def phase_at(self, omega):
        if callable(self.phase):
            return float(self.phase(float(omega)))
        return float(self.phase)

    @property
    def ir_regular(self):
        """True when ``1 - cos(theta)`` vanishes faster than Omega at 0.

        Only then is the wavepacket particle number finite.
        """
        if self.law in ("transparent", "rational", "sharp"):
            return True
        if self.law == "perfect":
            return False
        w, rv = self._knots
        if w[0] > 0:
            return True
        # knot at Omega = 0: need R to stay zero on an interval, a linear
        # ramp from zero gives 1 - cos ~ Omega and a log divergence
        return len(w) > 1 and rv[0] <= 0 and rv[1] <= 0

    @property
    def breakpoints(self):
        """Frequencies where the reflectivity law is not smooth."""
        if self.law == "sharp":
            return (self.epsilon,)
        if self.law == "tabulated":
            return tuple(float(x) for x in self._knots[0] if x > 0)
        return ()

    def describe(self):
        if self.law == "rational":
            return f"rational(g={self.g:g})"
        if self.law == "sharp":
            return f"sharp(epsilon={self.epsilon:g})"
        if self.law == "tabulated":
            return f"tabulated({len(self.table)} knots)"
        return self.law


@dataclass(frozen=True)
class ModeTransform:
    """8x8 Bogoliubov matrix for one Rindler frequency.

    Row ``2k`` gives output annihilator ``k`` (order c1', d1', c2', d2') as a
    combination of the doubled input vector; row ``2k+1`` is its adjoint.
    """

    m: np.ndarray
    omega: float
    provenance: str

    def __post_init__(self):
        m = np.array(self.m, dtype=complex)
        if m.shape != (8, 8):
            raise ConfigError("ModeTransform needs an 8x8 matrix")
        m.setflags(write=False)
        object.__setattr__(self, "m", m)

    def bogoliubov_residual(self):
        """``max |M J M^dag - J|``; zero for a valid Bogoliubov map."""
        return float(np.max(np.abs(self.m @ J @ self.m.conj().T - J)))

    def conjugation_residual(self):
        """Deviation from the (alpha, beta; beta*, alpha*) pairing of rows."""
        m = self.m
        swap = np.kron(np.eye(4), _SIGMA_X)
        return float(np.max(np.abs(swap @ m.conj() @ swap - m)))

    def alpha(self, out_index):
        """Annihilation-operator coefficients of output ``out_index`` (length 4)."""
        return self.m[2 * out_index, 0::2]

    def beta(self, out_index):
        """Creation-operator coefficients of output ``out_index`` (length 4)."""
        return self.m[2 * out_index, 1::2]


def reflectivity(model, omega):
    """Return ``(R, cos theta, sin theta)`` with ``theta`` in [0, pi/2]."""
    check_frequency(omega)
    r = float(model.reflectivity(float(omega)))
    return r, math.sqrt(1.0 - r), math.sqrt(r)


def squeezer_matrix(omega, inverse=False):
    """Two-mode squeezer mapping Unruh modes to Rindler modes, per direction.

    ``inverse=True`` gives the antisqueezer (Rindler back to Unruh).
    """
    om = float(check_frequency(omega))
    tf = thermal_factors(om)
    ch, sh = tf.cosh, tf.sinh
    if inverse:
        sh = -sh
    block = np.block([[_I2 * ch, _SIGMA_X * sh], [_SIGMA_X * sh, _I2 * ch]])
    m = np.zeros((8, 8), dtype=complex)
    m[:4, :4] = block
    m[4:, 4:] = block
    return ModeTransform(m, om, "composed")


def _z_matrix(phi):
    return np.diag([-1j * np.exp(1j * phi), 1j * np.exp(-1j * phi)])


def mirror_matrix(omega, model):
    """Beamsplitter acting on the right-wedge Rindler modes only (passive)."""
    om = float(check_frequency(omega))
    _, cos_t, sin_t = reflectivity(model, om)
    z = _z_matrix(model.phase_at(om))
    m = np.eye(8, dtype=complex)
    m[0:2, 0:2] = _I2 * cos_t
    m[0:2, 4:6] = z * sin_t
    m[4:6, 0:2] = -z.conj() * sin_t
    m[4:6, 4:6] = _I2 * cos_t
    return ModeTransform(m, om, "composed")


def compose(omega, model):
    """Full input-output map ``S^-1 U S`` from input to output Unruh modes."""
    s = squeezer_matrix(omega)
    u = mirror_matrix(omega, model)
    s_inv = squeezer_matrix(omega, inverse=True)
    return ModeTransform(s_inv.m @ u.m @ s.m, s.omega, "composed")


def closed_form_transform(omega, model):
    """Input-output map written out coefficient by coefficient.

    Each output row is filled from the explicit expansion of c1', d1', c2'
    and d2' in terms of the input Unruh operators; it shares no code with
    :func:`compose` beyond the thermal factors and the reflectivity.
    """
    om = float(check_frequency(omega))
    tf = thermal_factors(om)
    ch2, sh2, cs = tf.cosh2, tf.sinh2, tf.cs
    _, cos_t, sin_t = reflectivity(model, om)
    omc = model.one_minus_cos(om)
    phi = model.phase_at(om)
    ep, em = np.exp(1j * phi), np.exp(-1j * phi)

    # column indices in the doubled input vector
    C1, C1D, D1, D1D, C2, C2D, D2, D2D = range(8)
    rows = {
        # c1'
        0: {C1: ch2 * cos_t - sh2, D1D: -cs * omc,
            C2: -1j * ep * ch2 * sin_t, D2D: -1j * ep * cs * sin_t},
        # d1'
        2: {C1D: cs * omc, D1: ch2 - sh2 * cos_t,
            C2D: -1j * em * cs * sin_t, D2: -1j * em * sh2 * sin_t},
        # c2'
        4: {C1: -1j * em * ch2 * sin_t, D1D: -1j * em * cs * sin_t,
            C2: ch2 * cos_t - sh2, D2D: -cs * omc},
        # d2'
        6: {C1D: -1j * ep * cs * sin_t, D1: -1j * ep * sh2 * sin_t,
            C2D: cs * omc, D2: ch2 - sh2 * cos_t},
    }
    m = np.zeros((8, 8), dtype=complex)
    for row, coeffs in rows.items():
        for col, val in coeffs.items():
            m[row, col] = val
            # adjoint row: conjugate coefficient on the partner operator
            m[row + 1, col ^ 1] = np.conj(val)
    return ModeTransform(m, om, "closed_form")
