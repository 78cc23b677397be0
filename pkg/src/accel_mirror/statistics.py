"""Vacuum moments of the output Unruh modes.

Inputs are in the Minkowski vacuum, which every input Unruh mode
annihilates.  For outputs ``x = sum_j alpha_j a_j + beta_j a_j^dag`` the
only non-zero contraction is ``<a_j a_j^dag> = 1``, so

    <x y>         = sum_j alpha^x_j beta^y_j
    <x^dag y>     = sum_j conj(beta^x_j) beta^y_j
    <x y^dag>     = sum_j alpha^x_j conj(alpha^y_j)
    <x^dag y^dag> = sum_j conj(beta^x_j) conj(alpha^y_j)

The delta(omega - omega') factor common to all moments is dropped.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .circuit import compose, reflectivity
from .errors import ConfigError
from .modes import thermal_factors
from .numerics import spectral_weights

OUTPUTS = ("c1", "d1", "c2", "d2")
PATTERNS = ("aa", "da", "ad", "dd")  # 'd' marks a dagger on that factor


def _index(out):
    if isinstance(out, str):
        try:
            return OUTPUTS.index(out)
        except ValueError:
            raise ConfigError(f"unknown output {out!r}; expected one of {OUTPUTS}") from None
    if isinstance(out, (int, np.integer)) and 0 <= out < 4:
        return int(out)
    raise ConfigError(f"output index {out!r} out of range 0..3")


def vacuum_number(m, out_index):
    """``<x^dag x>`` for output ``out_index`` of the transform ``m``."""
    beta = m.beta(_index(out_index))
    return float(np.sum(np.abs(beta) ** 2))


def vacuum_pair_moment(m, x, y, daggers="aa"):
    """Generic vacuum two-point function of outputs ``x`` and ``y``.

    ``daggers`` is a two-letter pattern: ``"aa"`` for ``<x y>``, ``"da"``
    for ``<x^dag y>``, ``"ad"`` for ``<x y^dag>`` and ``"dd"`` for
    ``<x^dag y^dag>``.
    """
    if daggers not in PATTERNS:
        raise ConfigError(f"invalid dagger pattern {daggers!r}; expected one of {PATTERNS}")
    i, j = _index(x), _index(y)
    ax, bx = m.alpha(i), m.beta(i)
    ay, by = m.alpha(j), m.beta(j)
    if daggers == "aa":
        val = np.sum(ax * by)
    elif daggers == "da":
        val = np.sum(bx.conj() * by)
    elif daggers == "ad":
        val = np.sum(ax * ay.conj())
    else:
        val = np.sum(bx.conj() * ay.conj())
    return complex(val)


def number_spectrum(omega, model):
    """Unruh-particle spectrum ``n = 2 (1 - cos theta) w_n(Omega)``."""
    w_n, _, _ = spectral_weights(omega)
    return 2.0 * model.one_minus_cos(omega) * w_n


@dataclass(frozen=True)
class MomentTable:
    """All output occupation numbers and pair moments at one frequency."""

    numbers: tuple
    pairs: dict

    def pair(self, x, y, daggers="aa"):
        return self.pairs[(OUTPUTS[_index(x)], OUTPUTS[_index(y)], daggers)]


def moment_table(m):
    numbers = tuple(vacuum_number(m, k) for k in range(4))
    pairs = {(OUTPUTS[i], OUTPUTS[j], p): vacuum_pair_moment(m, i, j, p)
             for i, j, p in product(range(4), range(4), PATTERNS)}
    return MomentTable(numbers, pairs)


def closed_form_pair_moments(omega, model):
    """Non-zero ``<x y>`` moments written out from the explicit input-output map.

    Keys are ``(x, y)`` over unprimed output names; ``<y x>`` equals
    ``<x y>`` for the pairs listed, and all unlisted ``<x y>`` vanish.
    The daggered moments follow as ``<x^dag y^dag> = conj(<y x>)``.
    """
    tf = thermal_factors(omega)
    _, _, sin_t = reflectivity(model, omega)
    phi = model.phase_at(omega)
    same = -model.one_minus_cos(omega) * tf.cs * (tf.sinh2 + tf.cosh2)
    cross12 = -1j * np.exp(1j * phi) * sin_t * tf.cs
    cross21 = -1j * np.exp(-1j * phi) * sin_t * tf.cs
    out = {}
    for (x, y), val in {("c1", "d1"): same, ("c2", "d2"): same,
                        ("c1", "d2"): cross12, ("c2", "d1"): cross21}.items():
        out[(x, y)] = complex(val)
        out[(y, x)] = complex(val)
    return out


def transform_moments(omega, model):
    """Moment table of the composed circuit at one frequency."""
    return moment_table(compose(omega, model))
