import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from accel_mirror.errors import ConfigError, DomainError, QuadratureError
from accel_mirror.numerics import (GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES, QuadratureSpec,
                                   integrate_semi_infinite, spectral_weights)


def fermi(w):
    return np.exp(np.pi * w) / (np.exp(np.pi * w) + 1) ** 2


def bose(w):
    return np.exp(2 * np.pi * w) / np.expm1(2 * np.pi * w) ** 2


# (integrand, lower, exact value from the antiderivative)
ANALYTIC = [
    (fermi, 0.0, 1 / (2 * math.pi)),                                  # -1/(pi (e^{pi W}+1))
    (lambda w: np.exp(-w), 0.0, 1.0),
    (bose, 0.05, 1 / (2 * math.pi * math.expm1(0.1 * math.pi))),     # -1/(2 pi (e^{2 pi W}-1))
    (lambda w: w * np.exp(-2 * w), 0.0, 0.25),
    (lambda w: np.exp(-((w - 7.0) ** 2)), 0.0, math.sqrt(math.pi) / 2 * (1 + math.erf(7.0))),
]


def test_rule_constants():
    g, w = np.polynomial.legendre.leggauss(7)
    np.testing.assert_allclose(NODES[1::2], np.sort(g), atol=1e-15)
    np.testing.assert_allclose(GAUSS_WEIGHTS[1::2], w[np.argsort(g)], atol=1e-15)
    assert KRONROD_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    # Kronrod rule integrates x^22 exactly on [-1, 1]
    assert KRONROD_WEIGHTS @ NODES ** 22 == pytest.approx(2 / 23, rel=1e-13)


@pytest.mark.parametrize("f, lower, exact", ANALYTIC)
def test_analytic_set(f, lower, exact):
    res = integrate_semi_infinite(f, QuadratureSpec(peak_hints=(7.0,)), lower=lower)
    assert res.value == pytest.approx(exact, rel=1e-9)
    assert res.err_estimate <= max(1e-12, 1e-9 * abs(res.value))
    assert abs(res.value - exact) <= res.err_estimate + 1e-15


def test_calibration_values():
    val, _ = integrate_semi_infinite(fermi)
    assert val == pytest.approx(0.1591549, abs=1e-7)
    val, _ = integrate_semi_infinite(bose, lower=0.05)
    assert val == pytest.approx(0.4311883, abs=1e-7)


@pytest.mark.parametrize("f, lower, exact", ANALYTIC)
def test_tolerance_halving(f, lower, exact):
    coarse = integrate_semi_infinite(f, QuadratureSpec(rel_tol=1e-6, abs_tol=1e-10), lower)
    fine = integrate_semi_infinite(f, QuadratureSpec(rel_tol=5e-7, abs_tol=5e-11), lower)
    assert abs(fine.value - coarse.value) <= coarse.err_estimate


def test_hint_order_irrelevant():
    hints = [0.3, 2.0, 7.0, 11.5]
    f = lambda w: np.exp(-((w - 7.0) ** 2)) + fermi(w)
    base = integrate_semi_infinite(f, QuadratureSpec(peak_hints=tuple(hints)))
    rng = random.Random(3)
    for _ in range(5):
        rng.shuffle(hints)
        other = integrate_semi_infinite(f, QuadratureSpec(peak_hints=tuple(hints)))
        assert other.value == base.value


def test_deterministic():
    a = integrate_semi_infinite(fermi)
    b = integrate_semi_infinite(fermi)
    assert (a.value, a.err_estimate) == (b.value, b.err_estimate)


def test_non_convergence_reports_partial():
    spec = QuadratureSpec(rel_tol=1e-15, abs_tol=1e-300, max_subdivisions=10)
    with pytest.raises(QuadratureError) as info:
        integrate_semi_infinite(lambda w: 1 / np.sqrt(w), spec, lower=0.0)
    assert info.value.subdivisions == 10
    assert math.isfinite(info.value.value)


def test_nonfinite_integrand():
    with pytest.raises(QuadratureError):
        integrate_semi_infinite(lambda w: np.full_like(w, np.nan))


def test_unpacks_as_pair():
    value, err = integrate_semi_infinite(lambda w: np.exp(-w))
    assert value == pytest.approx(1.0) and err >= 0


@pytest.mark.parametrize("kwargs", [dict(rel_tol=0), dict(abs_tol=-1), dict(max_subdivisions=5),
                                    dict(peak_hints=(-1.0,)), dict(omega_ceiling=0.0)])
def test_spec_validation(kwargs):
    with pytest.raises(ConfigError):
        QuadratureSpec(**kwargs)


class TestSpectralWeights:
    def test_value_at_tenth(self):
        e = math.exp(0.2 * math.pi)
        w_n, _, _ = spectral_weights(0.1)
        assert w_n == pytest.approx(e / (e - 1) ** 2, rel=1e-14)
        assert w_n == pytest.approx(2.45134, abs=5e-5)

    def test_small_limit(self):
        _, _, w_min = spectral_weights(1e-9)
        assert w_min == pytest.approx(0.25, rel=1e-15)

    def test_identity_random(self):
        om = np.random.default_rng(1).uniform(0.01, 5.0, 1000)
        w_n, w_aa, w_min = spectral_weights(om)
        # relative to the size of the terms being subtracted
        assert np.max(np.abs(w_aa - 2 * w_n - w_min) / w_aa) < 1e-13

    def test_direct_forms(self):
        om = np.linspace(0.05, 3, 60)
        e1, e2 = np.exp(np.pi * om), np.exp(2 * np.pi * om)
        w_n, w_aa, w_min = spectral_weights(om)
        np.testing.assert_allclose(w_n, e2 / (e2 - 1) ** 2, rtol=1e-13)
        np.testing.assert_allclose(w_aa, e1 * (e2 + 1) / (e2 - 1) ** 2, rtol=1e-13)
        np.testing.assert_allclose(w_min, e1 / (e1 + 1) ** 2, rtol=1e-13)

    def test_series_branch_continuous(self):
        below = np.array(spectral_weights(np.nextafter(1e-6, 0)))
        above = np.array(spectral_weights(1e-6))
        np.testing.assert_allclose(below, above, rtol=1e-11)

    def test_squeeze_weight_bounded_and_decreasing(self):
        om = np.geomspace(1e-7, 40, 3000)
        _, _, w_min = spectral_weights(om)
        assert np.all(w_min < 0.25)
        assert np.all(np.diff(w_min) < 0)

    def test_large_frequency_no_overflow(self):
        w = spectral_weights(700.0)
        assert all(math.isfinite(x) and x >= 0 for x in w)

    @pytest.mark.parametrize("bad", [0.0, -0.5])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            spectral_weights(bad)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(min_value=1e-7, max_value=30.0))
    def test_positive(self, om):
        w_n, w_aa, w_min = spectral_weights(om)
        assert w_n > 0 and w_aa >= w_min > 0
