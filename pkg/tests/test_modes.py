import math
import warnings

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from accel_mirror.errors import DomainError
from accel_mirror.modes import (Wavepacket, gamma_abs2, minkowski_unruh_abs2,
                                narrowband_overlap, squeeze_param, thermal_factors)
from accel_mirror.numerics import QuadratureSpec, integrate_semi_infinite

LN2_PI = math.log(2.0) / math.pi


class TestSqueezeParam:
    def test_half_tanh_point(self):
        # tanh r = 1/2  ->  r = artanh(1/2)
        assert squeeze_param(LN2_PI) == pytest.approx(0.5493061443340549, rel=1e-14)

    def test_vanishes_at_large_frequency(self):
        assert squeeze_param(50.0) < 1e-60
        assert squeeze_param(700.0) == 0.0

    @pytest.mark.parametrize("bad", [0.0, -1.0, math.nan, math.inf, 701.0])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            squeeze_param(bad)

    def test_tanh_identity_random(self):
        rng = np.random.default_rng(0)
        om = rng.uniform(0.01, 5.0, 1000)
        r = squeeze_param(om)
        np.testing.assert_allclose(np.tanh(r), np.exp(-np.pi * om), rtol=1e-12, atol=0)

    def test_strictly_decreasing(self):
        om = np.geomspace(1e-6, 10.0, 400)
        assert np.all(np.diff(squeeze_param(om)) < 0)

    def test_small_frequency_matches_mpmath(self):
        for om in (1e-9, 1e-4, 0.3):
            with mpmath.workdps(40):
                exact = mpmath.atanh(mpmath.exp(-mpmath.pi * om))
            assert squeeze_param(om) == pytest.approx(float(exact), rel=1e-14)


class TestThermalFactors:
    def test_quarter_point(self):
        tf = thermal_factors(LN2_PI)
        assert tf.cosh2 == pytest.approx(4 / 3, rel=1e-14)
        assert tf.sinh2 == pytest.approx(1 / 3, rel=1e-14)
        assert tf.cs == pytest.approx(2 / 3, rel=1e-14)

    def test_unit_frequency(self):
        e = math.exp(2 * math.pi)
        assert thermal_factors(1.0).cosh2 == pytest.approx(e / (e - 1), rel=1e-14)
        assert thermal_factors(1.0).cosh2 == pytest.approx(1.0018709, abs=1e-7)

    @settings(max_examples=300, deadline=None)
    @given(st.floats(min_value=1e-8, max_value=50.0))
    def test_identities(self, om):
        tf = thermal_factors(om)
        # both terms grow like 1/(2 pi om): compare relative to cosh^2
        assert abs(tf.cosh2 - tf.sinh2 - 1.0) <= 1e-12 * tf.cosh2
        assert tf.cs ** 2 == pytest.approx(tf.cosh2 * tf.sinh2, rel=1e-12)
        assert tf.cosh2 > 0 and tf.sinh2 > 0 and tf.cs > 0
        assert math.tanh(tf.r) == pytest.approx(math.exp(-math.pi * om), rel=1e-12)

    def test_large_frequency_accuracy(self):
        # sinh^2 r must not come from cosh^2 r - 1
        tf = thermal_factors(100.0)
        exact = 1 / mpmath.expm1(2 * mpmath.pi * 100)
        assert tf.sinh2 > 0
        assert tf.sinh2 == pytest.approx(float(exact), rel=1e-12)

    def test_extreme_frequency_stays_finite(self):
        tf = thermal_factors(500.0)
        fields = (tf.r, tf.cosh2, tf.sinh2, tf.cs, tf.log_sinh2)
        assert all(math.isfinite(v) for v in fields)
        assert tf.cosh2 == 1.0
        # below float64 range: the logarithm carries the value
        assert tf.log_sinh2 == pytest.approx(-1000 * math.pi, rel=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            thermal_factors(0.0)


class TestGammaAbs2:
    def test_zero_limit(self):
        assert gamma_abs2(0.0) == 1.0

    def test_unit(self):
        assert gamma_abs2(1.0) == pytest.approx(math.pi / math.sinh(math.pi), rel=1e-14)
        assert gamma_abs2(1.0) == pytest.approx(0.2720291, abs=1e-7)

    def test_even(self):
        x = np.linspace(-20, 20, 401)
        np.testing.assert_array_equal(gamma_abs2(x), gamma_abs2(-x))

    def test_against_complex_gamma(self):
        for x in (1e-6, 0.01, 0.7, 3.0, 12.0):
            exact = abs(mpmath.gamma(1 + 1j * x)) ** 2
            assert gamma_abs2(x) == pytest.approx(float(exact), rel=1e-13)

    def test_identity_range(self):
        x = np.geomspace(1e-8, 20, 2000)
        np.testing.assert_allclose(gamma_abs2(x) * np.sinh(np.pi * x) / (np.pi * x), 1.0,
                                   rtol=1e-12)

    def test_large_argument_no_overflow(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            assert 0.0 <= gamma_abs2(400.0) < 1e-540 or gamma_abs2(400.0) == 0.0


class TestMinkowskiUnruh:
    def test_unit(self):
        assert minkowski_unruh_abs2(1.0) == pytest.approx(1 / (2 * math.pi), rel=1e-15)

    @pytest.mark.parametrize("om", [0.3, 3.0])
    def test_frequency_cancels(self, om):
        # full overlap magnitude: 2 sinh(pi om) |Gamma(1 - i om)|^2 / (4 pi^2 om k)
        k = 2.5
        full = 2 * math.sinh(math.pi * om) * gamma_abs2(om) / (4 * math.pi ** 2 * om * k)
        assert minkowski_unruh_abs2(k) == pytest.approx(full, rel=1e-13)

    def test_decay_and_domain(self):
        assert minkowski_unruh_abs2(1e12) < 1e-12
        with pytest.raises(DomainError):
            minkowski_unruh_abs2(0.0)


class TestWavepacket:
    def test_valid(self):
        wp = Wavepacket(20.0, 1.0, 0.3)
        assert wp.shift == pytest.approx(6.0)

    @pytest.mark.parametrize("args", [(0, 1, 0), (20, 0, 0), (20, -1, 0), (20, 11, 0),
                                      (math.nan, 1, 0)])
    def test_invalid(self, args):
        with pytest.raises(DomainError):
            Wavepacket(*args)

    def test_warns_when_barely_narrowband(self):
        with pytest.warns(RuntimeWarning):
            Wavepacket(10.0, 3.0)


class TestNarrowbandOverlap:
    def test_origin_value(self):
        a2, b2 = narrowband_overlap(0.0, Wavepacket(20.0, 1.0, 0.0))
        assert a2 == pytest.approx(math.sqrt(2 / math.pi) / 20, rel=1e-15)
        assert b2 == a2
        assert a2 == pytest.approx(0.0398942, abs=1e-7)

    def test_symmetric_at_zero_position(self):
        om = np.linspace(0, 10, 50)
        a2, b2 = narrowband_overlap(om, Wavepacket(20.0, 2.0, 0.0))
        np.testing.assert_array_equal(a2, b2)

    def test_from_full_overlap_formula(self):
        # |A|^2 straight from the narrowband overlap with |Gamma|^2 substituted
        wp = Wavepacket(20.0, 1.0, 0.2)
        om = 0.7
        lead = wp.sigma / (math.pi * om * wp.k0) * (1 / (2 * math.pi)) ** 0.5 \
            * 2 * math.sinh(math.pi * om) * gamma_abs2(om)
        a2, b2 = narrowband_overlap(om, wp)
        c = (wp.sigma / wp.k0) ** 2
        assert a2 == pytest.approx(lead * math.exp(-2 * c * (om - wp.shift) ** 2), rel=1e-13)
        assert b2 == pytest.approx(lead * math.exp(-2 * c * (om + wp.shift) ** 2), rel=1e-13)

    def test_sum_rule(self):
        wp = Wavepacket(20.0, 1.5, -0.4)
        om = np.linspace(0.01, 30, 300)
        a2, b2 = narrowband_overlap(om, wp)
        c = (wp.sigma / wp.k0) ** 2
        braces = np.exp(-2 * c * (om - wp.shift) ** 2) + np.exp(-2 * c * (om + wp.shift) ** 2)
        np.testing.assert_allclose(2 * (a2 + b2), math.sqrt(8 / math.pi) * wp.sigma / wp.k0 * braces,
                                   rtol=1e-14)

    def test_normalisation_half_line(self):
        wp = Wavepacket(20.0, 1.0, 0.0)
        spec = QuadratureSpec(omega_ceiling=400.0)
        val, _ = integrate_semi_infinite(lambda w: sum(narrowband_overlap(w, wp)), spec)
        assert val == pytest.approx(1.0, rel=1e-9)

    def test_normalisation_full_line(self):
        # b2(W) = a2(-W), so the half-line integral of a2 + b2 is the
        # full-line integral of a2 alone (1); a2 + b2 over the line gives 2
        wp = Wavepacket(20.0, 1.0, 0.7)
        spec = QuadratureSpec(omega_ceiling=400.0, peak_hints=(wp.shift,))
        val, _ = integrate_semi_infinite(lambda w: sum(narrowband_overlap(w, wp)), spec)
        assert val == pytest.approx(1.0, rel=1e-9)

    def test_negative_frequency_rejected(self):
        with pytest.raises(DomainError):
            narrowband_overlap(-0.1, Wavepacket(20.0, 1.0))
