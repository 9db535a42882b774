import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special

from fouriersub.specfun import (
    bessel_i0,
    bessel_jn,
    bessel_jn_all,
    chebyshev_t,
    log_bessel_i0,
    siegel_g,
    sinc,
    warp_deviation,
    warped_sinc,
)

mp.mp.dps = 40


def mp_sinc(x):
    return float(mp.sin(mp.mpf(x)) / mp.mpf(x)) if x != 0 else 1.0


def jn_series(n, x):
    x = mp.mpf(x)
    return float(mp.nsum(lambda k: (-1) ** k * (x / 2) ** (2 * k + n) / (mp.factorial(k) * mp.factorial(k + n)),
                          [0, mp.inf]))


class TestSinc:
    def test_trivial_values(self):
        assert sinc(0.0) == 1.0
        assert abs(sinc(math.pi)) < 1e-16

    def test_one(self):
        assert sinc(1.0) == pytest.approx(0.841470984807897, abs=1e-15)

    @pytest.mark.parametrize("x", [1e-9, 1e-5, 3e-3, 9.99e-3, 1.01e-2, 0.3, 7.0, -4.2])
    def test_against_mpmath(self, x):
        assert sinc(x) == pytest.approx(mp_sinc(x), rel=2e-16, abs=1e-17)

    def test_vectorized(self):
        x = np.array([0.0, 1e-3, 1.0, 10.0])
        np.testing.assert_allclose(sinc(x), [mp_sinc(v) for v in x], rtol=1e-15)


class TestWarpedSinc:
    def test_at_cutoff(self):
        for s in (0.5, 3.0, 40.0):
            assert warped_sinc(s, s) == pytest.approx(1.0, abs=1e-15)

    def test_zero_argument_is_sinhc(self):
        for s in (0.1, 2.0, 30.0):
            assert warped_sinc(0.0, s) == pytest.approx(math.sinh(s) / s, rel=1e-14)

    def test_worked_value(self):
        # sinc(sqrt 75) checked against sin(z)/z with complex arithmetic
        z = complex(75) ** 0.5
        assert warped_sinc(10.0, 5.0) == pytest.approx((np.sin(z) / z).real, rel=1e-14)

    @pytest.mark.parametrize("x", [0.1, 1.0, 10.0])
    def test_small_sigma_limit(self, x):
        assert abs(warped_sinc(x, 1e-8) - sinc(x)) <= 1e-8

    @given(st.floats(0, 50), st.floats(0.01, 30))
    def test_matches_mpmath_both_branches(self, x, s):
        ref = mp.sinc(mp.sqrt(mp.mpf(x) ** 2 - mp.mpf(s) ** 2))
        assert warped_sinc(x, s) == pytest.approx(float(mp.re(ref)), rel=1e-11, abs=1e-13)

    def test_even(self):
        assert warped_sinc(-3.3, 2.0) == warped_sinc(3.3, 2.0)


class TestBessel:
    def test_i0_values(self):
        assert bessel_i0(0.0) == 1.0
        assert bessel_i0(1.0) == pytest.approx(1.26606587775201, rel=1e-14)
        assert bessel_i0(10.0) == pytest.approx(2815.716628466254, rel=1e-14)

    @pytest.mark.parametrize("x", [0.5, 5.0, 14.9, 15.0, 15.1, 30.0, 120.0, 600.0])
    def test_i0_crossover_against_mpmath(self, x):
        assert bessel_i0(x) == pytest.approx(float(mp.besseli(0, x)), rel=5e-14)

    def test_log_i0_beyond_overflow(self):
        for x in (50.0, 800.0, 1e5):
            assert log_bessel_i0(x) == pytest.approx(float(mp.log(mp.besseli(0, x))), rel=1e-14)

    def test_jn_values(self):
        assert bessel_jn(0, 0.0) == 1.0
        assert bessel_jn(3, 0.0) == 0.0
        assert bessel_jn(5, 2.0) == pytest.approx(0.00703962975, rel=1e-9)
        assert bessel_jn(5, 2.0) == pytest.approx(jn_series(5, 2.0), rel=1e-13)

    def test_jn_series_oracle_grid(self):
        # n <= 50, x <= 50; absolute tolerance since values span many decades
        worst = 0.0
        for x in (0.3, 1.0, 7.5, 20.0, 35.0, 50.0):
            vals = bessel_jn_all(50, x)
            for n in range(0, 51, 7):
                worst = max(worst, abs(vals[n] - float(mp.besselj(n, x))))
        assert worst <= 1e-12

    def test_jn_negative_x_parity(self):
        v = bessel_jn_all(6, -3.0)
        np.testing.assert_allclose(v, special.jv(np.arange(7), -3.0), atol=1e-15)

    def test_jn_normalization_identity(self):
        v = bessel_jn_all(80, 12.3)
        assert v[0] + 2 * math.fsum(v[2::2]) == pytest.approx(1.0, abs=1e-14)


class TestChebyshev:
    def test_values(self):
        assert chebyshev_t(7, 1.0) == pytest.approx(1.0)
        assert chebyshev_t(1, 0.3) == pytest.approx(0.3)
        assert chebyshev_t(4, 0.5) == pytest.approx(-0.5, abs=1e-15)

    @given(st.integers(0, 30), st.floats(-1, 1))
    def test_matches_mpmath(self, n, t):
        assert chebyshev_t(n, t) == pytest.approx(float(mp.cos(n * mp.acos(t))), abs=1e-12)

    def test_rejects_outside(self):
        with pytest.raises(ValueError):
            chebyshev_t(2, 1.5)


class TestWarpDeviation:
    def test_values(self):
        assert warp_deviation(3.0, 3.0) == pytest.approx(3.0)
        assert warp_deviation(5.0, 0.0) == 0.0
        r = warp_deviation(10.0, 5.0)
        assert r == pytest.approx(10 - math.sqrt(75), rel=1e-14)
        assert r <= 25 / 10

    def test_bound_on_log_grid(self):
        for s in (0.1, 1.0, 10.0, 100.0):
            x = s * np.logspace(0, 4, 300)
            assert np.all(warp_deviation(x, s) <= s * s / x * (1 + 1e-15))

    def test_domain(self):
        with pytest.raises(ValueError):
            warp_deviation(1.0, 2.0)


class TestSiegel:
    def test_endpoint(self):
        assert siegel_g(1.0) == pytest.approx(1.0)

    def test_half(self):
        # direct evaluation of z e^s / (1 + s), s = sqrt(1 - z^2)
        s = mp.sqrt(mp.mpf(3) / 4)
        assert siegel_g(0.5) == pytest.approx(float(mp.mpf(0.5) * mp.exp(s) / (1 + s)), rel=1e-15)
        assert siegel_g(0.5) <= math.e * 0.5 / 2

    def test_small_z_asymptote(self):
        assert siegel_g(1e-6) / (math.e * 1e-6 / 2) == pytest.approx(1.0, abs=1e-9)

    def test_bound_dense_grid(self):
        z = np.linspace(1e-4, 1, 10_000)
        assert np.all(siegel_g(z) <= math.e * z / 2 * (1 + 1e-15))

    def test_siegel_bounds_jn(self):
        for n in (3, 10, 40):
            for z in (0.1, 0.5, 0.9, 1.0):
                assert abs(bessel_jn(n, n * z)) <= siegel_g(z) ** n * (1 + 1e-12)

    def test_domain(self):
        with pytest.raises(ValueError):
            siegel_g(0.0)
