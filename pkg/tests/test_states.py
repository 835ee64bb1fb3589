import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bsentangler.fock import CapacityError, DomainError, TruncationConfig, mean_photon_number
from bsentangler.states import (
    CoherentParams,
    SqueezeParams,
    make_coherent,
    make_even_cat,
    make_fock,
    make_odd_cat,
    make_squeezed_vacuum,
)

# Frozen with direct summation: sum_n n e^{-4} 4^n / n! using math.factorial,
# and the squeezed-vacuum amplitudes summed with exact integer factorials.
COHERENT_MEAN_ALPHA_2 = 3.9999999999999987
SQUEEZED_MEAN_R_1 = 1.3810978455418144

alphas = st.builds(lambda m, p: m * cmath.exp(1j * p),
                   st.floats(0.05, 3.0), st.floats(0, 2 * math.pi))


class TestFock:
    def test_vacuum(self):
        np.testing.assert_array_equal(make_fock(0).amplitudes, [1])

    def test_three(self):
        s = make_fock(3)
        assert s.amplitudes[3] == 1 and s.norm() == 1

    def test_mean(self):
        assert mean_photon_number(make_fock(5)) == 5

    @pytest.mark.parametrize("n", [-1, 201, 2.5])
    def test_out_of_range(self, n):
        with pytest.raises(DomainError):
            make_fock(n)


class TestCoherent:
    def test_zero_is_vacuum(self):
        np.testing.assert_array_equal(make_coherent(0).amplitudes, [1])

    def test_mean_photon_number(self):
        assert mean_photon_number(make_coherent(2.0)) == pytest.approx(COHERENT_MEAN_ALPHA_2, abs=1e-9)

    def test_norm(self):
        assert make_coherent(CoherentParams(1.0)).norm() == pytest.approx(1.0, abs=1e-12)

    def test_capacity_error(self):
        with pytest.raises(CapacityError):
            make_coherent(12.0, TruncationConfig(n_max_cap=60))

    def test_against_direct_formula(self):
        alpha = 0.7 - 0.4j
        s = make_coherent(alpha)
        n = np.arange(len(s))
        direct = [cmath.exp(-abs(alpha) ** 2 / 2) * alpha**k / math.sqrt(math.factorial(k)) for k in n]
        np.testing.assert_allclose(s.amplitudes, direct, atol=1e-15)


class TestCats:
    def test_even_parity(self):
        s = make_even_cat(1.5)
        assert np.all(s.amplitudes[1::2] == 0)
        assert np.all(s.amplitudes[0::2] != 0)

    def test_odd_parity_and_lowest_index(self):
        s = make_odd_cat(1.5)
        assert np.all(s.amplitudes[0::2] == 0)
        assert np.flatnonzero(s.amplitudes)[0] == 1

    @pytest.mark.parametrize("maker", [make_even_cat, make_odd_cat])
    def test_norm(self, maker):
        assert maker(1.5).norm() == pytest.approx(1.0, abs=1e-12)

    def test_even_cat_zero_is_vacuum(self):
        np.testing.assert_array_equal(make_even_cat(0).amplitudes, [1])

    def test_odd_cat_zero_rejected(self):
        with pytest.raises(DomainError):
            make_odd_cat(0)

    def test_large_alpha_stays_finite(self):
        s = make_even_cat(9.0)
        assert np.all(np.isfinite(s.amplitudes))
        assert s.norm() == pytest.approx(1.0, abs=1e-12)

    @settings(max_examples=40)
    @given(alphas)
    def test_even_cat_is_normalized_sum_of_coherent_states(self, alpha):
        n = max(make_coherent(alpha).n_max, make_even_cat(alpha).n_max)
        plus = make_coherent(alpha, n_max=n).amplitudes + make_coherent(-alpha, n_max=n).amplitudes
        plus /= np.linalg.norm(plus)
        cat = make_even_cat(alpha, n_max=n).amplitudes
        np.testing.assert_allclose(cat, plus, atol=1e-10)

    @settings(max_examples=40)
    @given(alphas)
    def test_tail_below_epsilon(self, alpha):
        for maker in (make_coherent, make_even_cat, make_odd_cat):
            assert 1.0 - maker(alpha).norm_squared() < 1e-12


class TestSqueezedVacuum:
    def test_zero_is_vacuum(self):
        np.testing.assert_array_equal(make_squeezed_vacuum(0.0).amplitudes, [1])

    def test_norm(self):
        assert make_squeezed_vacuum(1.0).norm() == pytest.approx(1.0, abs=1e-10)

    def test_mean_photon_number(self):
        assert mean_photon_number(make_squeezed_vacuum(SqueezeParams(1.0, 0.0))) == pytest.approx(
            SQUEEZED_MEAN_R_1, abs=1e-6)
        assert SQUEEZED_MEAN_R_1 == pytest.approx(math.sinh(1.0) ** 2, abs=1e-12)

    def test_parity_and_sign_convention(self):
        s = make_squeezed_vacuum(SqueezeParams(0.5, 0.0))
        assert np.all(s.amplitudes[1::2] == 0)
        # (-Gamma)^k with real Gamma > 0 alternates sign
        assert s.amplitudes[2].real < 0 < s.amplitudes[4].real

    def test_first_amplitudes(self):
        r, th = 0.6, 1.1
        s = make_squeezed_vacuum(SqueezeParams(r, th))
        g = cmath.exp(1j * th) * math.tanh(r)
        pref = math.cosh(r) ** -0.5
        assert s.amplitudes[0] == pytest.approx(pref)
        assert s.amplitudes[2] == pytest.approx(pref * (-g) * math.sqrt(2) / 2)
        assert s.amplitudes[4] == pytest.approx(pref * g**2 * math.sqrt(24) / 8)

    def test_capacity_error(self):
        with pytest.raises(CapacityError):
            make_squeezed_vacuum(3.0)

    def test_negative_r_rejected(self):
        with pytest.raises(DomainError):
            SqueezeParams(-0.1)
