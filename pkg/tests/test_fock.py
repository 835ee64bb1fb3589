import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bsentangler.fock import (
    BipartiteState,
    CapacityError,
    DomainError,
    SingleModeState,
    TruncationConfig,
    apply_annihilation,
    choose_cutoff,
    fidelity,
    inner_product,
    mean_photon_number,
    tensor,
)
from bsentangler.states import make_even_cat, make_fock, make_odd_cat

amplitude = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
vectors = st.lists(amplitude, min_size=1, max_size=8)


def basis(n, dim=None):
    v = np.zeros((dim or n + 1), dtype=complex)
    v[n] = 1
    return SingleModeState(v)


class TestInnerProduct:
    def test_vacuum_with_itself(self):
        assert inner_product(basis(0), basis(0)) == 1

    def test_orthogonal_number_states(self):
        assert inner_product(basis(0), basis(1)) == 0

    def test_even_and_odd_cats_orthogonal(self):
        assert abs(inner_product(make_even_cat(1.3), make_odd_cat(1.3))) < 1e-12

    def test_conjugate_linear_in_first_argument(self):
        a = SingleModeState([1j, 0])
        b = SingleModeState([1, 0])
        assert inner_product(a, b) == pytest.approx(-1j)

    def test_shorter_state_zero_padded(self):
        a = SingleModeState([0.6, 0.8])
        b = SingleModeState([0.6, 0.8, 5.0, 7.0])
        assert inner_product(a, b) == pytest.approx(1.0)

    @given(vectors)
    def test_self_product_is_squared_norm(self, v):
        s = SingleModeState(v, normalized=False)
        ip = inner_product(s, s)
        assert ip.imag == 0
        assert ip.real >= 0
        assert ip.real == pytest.approx(s.norm_squared(), rel=1e-12, abs=1e-300)


class TestAnnihilation:
    def test_single_photon_to_vacuum(self):
        out = apply_annihilation(basis(1))
        np.testing.assert_allclose(out.amplitudes, [1, 0])
        assert not out.normalized

    def test_vacuum_to_zero(self):
        assert apply_annihilation(basis(0)).norm() == 0

    def test_two_photons(self):
        np.testing.assert_allclose(apply_annihilation(basis(2)).amplitudes, [0, np.sqrt(2), 0])

    @pytest.mark.parametrize("n", [1, 2, 5, 17])
    def test_number_state_mean_drops_by_one(self, n):
        assert mean_photon_number(apply_annihilation(make_fock(n))) == pytest.approx(n - 1)


class TestTensor:
    def test_vacuum_pair(self):
        out = tensor(basis(0), basis(0)).amplitudes
        assert out.shape == (1, 1) and out[0, 0] == 1

    def test_one_two(self):
        out = tensor(basis(1), basis(2)).amplitudes
        assert out[1, 2] == 1 and np.count_nonzero(out) == 1

    def test_distributive(self):
        plus = SingleModeState(np.array([1, 1]) / np.sqrt(2))
        out = tensor(plus, basis(0)).amplitudes
        np.testing.assert_allclose(out, [[1 / np.sqrt(2)], [1 / np.sqrt(2)]])

    @given(vectors, vectors)
    def test_norm_multiplicative(self, a, b):
        sa, sb = SingleModeState(a, False), SingleModeState(b, False)
        assert tensor(sa, sb).norm() == pytest.approx(sa.norm() * sb.norm(), rel=1e-12, abs=1e-300)


class TestContainers:
    def test_amplitudes_are_read_only(self):
        s = make_fock(2)
        with pytest.raises(ValueError):
            s.amplitudes[0] = 1

    def test_rejects_nonfinite(self):
        with pytest.raises(DomainError):
            SingleModeState([np.nan, 1])

    def test_normalized_flag_checked_for_bipartite(self):
        with pytest.raises(DomainError):
            BipartiteState([[1, 1]], normalized=True)

    def test_fidelity_pads_shapes(self):
        a = BipartiteState([[0, 1]])
        b = BipartiteState([[0, 2, 0], [0, 0, 0]])
        assert fidelity(a, b) == pytest.approx(1.0)

    def test_truncation_config_validation(self):
        with pytest.raises(DomainError):
            TruncationConfig(epsilon_tail=0)
        with pytest.raises(DomainError):
            TruncationConfig(n_max_cap=0)


class TestChooseCutoff:
    def test_smallest_cutoff_below_tail(self):
        probs = np.array([0.5, 0.25, 0.125, 0.0625, 0.0625])
        cfg = TruncationConfig(epsilon_tail=0.07)
        # tails: 0.5, 0.25, 0.125, 0.0625, 0
        assert choose_cutoff(probs, cfg) == 3

    def test_unreachable_raises(self):
        with pytest.raises(CapacityError):
            choose_cutoff(np.array([0.5, 0.25]), TruncationConfig(epsilon_tail=0.1))

    def test_explicit_cutoff_validated(self):
        probs = np.array([0.5, 0.25, 0.25])
        cfg = TruncationConfig(epsilon_tail=0.3)
        assert choose_cutoff(probs, cfg, n_max=1) == 1
        with pytest.raises(CapacityError):
            choose_cutoff(probs, cfg, n_max=0)
