import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis.strategies import integers, sampled_from
from numpy.testing import assert_allclose

from qmemory.errors import BadSubsystemIndex, DimensionMismatch, DimTooLarge, NonHermitian, NotPositive
from qmemory.models.hilbert import DensityMatrix, HilbertSpace, PureState
from qmemory.services.linalg import (
    density_from_pure,
    eigh,
    is_pure,
    partial_trace,
    permute,
    purify,
    reduced_from_pure,
    tensor_states,
)
from qmemory.services.states import make_qubit_diagonal, sample_haar_pure, sample_random_mixed
from qmemory.utils.rng import complex_gaussian, stream_rng


def random_hermitian(dim, seed):
    g = complex_gaussian(stream_rng(seed), (dim, dim))
    return (g + g.conj().T) / 2


def leading_entries(vecs):
    return [col[np.flatnonzero(np.abs(col) > 1e-12)[0]] for col in vecs.T]


class TestHilbertSpace:
    def test_total_dim(self):
        assert HilbertSpace(dims=(2, 3, 2)).total_dim == 12

    def test_too_large(self):
        with pytest.raises(DimTooLarge):
            HilbertSpace(dims=(4, 4, 8))

    def test_bad_index(self):
        with pytest.raises(BadSubsystemIndex):
            HilbertSpace(dims=(2, 2)).check_indices([2])
        with pytest.raises(BadSubsystemIndex):
            HilbertSpace(dims=(2, 2)).check_indices([0, 0])


class TestDensityMatrix:
    def test_rejects_non_hermitian(self):
        with pytest.raises(NonHermitian):
            DensityMatrix.from_array([[0.5, 0.3], [0.0, 0.5]], (2,))

    def test_rejects_negative(self):
        with pytest.raises(NotPositive):
            DensityMatrix.from_array(np.diag([1.5, -0.5]), (2,))

    def test_rejects_bad_trace(self):
        with pytest.raises(DimensionMismatch):
            DensityMatrix.from_array(np.eye(2), (2,))

    def test_is_frozen(self):
        rho = make_qubit_diagonal(0.3)
        with pytest.raises(ValueError):
            rho.mat[0, 0] = 1.0

    def test_pure_state_normalizes(self):
        psi = PureState.from_amplitudes([1.0, 1.0], (2,))
        assert_allclose(np.linalg.norm(psi.amplitudes), 1.0)


class TestEigh:
    def test_descending(self):
        w, v = eigh(np.diag([0.1, 0.7, 0.2]))
        assert_allclose(w, [0.7, 0.2, 0.1])
        assert_allclose(v.conj().T @ v, np.eye(3), atol=1e-12)

    def test_non_hermitian(self):
        with pytest.raises(NonHermitian):
            eigh(np.array([[0, 1], [0, 0]]))

    def test_pauli_x(self):
        w, v = eigh(np.array([[0, 1], [1, 0]]))
        assert_allclose(w, [1.0, -1.0], atol=1e-12)
        assert_allclose(v[:, 0], np.array([1, 1]) / np.sqrt(2), atol=1e-12)
        assert_allclose(v[:, 1], np.array([1, -1]) / np.sqrt(2), atol=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(integers(min_value=1, max_value=16), integers(min_value=0, max_value=2**32))
    def test_reconstruction(self, dim, seed):
        m = random_hermitian(dim, seed)
        w, v = eigh(m)
        assert np.max(np.abs(v @ np.diag(w) @ v.conj().T - m)) <= 1e-8
        assert np.all(np.diff(w) <= 0)

    @settings(max_examples=40, deadline=None)
    @given(integers(min_value=2, max_value=16), integers(min_value=0, max_value=2**32))
    def test_leading_component_real_positive(self, dim, seed):
        _, v = eigh(random_hermitian(dim, seed))
        for lead in leading_entries(v):
            assert lead.imag == 0.0
            assert lead.real > 0.0


class TestPartialTrace:
    def test_product_factors(self):
        a = make_qubit_diagonal(0.2)
        b = sample_random_mixed((3,), 2, seed=5)
        ab = tensor_states(a, b)
        assert_allclose(partial_trace(ab, [0]).mat, a.mat, atol=1e-12)
        assert_allclose(partial_trace(ab, [1]).mat, b.mat, atol=1e-12)

    def test_keeps_original_order(self):
        rho = sample_random_mixed((2, 3, 2), 4, seed=9)
        ac = partial_trace(rho, [2, 0])
        assert ac.dims == (2, 2)
        assert_allclose(np.trace(ac.mat), 1.0)

    def test_bell_marginal(self, bell_rho):
        assert_allclose(partial_trace(bell_rho, [1]).mat, np.eye(2) / 2, atol=1e-12)

    def test_pure_marginal_matches(self):
        psi = sample_haar_pure((2, 2, 3), seed=3)
        via_rho = partial_trace(density_from_pure(psi), [0, 2]).mat
        assert_allclose(reduced_from_pure(psi.amplitudes, psi.dims, [0, 2]), via_rho, atol=1e-12)

    def test_empty_keep(self, bell_rho):
        with pytest.raises(BadSubsystemIndex):
            partial_trace(bell_rho, [])

    @settings(max_examples=40, deadline=None)
    @given(
        integers(min_value=0, max_value=2**32),
        integers(min_value=1, max_value=12),
        sampled_from([(0,), (1,), (2,), (0, 1), (0, 2), (1, 2)]),
    )
    def test_trace_and_positivity(self, seed, rank, keep):
        rho = sample_random_mixed((2, 3, 2), rank, seed=seed)
        out = partial_trace(rho, keep)
        assert abs(np.trace(out.mat) - 1.0) <= 1e-12
        assert np.linalg.eigvalsh(out.mat).min() >= -1e-10


class TestPermute:
    def test_swap_product(self):
        a = make_qubit_diagonal(0.1)
        b = sample_random_mixed((3,), 3, seed=1)
        swapped = permute(tensor_states(a, b), (1, 0))
        assert swapped.dims == (3, 2)
        assert_allclose(swapped.mat, tensor_states(b, a).mat, atol=1e-12)

    def test_not_a_permutation(self, bell_rho):
        with pytest.raises(BadSubsystemIndex):
            permute(bell_rho, (0, 0))


class TestPurify:
    @pytest.mark.parametrize("rank", [1, 2, 4])
    def test_marginal_is_original(self, rank):
        rho = sample_random_mixed((2, 2), rank, seed=21)
        psi = purify(rho)
        assert psi.dims == (2, 2, rank)
        back = partial_trace(density_from_pure(psi), [0, 1])
        assert_allclose(back.mat, rho.mat, atol=1e-10)

    def test_pure_input_gets_trivial_ancilla(self, bell_rho):
        assert purify(bell_rho).dims == (2, 2, 1)
        assert is_pure(bell_rho)

    def test_maximally_mixed_qubit(self):
        psi = purify(DensityMatrix.from_array(np.eye(2) / 2, (2,)))
        assert psi.dims == (2, 2)
        rho = density_from_pure(psi)
        assert_allclose(partial_trace(rho, [0]).mat, np.eye(2) / 2, atol=1e-12)
        assert_allclose(partial_trace(rho, [1]).mat, np.eye(2) / 2, atol=1e-12)


class TestPureState:
    def test_global_phase_removed(self):
        psi = PureState.from_amplitudes(np.array([1j, 1.0]) / np.sqrt(2), (2,))
        assert psi.amplitudes[0].imag == 0.0
        assert psi.amplitudes[0].real == pytest.approx(1 / np.sqrt(2))
        assert_allclose(psi.amplitudes[1], -1j / np.sqrt(2), atol=1e-12)

    def test_leading_zero_skipped(self):
        psi = PureState.from_amplitudes([0.0, -1.0], (2,))
        assert_allclose(psi.amplitudes, [0.0, 1.0], atol=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_sampled_states(self, seed):
        (lead,) = leading_entries(sample_haar_pure((2, 2, 2), seed=seed).amplitudes[:, np.newaxis])
        assert lead.imag == 0.0
        assert lead.real > 0.0
