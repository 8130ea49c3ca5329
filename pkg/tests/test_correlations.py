from math import pi

import numpy as np
import pytest
from numpy.testing import assert_allclose

from qmemory.config import GRID_PHI, GRID_THETA, TAU_EXACT, TAU_OPT
from qmemory.errors import BadSubsystemIndex, NotAQubit, NotTwoQubits
from qmemory.models.hilbert import DensityMatrix
from qmemory.models.measurement import MeasurementBasis
from qmemory.services.correlations import (
    classical_correlation,
    concurrence,
    conditional_entropy_after_measurement,
    correlation_report,
    entanglement_of_assistance,
    entanglement_of_formation,
    measured_pair,
    quantum_discord,
    unlocalizable_discord,
    unlocalizable_entanglement,
)
from qmemory.services.entropy import entropy_bits, marginal_entropy, mutual_information, von_neumann_entropy
from qmemory.services.linalg import density_from_pure, eigh, partial_trace, reduced_from_pure, tensor_states
from qmemory.services.states import (
    make_qubit_qudit_example,
    make_w_marginal,
    make_werner,
    sample_haar_pure,
    sample_random_mixed,
)
from qmemory.utils.rng import complex_gaussian, stream_rng

from .helpers import assert_bits, shannon


def h(p):
    return shannon(p, 1 - p)


def brute_force_j(rho, n_theta=256, n_phi=512, chunk=16384):
    """J(B|A) by exhaustive search over a fine grid of projective measurements on A."""
    d_b = rho.mat.shape[0] // 2
    blocks = rho.mat.reshape(2, d_b, 2, d_b)
    t, p = np.meshgrid(np.linspace(0, pi, n_theta), np.linspace(0, 2 * pi, n_phi, endpoint=False), indexing="ij")
    t, p = t.ravel(), p.ravel()
    best = np.inf
    for i in range(0, t.size, chunk):
        c = np.cos(t[i:i + chunk] / 2) + 0j
        s = np.exp(1j * p[i:i + chunk]) * np.sin(t[i:i + chunk] / 2)
        total = 0.0
        for ket in (np.stack([c, s], -1), np.stack([-np.conj(s), np.conj(c)], -1)):
            sigma = np.einsum("ki,ibjc,kj->kbc", ket.conj(), blocks, ket)
            w = np.clip(np.linalg.eigvalsh(sigma), 0, None)
            prob = w.sum(-1)
            wlogw = np.where(w > 0, w * np.log2(np.where(w > 0, w, 1)), 0).sum(-1)
            total = total + np.where(prob > 1e-12, prob * np.log2(np.where(prob > 0, prob, 1)) - wlogw, 0)
        best = min(best, float(np.min(total)))
    return marginal_entropy(rho, 1) - best


def pure_entanglement(vec):
    v = vec / np.linalg.norm(vec)
    return entropy_bits(reduced_from_pure(v, (2, 2), [0]))


class TestClassicalCorrelation:
    def test_bell(self, bell_rho):
        assert_bits(classical_correlation(bell_rho).value, 1.0, TAU_OPT)
        assert_bits(quantum_discord(bell_rho).value, 1.0, TAU_OPT)

    def test_product(self):
        rho = DensityMatrix.from_array(np.diag([1.0, 0, 0, 0]), (2, 2))
        assert_bits(classical_correlation(rho).value, 0.0, TAU_OPT)
        assert_bits(quantum_discord(rho).value, 0.0, TAU_OPT)

    def test_classical_state_has_no_discord(self):
        rho = DensityMatrix.from_array(np.diag([0.5, 0, 0, 0.5]), (2, 2))
        run = quantum_discord(rho)
        assert_bits(run.value, 0.0, TAU_OPT)
        assert abs(np.cos(run.argmin_or_argmax.theta)) == pytest.approx(1.0, abs=1e-3)
        assert_bits(classical_correlation(rho).value, 1.0, TAU_OPT)

    @pytest.mark.parametrize("r", [0.2, 0.6, 0.8, 0.95])
    def test_werner_closed_form(self, r):
        rho = make_werner(r)
        j = 1 - h((1 + r) / 2)
        mutual = 2 - von_neumann_entropy(rho)
        assert_bits(classical_correlation(rho).value, j, TAU_OPT)
        assert_bits(quantum_discord(rho).value, mutual - j, TAU_OPT)

    def test_optimizer_record(self, random_two_qubit):
        run = classical_correlation(random_two_qubit)
        assert run.sense == "max"
        assert run.refinement_delta >= -1e-12
        assert run.evaluations >= GRID_THETA * GRID_PHI
        assert run.value >= -TAU_OPT

    def test_fixed_measurement(self, bell_rho):
        assert_bits(conditional_entropy_after_measurement(bell_rho, MeasurementBasis.z()), 0.0, TAU_EXACT)
        assert_bits(conditional_entropy_after_measurement(bell_rho, MeasurementBasis.x()), 0.0, TAU_EXACT)

    def test_measured_party_must_be_qubit(self):
        with pytest.raises(NotAQubit):
            classical_correlation(sample_random_mixed((3, 2), 2, seed=1))


class TestFineGridOracle:
    def test_random_states(self, random_two_qubit):
        opt = classical_correlation(random_two_qubit).value
        brute = brute_force_j(random_two_qubit)
        assert opt >= brute - 1e-6
        assert opt - brute <= 1e-3

    @pytest.mark.parametrize("theta,phi", [(0.3 * pi, pi / 5), (0.6 * pi, pi / 4), (0.15 * pi, 0.4 * pi)])
    def test_mixed_family_marginals(self, theta, phi):
        rho = make_w_marginal(theta, phi)
        opt = classical_correlation(rho).value
        brute = brute_force_j(rho)
        assert opt >= brute - 1e-6
        assert opt - brute <= 1e-3

    def test_qubit_qutrit(self):
        rho = sample_random_mixed((2, 3), 3, seed=77)
        opt = classical_correlation(rho).value
        brute = brute_force_j(rho)
        assert opt >= brute - 1e-6
        assert opt - brute <= 1e-3

    @pytest.mark.slow
    def test_twenty_states_on_full_grid(self):
        states = [sample_random_mixed((2, 2), 1 + i % 4, seed=2024, stream=i) for i in range(16)]
        states += [make_w_marginal(t * pi, f) for t, f in [(0.25, pi / 4), (0.1, pi / 4), (0.4, pi / 3), (0.7, pi / 8)]]
        for rho in states:
            opt = classical_correlation(rho).value
            brute = brute_force_j(rho, n_theta=1024, n_phi=2048)
            assert opt >= brute - 1e-6
            assert abs(opt - brute) <= 1e-4, (opt, brute)
            assert abs(quantum_discord(rho).value - (mutual_information(rho, 0, 1) - brute)) <= 1e-4


class TestEntanglementOfFormation:
    def test_bell(self, bell_rho):
        assert_bits(concurrence(bell_rho), 1.0, TAU_EXACT)
        assert_bits(entanglement_of_formation(bell_rho), 1.0, TAU_EXACT)

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_pure_states(self, seed):
        psi = sample_haar_pure((2, 2), seed)
        a = psi.amplitudes
        assert_bits(concurrence(density_from_pure(psi)), 2 * abs(a[0] * a[3] - a[1] * a[2]), 1e-9)
        assert_bits(entanglement_of_formation(density_from_pure(psi)), pure_entanglement(a), 1e-9)

    @pytest.mark.parametrize("r", [0.2, 0.6, 0.8, 0.9])
    def test_werner(self, r):
        c = max(0.0, (3 * r - 1) / 2)
        assert_bits(concurrence(make_werner(r)), c, 1e-9)
        assert_bits(entanglement_of_formation(make_werner(r)), h((1 + np.sqrt(1 - c * c)) / 2), 1e-9)

    @pytest.mark.parametrize("r", [0.6, 0.8, 0.9])
    def test_no_decomposition_beats_closed_form(self, r):
        rho = make_werner(r)
        self._decomposition_search(rho, seed=int(r * 10))

    def test_random_decompositions(self, random_two_qubit):
        self._decomposition_search(random_two_qubit, seed=3)

    @staticmethod
    def _decomposition_search(rho, seed, n_trials=200):
        e_f = entanglement_of_formation(rho)
        w, v = eigh(rho.mat)
        keep = w > 1e-12
        base = v[:, keep] * np.sqrt(w[keep])
        k = base.shape[1]
        rng = stream_rng(seed)
        best = np.inf
        for _ in range(n_trials):
            u, _ = np.linalg.qr(complex_gaussian(rng, (k, k)))
            members = base @ u.T
            weights = np.sum(np.abs(members) ** 2, axis=0)
            avg = sum(weights[j] * pure_entanglement(members[:, j]) for j in range(k) if weights[j] > 1e-14)
            best = min(best, avg)
        assert e_f <= best + 1e-9

    def test_rejects_qubit_qudit(self):
        with pytest.raises(NotTwoQubits):
            entanglement_of_formation(make_qubit_qudit_example())


class TestUnlocalizable:
    def test_bell(self, bell_rho):
        assert_bits(unlocalizable_entanglement(bell_rho), 1.0, TAU_OPT)
        assert_bits(unlocalizable_discord(bell_rho).value, 1.0, TAU_OPT)

    def test_upper_bounds(self, random_two_qubit):
        j = classical_correlation(random_two_qubit).value
        assert unlocalizable_entanglement(random_two_qubit) <= j + TAU_OPT
        assert unlocalizable_discord(random_two_qubit).value >= quantum_discord(random_two_qubit).value - TAU_OPT


class TestAssistance:
    def test_ghz(self, ghz):
        assert_bits(entanglement_of_assistance(ghz, (1, 2), 0), 1.0, TAU_OPT)

    def test_bounded_by_marginal_entropy(self, w_gated):
        e_a = entanglement_of_assistance(w_gated, (1, 2), 0)
        assert e_a <= marginal_entropy(density_from_pure(w_gated), 1) + TAU_OPT
        rho_bc = partial_trace(density_from_pure(w_gated), [1, 2])
        assert e_a >= entanglement_of_formation(rho_bc) - TAU_OPT

    def test_pair_must_cover_state(self, ghz):
        with pytest.raises(BadSubsystemIndex):
            entanglement_of_assistance(ghz, (1, 1), 0)


class TestMeasuredPair:
    def test_order(self, w_gated):
        rho = density_from_pure(w_gated)
        ba = measured_pair(rho, 1, 0)
        ab = partial_trace(rho, [0, 1])
        assert ba.dims == (2, 2)
        assert_allclose(ba.mat.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4), ab.mat, atol=1e-12)

    def test_uneven_product(self):
        a = sample_random_mixed((3,), 2, seed=1)
        b = sample_random_mixed((2,), 2, seed=2)
        c = sample_random_mixed((2,), 1, seed=3)
        pair = measured_pair(tensor_states(a, b, c), 2, 0)
        assert pair.dims == (2, 3)
        assert_allclose(pair.mat, tensor_states(c, a).mat, atol=1e-12)

    def test_same_party(self, bell_rho):
        with pytest.raises(BadSubsystemIndex):
            measured_pair(bell_rho, 0, 0)


class TestCorrelationReport:
    def test_bell(self, bell_rho):
        rep = correlation_report(bell_rho)
        assert_bits(rep.s_a_given_b, -1.0, TAU_EXACT)
        assert_bits(rep.mutual_information, 2.0, TAU_EXACT)
        assert_bits(rep.j, 1.0, TAU_OPT)
        assert_bits(rep.d, 1.0, TAU_OPT)
        assert_bits(rep.e_f, 1.0, TAU_EXACT)
        assert_bits(rep.e_a, 0.0, TAU_OPT)
        assert_bits(rep.e_u, 1.0, TAU_OPT)
        assert_bits(rep.delta_u, 1.0, TAU_OPT)
        assert rep.projective_only
        assert rep.tolerance_tier["j"] == "opt"

    def test_qubit_qudit(self):
        rep = correlation_report(make_qubit_qudit_example())
        assert rep.e_f is None
        assert_bits(rep.s_a_given_b, -1.0, TAU_EXACT)
        assert_bits(rep.j, 1.0, TAU_OPT)
        assert_bits(rep.d, 1.0, TAU_OPT)

    def test_runs_not_serialized(self, random_two_qubit):
        rep = correlation_report(random_two_qubit)
        assert "runs" not in rep.model_dump()
        assert set(rep.runs) == {"j", "d", "delta_u", "e_a", "e_u"}

    def test_identities(self, random_two_qubit):
        rep = correlation_report(random_two_qubit)
        assert_bits(rep.j + rep.d, rep.mutual_information, 1e-9)
        assert_bits(rep.e_a + rep.e_u, rep.s_b, 1e-9)
