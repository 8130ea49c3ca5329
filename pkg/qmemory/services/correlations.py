# qmemory/services/correlations.py
"""
Measurement-optimized correlation measures.

The measured party is a qubit at subsystem 0; everything after it is the
target, merged into one factor. Measurements are rank-1 projective along a
Bloch direction, searched on a (theta, phi) grid and refined by Nelder-Mead
from the best cell.
"""
import logging
from functools import lru_cache
from math import pi, prod
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from ..config import GRID_PHI, GRID_THETA, OUTCOME_CUTOFF, SIMPLEX_MAXITER, SIMPLEX_XATOL
from ..errors import BadSubsystemIndex, DimensionMismatch, NotAQubit, NotTwoQubits
from ..models.hilbert import DensityMatrix, PureState
from ..models.measurement import MeasurementBasis
from ..schemas.correlation_schema import CorrelationReport, OptimizerResult
from ..utils.numeric import binary_entropy
from .entropy import marginal_entropy, von_neumann_entropy
from .linalg import eigh, partial_trace, permute, purification_matrix

logger = logging.getLogger(__name__)

_SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_YY = np.kron(_SIGMA_Y, _SIGMA_Y)
_CHUNK = 2048

BatchObjective = Callable[[np.ndarray, np.ndarray], np.ndarray]


@lru_cache(maxsize=None)
def _note_projective_family() -> None:
    logger.info(
        "J, D, delta_u and E_a are optimized over rank-1 projective qubit measurements; "
        "a general POVM could lower S(B|{E_k}) further"
    )


def _bloch_kets(thetas: np.ndarray, phis: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Outcome kets (up, down) for each direction, each of shape (K, 2)."""
    c = np.cos(thetas / 2.0)
    s = np.exp(1j * phis) * np.sin(thetas / 2.0)
    up = np.stack([c + 0j, s], axis=-1)
    down = np.stack([-np.conj(s), np.conj(c) + 0j], axis=-1)
    return up, down


def _weighted_entropy(blocks: np.ndarray) -> np.ndarray:
    """p S(block / p) in bits for a stack of unnormalized PSD blocks; 0 below OUTCOME_CUTOFF."""
    return _weighted_entropy_from_weights(np.linalg.eigvalsh(blocks))


def _schmidt_weighted_entropy(vectors: np.ndarray) -> np.ndarray:
    """p S(Tr_C |phi><phi| / p) for a stack of unnormalized bipartite vectors shaped (K, dB, dC)."""
    s = np.linalg.svd(vectors, compute_uv=False)
    return _weighted_entropy_from_weights(s**2)


def _weighted_entropy_from_weights(w: np.ndarray) -> np.ndarray:
    # -sum w log2 w + p log2 p == p S(w / p)
    w = np.where(w > 0, w, 0.0)
    p = w.sum(axis=-1)
    wlogw = np.zeros_like(w)
    pos = w > 0
    wlogw[pos] = w[pos] * np.log2(w[pos])
    out = -wlogw.sum(axis=-1)
    live = p >= OUTCOME_CUTOFF
    out[live] += p[live] * np.log2(p[live])
    out[~live] = 0.0
    return out


def _require_measured_qubit(rho: DensityMatrix) -> int:
    if rho.space.n_subsystems < 2:
        raise DimensionMismatch("a measured party and a target are needed")
    if rho.dims[0] != 2:
        raise NotAQubit(f"measured subsystem has dimension {rho.dims[0]}, expected 2")
    return prod(rho.dims[1:])


def _measured_entropy_objective(rho: DensityMatrix) -> BatchObjective:
    """sum_k p_k S(rho_{B|k}) as a vectorized function of the Bloch angles of the measurement on A."""
    d_b = _require_measured_qubit(rho)
    blocks = rho.mat.reshape(2, d_b, 2, d_b)
    rho_b = np.einsum("ibic->bc", blocks)

    def objective(thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
        up, _ = _bloch_kets(thetas, phis)
        sigma_up = np.einsum("ki,ibjc,kj->kbc", up.conj(), blocks, up)
        sigma_down = rho_b[np.newaxis, :, :] - sigma_up
        return _weighted_entropy(sigma_up) + _weighted_entropy(sigma_down)

    return objective


def _assistance_objective(tensor: np.ndarray) -> BatchObjective:
    """Average Schmidt entropy of the pair left by measuring the helper; tensor is (2, dB, dC)."""

    def objective(thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
        up, down = _bloch_kets(thetas, phis)
        phi_up = np.einsum("ki,ibc->kbc", up.conj(), tensor)
        phi_down = np.einsum("ki,ibc->kbc", down.conj(), tensor)
        return _schmidt_weighted_entropy(phi_up) + _schmidt_weighted_entropy(phi_down)

    return objective


def _grid() -> Tuple[np.ndarray, np.ndarray]:
    thetas = np.linspace(0.0, pi, GRID_THETA)
    phis = np.linspace(0.0, 2.0 * pi, GRID_PHI, endpoint=False)
    t, p = np.meshgrid(thetas, phis, indexing="ij")
    return t.ravel(), p.ravel()


def optimize_measurement(objective: BatchObjective, sense: str = "min") -> OptimizerResult:
    """Grid search over the Bloch sphere, then Nelder-Mead from the best grid cell."""
    sign = 1.0 if sense == "min" else -1.0
    thetas, phis = _grid()
    values = np.concatenate(
        [objective(thetas[i:i + _CHUNK], phis[i:i + _CHUNK]) for i in range(0, thetas.size, _CHUNK)]
    )
    best = int(np.argmin(sign * values))
    grid_value = float(values[best])
    x0 = np.array([thetas[best], phis[best]])
    d_theta = pi / (GRID_THETA - 1)
    d_phi = 2.0 * pi / GRID_PHI
    simplex = np.array([x0, x0 + [d_theta, 0.0], x0 + [0.0, d_phi]])

    def scalar(x: np.ndarray) -> float:
        return float(sign * objective(np.array([x[0]]), np.array([x[1]]))[0])

    res = minimize(
        scalar,
        x0,
        method="Nelder-Mead",
        options={
            "xatol": SIMPLEX_XATOL,
            "fatol": 1e-12,
            "maxiter": SIMPLEX_MAXITER,
            "initial_simplex": simplex,
        },
    )
    refined = sign * float(res.fun)
    if sign * refined <= sign * grid_value:
        value, theta, phi = refined, float(res.x[0]), float(res.x[1])
    else:
        value, theta, phi = grid_value, float(x0[0]), float(x0[1])
    if not res.success:
        logger.warning("measurement refinement did not converge: %s", res.message)
    logger.debug("optimizer %s: grid=%.12g refined=%.12g nfev=%d", sense, grid_value, value, res.nfev)
    return OptimizerResult(
        value=value,
        argmin_or_argmax=MeasurementBasis(theta=theta, phi=phi),
        grid_value=grid_value,
        refinement_delta=value - grid_value,
        converged=bool(res.success),
        sense=sense,
        evaluations=int(thetas.size + res.nfev),
    )


def conditional_entropy_after_measurement(rho_ab: DensityMatrix, m: MeasurementBasis) -> float:
    """S(B|{Pi_k^A}) = sum_k p_k S(rho_{B|k}) for the projective measurement m on the qubit A."""
    objective = _measured_entropy_objective(rho_ab)
    return float(objective(np.array([m.theta]), np.array([m.phi]))[0])


def _min_measured_entropy(rho_ab: DensityMatrix) -> OptimizerResult:
    _note_projective_family()
    return optimize_measurement(_measured_entropy_objective(rho_ab), "min")


def _max_measured_entropy(rho_ab: DensityMatrix) -> OptimizerResult:
    _note_projective_family()
    return optimize_measurement(_measured_entropy_objective(rho_ab), "max")


def _target_entropy(rho_ab: DensityMatrix) -> float:
    return marginal_entropy(rho_ab, range(1, rho_ab.space.n_subsystems))


def _measured_entropy_gap(rho_ab: DensityMatrix) -> float:
    """S(A) - S(AB)."""
    return marginal_entropy(rho_ab, 0) - von_neumann_entropy(rho_ab)


def classical_correlation(rho_ab: DensityMatrix) -> OptimizerResult:
    """J(B|A) = S(B) - min_m S(B|m)."""
    run = _min_measured_entropy(rho_ab)
    return run.shifted(_target_entropy(rho_ab), negate=True)


def quantum_discord(rho_ab: DensityMatrix) -> OptimizerResult:
    """D(B|A) = I(A:B) - J(B|A) = S(A) - S(AB) + min_m S(B|m)."""
    run = _min_measured_entropy(rho_ab)
    return run.shifted(_measured_entropy_gap(rho_ab))


def unlocalizable_discord(rho_ab: DensityMatrix) -> OptimizerResult:
    """delta_u<-(B|A) = S(A) - S(AB) + max_m S(B|m)."""
    run = _max_measured_entropy(rho_ab)
    return run.shifted(_measured_entropy_gap(rho_ab))


def unlocalizable_entanglement(rho_ba: DensityMatrix) -> float:
    """E_u<-(rho_BA) = S(B) - max_m S(B|m), measured party A at subsystem 0."""
    return _unlocalizable_entanglement_run(rho_ba).value


def _unlocalizable_entanglement_run(rho_ab: DensityMatrix) -> OptimizerResult:
    run = _max_measured_entropy(rho_ab)
    return run.shifted(_target_entropy(rho_ab), negate=True)


def concurrence(rho: DensityMatrix) -> float:
    if rho.dims != (2, 2):
        raise NotTwoQubits(f"concurrence needs two qubits, got dims {rho.dims}")
    w, v = eigh(rho.mat)
    sqrt_rho = (v * np.sqrt(np.where(w > 0, w, 0.0))) @ v.conj().T
    rho_tilde = _YY @ rho.mat.conj() @ _YY
    m = sqrt_rho @ rho_tilde @ sqrt_rho
    m = (m + m.conj().T) / 2.0
    ev = np.linalg.eigvalsh(m)
    lam = np.sqrt(np.where(ev > 0, ev, 0.0))[::-1]
    c = lam[0] - lam[1] - lam[2] - lam[3]
    return float(min(max(c, 0.0), 1.0))


def entanglement_of_formation(rho: DensityMatrix) -> float:
    """Wootters closed form: h((1 + sqrt(1 - C^2)) / 2)."""
    c = concurrence(rho)
    return binary_entropy((1.0 + np.sqrt(max(0.0, 1.0 - c * c))) / 2.0)


def _pair_tensor(psi: PureState, pair: Sequence[int], helper: int) -> np.ndarray:
    b, c = (int(x) for x in pair)
    order = psi.space.check_indices((helper, b, c))
    if len(order) != psi.space.n_subsystems:
        raise DimensionMismatch(
            f"helper and pair must cover every subsystem of the pure state, got {order} for dims {psi.dims}"
        )
    if psi.dims[helper] != 2:
        raise NotAQubit(f"helper subsystem {helper} has dimension {psi.dims[helper]}, expected 2")
    return psi.amplitudes.reshape(psi.dims).transpose(order)


def assistance_optimization(psi_abc: PureState, pair: Sequence[int] = (1, 2), helper: int = 0) -> OptimizerResult:
    """max over projective measurements on the helper of the average entanglement left in the pair."""
    _note_projective_family()
    return optimize_measurement(_assistance_objective(_pair_tensor(psi_abc, pair, helper)), "max")


def entanglement_of_assistance(psi_abc: PureState, pair: Sequence[int] = (1, 2), helper: int = 0) -> float:
    return assistance_optimization(psi_abc, pair, helper).value


def measured_pair(rho: DensityMatrix, measured: int, target: int) -> DensityMatrix:
    """rho on (measured, target), measured party first; everything else traced out."""
    if measured == target:
        raise BadSubsystemIndex(f"measured and target party are both {measured}")
    rho.space.check_indices((measured, target))
    pair = partial_trace(rho, (measured, target))
    return permute(pair, (1, 0)) if measured > target else pair


def measured_classical_correlation(rho: DensityMatrix, measured: int, target: int) -> OptimizerResult:
    """J(target | measured)."""
    return classical_correlation(measured_pair(rho, measured, target))


def measured_discord(rho: DensityMatrix, measured: int, target: int) -> OptimizerResult:
    """D(target | measured)."""
    return quantum_discord(measured_pair(rho, measured, target))


def correlation_report(rho_ab: DensityMatrix) -> CorrelationReport:
    """Every correlation between the qubit A and the rest B; E_a and E_u<- on the canonical purification."""
    d_b = _require_measured_qubit(rho_ab)
    merged = rho_ab if rho_ab.space.n_subsystems == 2 else DensityMatrix.from_array(rho_ab.mat, (2, d_b))
    s_a = marginal_entropy(merged, 0)
    s_b = marginal_entropy(merged, 1)
    s_ab = von_neumann_entropy(merged)

    low = _min_measured_entropy(merged)
    high = _max_measured_entropy(merged)
    j = low.shifted(s_b, negate=True)
    d = low.shifted(s_a - s_ab)
    delta_u = high.shifted(s_a - s_ab)

    cols = purification_matrix(merged.mat)
    tensor = cols.reshape(2, d_b, cols.shape[1])
    e_a = optimize_measurement(_assistance_objective(tensor), "max")
    e_u = e_a.shifted(s_b, negate=True)

    e_f: Optional[float] = entanglement_of_formation(merged) if merged.dims == (2, 2) else None
    runs = {"j": j, "d": d, "delta_u": delta_u, "e_a": e_a, "e_u": e_u}
    return CorrelationReport(
        s_a=s_a,
        s_b=s_b,
        s_ab=s_ab,
        s_a_given_b=s_ab - s_b,
        mutual_information=s_a + s_b - s_ab,
        j=j.value,
        d=d.value,
        e_f=e_f,
        e_a=e_a.value,
        e_u=e_u.value,
        delta_u=delta_u.value,
        tolerance_tier={
            "s_a": "exact",
            "s_b": "exact",
            "s_ab": "exact",
            "s_a_given_b": "exact",
            "mutual_information": "exact",
            "j": "opt",
            "d": "opt",
            "e_f": "exact",
            "e_a": "opt",
            "e_u": "opt",
            "delta_u": "opt",
        },
        optimizer_converged=all(r.converged for r in runs.values()),
        runs=runs,
    )
