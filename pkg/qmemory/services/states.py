# qmemory/services/states.py
"""Named states and seeded random sampling."""
import logging
from math import prod
from typing import Sequence, Union

import numpy as np

from ..errors import DimensionMismatch, DimTooLarge, ParamOutOfRange
from ..models.hilbert import DensityMatrix, FactorizationRecord, HilbertSpace, PureState
from ..schemas.state_schema import StateSpec
from ..utils.rng import complex_gaussian, stream_rng
from .linalg import density_from_pure, tensor_states

logger = logging.getLogger(__name__)

State = Union[DensityMatrix, PureState]

_SQRT_HALF = 1.0 / np.sqrt(2.0)


def _ket(index: int, dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=np.complex128)
    v[index] = 1.0
    return v


def make_bell() -> PureState:
    """(|00> + |11>) / sqrt(2)."""
    return PureState.from_amplitudes(_SQRT_HALF * (_ket(0, 4) + _ket(3, 4)), (2, 2), normalize=False)


def make_ghz(n_parties: int = 3) -> PureState:
    if n_parties < 2:
        raise ParamOutOfRange(f"GHZ needs at least two parties, got {n_parties}")
    d = 2**n_parties
    return PureState.from_amplitudes(_SQRT_HALF * (_ket(0, d) + _ket(d - 1, d)), (2,) * n_parties, normalize=False)


def make_product(dims: Sequence[int]) -> PureState:
    """|0...0> on dims."""
    space = HilbertSpace(dims=tuple(dims))
    return PureState.from_amplitudes(_ket(0, space.total_dim), space.dims, normalize=False)


def make_w_marginal(theta: float, phi: float) -> DensityMatrix:
    """sin^2(theta) |Phi><Phi| + cos^2(theta) |11><11| with |Phi> = cos(phi)|01> + sin(phi)|10>."""
    big_phi = np.cos(phi) * _ket(1, 4) + np.sin(phi) * _ket(2, 4)
    eleven = _ket(3, 4)
    mat = np.sin(theta) ** 2 * np.outer(big_phi, big_phi.conj()) + np.cos(theta) ** 2 * np.outer(eleven, eleven)
    return DensityMatrix.from_array(mat, (2, 2))


def make_w_purification(theta: float, phi: float) -> PureState:
    """sin(theta)cos(phi)|011> + sin(theta)sin(phi)|101> + cos(theta)|110>."""
    amps = np.zeros(8, dtype=np.complex128)
    amps[0b011] = np.sin(theta) * np.cos(phi)
    amps[0b101] = np.sin(theta) * np.sin(phi)
    amps[0b110] = np.cos(theta)
    return PureState.from_amplitudes(amps, (2, 2, 2))


def make_werner(r: float) -> DensityMatrix:
    """r |Phi+><Phi+| + (1 - r) I/4."""
    if not 0.0 <= r <= 1.0:
        raise ParamOutOfRange(f"Werner weight r = {r} is outside [0, 1]")
    bell = make_bell().projector()
    return DensityMatrix.from_array(r * bell + (1.0 - r) * np.eye(4) / 4.0, (2, 2))


def make_qubit_qudit_example() -> DensityMatrix:
    """(|00>+|12>)(<00|+<12|)/4 + (|01>+|13>)(<01|+<13|)/4 on a qubit and a ququart."""
    first = _ket(0, 8) + _ket(6, 8)
    second = _ket(1, 8) + _ket(7, 8)
    mat = (np.outer(first, first) + np.outer(second, second)) / 4.0
    return DensityMatrix.from_array(mat, (2, 4))


def make_factorized(psi_abl: PureState, rho_br: DensityMatrix) -> DensityMatrix:
    """|psi><psi|_{A B^L} (x) rho_{B^R}, with B^L and B^R merged into one subsystem B."""
    if psi_abl.space.n_subsystems != 2:
        raise DimensionMismatch(f"|psi> must live on A (x) B^L, got dims {psi_abl.dims}")
    if rho_br.space.n_subsystems != 1:
        raise DimensionMismatch(f"rho_{{B^R}} must be a single subsystem, got dims {rho_br.dims}")
    d_a, d_bl = psi_abl.dims
    d_br = rho_br.dims[0]
    joint = tensor_states(density_from_pure(psi_abl), rho_br)
    origin = FactorizationRecord(psi_abl=psi_abl, rho_br=rho_br)
    return DensityMatrix.from_array(joint.mat, (d_a, d_bl * d_br), origin=origin)


def make_schmidt_pair(p: float) -> PureState:
    """sqrt(p)|00> + sqrt(1 - p)|11>."""
    if not 0.0 <= p <= 1.0:
        raise ParamOutOfRange(f"Schmidt weight p = {p} is outside [0, 1]")
    return PureState.from_amplitudes(np.sqrt(p) * _ket(0, 4) + np.sqrt(1.0 - p) * _ket(3, 4), (2, 2))


def make_qubit_diagonal(q: float) -> DensityMatrix:
    if not 0.0 <= q <= 1.0:
        raise ParamOutOfRange(f"eigenvalue q = {q} is outside [0, 1]")
    return DensityMatrix.from_array(np.diag([q, 1.0 - q]), (2,))


def sample_haar_pure(dims: Sequence[int], seed: int, stream: int = 0) -> PureState:
    """Normalized complex-Gaussian vector from the (seed, stream) generator."""
    space = HilbertSpace(dims=tuple(dims))
    rng = stream_rng(seed, stream)
    return PureState.from_amplitudes(complex_gaussian(rng, space.total_dim), space.dims)


def sample_random_mixed(dims: Sequence[int], rank: int, seed: int, stream: int = 0) -> DensityMatrix:
    """Marginal of a Haar-random pure state on dims (x) C^rank."""
    space = HilbertSpace(dims=tuple(dims))
    if rank < 1:
        raise ParamOutOfRange(f"rank must be at least 1, got {rank}")
    if rank > space.total_dim:
        raise DimTooLarge(f"rank {rank} exceeds total dimension {space.total_dim}")
    rng = stream_rng(seed, stream)
    g = complex_gaussian(rng, (space.total_dim, rank))
    mat = g @ g.conj().T
    mat = (mat + mat.conj().T) / 2.0
    return DensityMatrix.from_array(mat / np.trace(mat).real, space.dims)


def build_state(spec: StateSpec) -> State:
    """PureState for the pure families, DensityMatrix otherwise."""
    family = spec.family
    if family == "bell":
        return make_bell()
    if family == "ghz":
        dims = spec.dims or (2, 2, 2)
        if any(d != 2 for d in dims):
            raise ParamOutOfRange(f"GHZ is built on qubits, got dims {dims}")
        return make_ghz(len(dims))
    if family == "w_generalized":
        return make_w_purification(spec.theta, spec.phi)
    if family == "eq12_mixed":
        return make_w_marginal(spec.theta, spec.phi)
    if family == "product":
        return make_product(spec.dims or (2, 2))
    if family == "werner":
        return make_werner(spec.r)
    if family == "qubit_qudit_factorized":
        return make_factorized(make_bell(), make_qubit_diagonal(0.5))
    if family == "factorized_eq17":
        return make_factorized(make_schmidt_pair(spec.p), make_qubit_diagonal(spec.q))
    if family == "haar_pure":
        return sample_haar_pure(spec.dims or (2, 2, 2), spec.seed, spec.stream)
    if family == "random_mixed":
        dims = spec.dims or (2, 2)
        rank = spec.rank if spec.rank is not None else prod(dims)
        return sample_random_mixed(dims, rank, spec.seed, spec.stream)
    raise ParamOutOfRange(f"unknown family {family!r}")


def as_density(state: State) -> DensityMatrix:
    if isinstance(state, PureState):
        return density_from_pure(state)
    return state
