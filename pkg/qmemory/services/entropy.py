# qmemory/services/entropy.py
"""Entropy functionals, post-measurement states and the memory-assisted uncertainty bound. All in bits."""
import logging
from math import log2, prod
from typing import Iterable, List, Union

import numpy as np

from ..config import TAU_EXACT
from ..errors import BadSubsystemIndex, DimensionMismatch, IncompleteBasis
from ..models.hilbert import DensityMatrix
from ..models.measurement import ObservablePair, _check_orthonormal
from ..schemas.uncertainty_schema import GameReport, PlayerBound, UncertaintyReport
from ..utils.numeric import shannon_bits
from .linalg import clipped_spectrum, partial_trace_array

logger = logging.getLogger(__name__)

Subsystems = Union[int, Iterable[int]]

_SQRT_HALF = 1.0 / np.sqrt(2.0)
_QUBIT_BASES = {
    "Z": np.array([[1, 0], [0, 1]], dtype=np.complex128),
    "X": np.array([[_SQRT_HALF, _SQRT_HALF], [_SQRT_HALF, -_SQRT_HALF]], dtype=np.complex128),
    "Y": np.array([[_SQRT_HALF, _SQRT_HALF], [1j * _SQRT_HALF, -1j * _SQRT_HALF]], dtype=np.complex128),
}


def entropy_bits(mat: np.ndarray) -> float:
    """-sum l log2 l over the clipped spectrum of a PSD matrix (trace not renormalized)."""
    return shannon_bits(clipped_spectrum(mat))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    return entropy_bits(rho.mat)


def _as_set(x: Subsystems) -> tuple:
    if isinstance(x, (int, np.integer)):
        return (int(x),)
    return tuple(sorted(set(int(i) for i in x)))


def marginal_entropy(rho: DensityMatrix, subsystems: Subsystems) -> float:
    keep = _as_set(subsystems)
    if not keep:
        return 0.0
    return entropy_bits(partial_trace_array(rho.mat, rho.dims, keep))


def conditional_entropy(rho: DensityMatrix, of: Subsystems, given: Subsystems) -> float:
    """S(of | given) = S(rho_{of u given}) - S(rho_given)."""
    of_set, given_set = _as_set(of), _as_set(given)
    if not of_set:
        raise BadSubsystemIndex("conditional entropy needs at least one subsystem on the left")
    rho.space.check_indices(of_set + given_set)
    return marginal_entropy(rho, of_set + given_set) - marginal_entropy(rho, given_set)


def mutual_information(rho: DensityMatrix, a: Subsystems, b: Subsystems) -> float:
    a_set, b_set = _as_set(a), _as_set(b)
    if set(a_set) & set(b_set):
        raise BadSubsystemIndex(f"mutual information needs disjoint parties, got {a_set} and {b_set}")
    rho.space.check_indices(a_set + b_set)
    return marginal_entropy(rho, a_set) + marginal_entropy(rho, b_set) - marginal_entropy(rho, a_set + b_set)


def post_measurement_state(rho: DensityMatrix, basis, subsystem: int = 0) -> DensityMatrix:
    """sum_k (Pi_k (x) I) rho (Pi_k (x) I) for the orthonormal basis (columns) on `subsystem`."""
    rho.space.check_indices([subsystem])
    basis = np.asarray(basis, dtype=np.complex128)
    d = rho.dims[subsystem]
    if basis.ndim != 2 or basis.shape != (d, d):
        raise IncompleteBasis(f"need {d} basis vectors of length {d} on subsystem {subsystem}, got {basis.shape}")
    _check_orthonormal(basis, "measurement")
    left = np.eye(prod(rho.dims[:subsystem]))
    right = np.eye(prod(rho.dims[subsystem + 1:]))
    mat = np.zeros_like(rho.mat)
    for k in range(d):
        proj = np.kron(left, np.kron(np.outer(basis[:, k], basis[:, k].conj()), right))
        mat += proj @ rho.mat @ proj
    return DensityMatrix.from_array((mat + mat.conj().T) / 2.0, rho.dims)


def named_observable_pair(name: str = "Z,X", dim: int = 2) -> ObservablePair:
    labels = [s.strip().upper() for s in name.split(",")]
    if len(labels) != 2 or labels[0] == labels[1]:
        raise IncompleteBasis(f"observable pair must name two distinct bases, got {name!r}")
    bases = []
    for label in labels:
        if dim == 2 and label in _QUBIT_BASES:
            bases.append(_QUBIT_BASES[label])
        elif label == "Z":
            bases.append(np.eye(dim, dtype=np.complex128))
        elif label == "X":
            k = np.arange(dim)
            bases.append(np.exp(2j * np.pi * np.outer(k, k) / dim) / np.sqrt(dim))
        else:
            raise IncompleteBasis(f"unknown observable {label!r} for dimension {dim}")
    return ObservablePair(basis_q=bases[0], basis_r=bases[1], name=",".join(labels))


def uncertainty_report(rho_ab: DensityMatrix, obs: ObservablePair) -> UncertaintyReport:
    """Both sides of S(Q|B) + S(R|B) >= log2(1/c) + S(A|B); A is subsystem 0, B everything else."""
    if rho_ab.space.n_subsystems < 2:
        raise DimensionMismatch("the uncertainty bound needs a measured party and a memory")
    if obs.dim != rho_ab.dims[0]:
        raise DimensionMismatch(f"observables act on dimension {obs.dim}, subsystem A has {rho_ab.dims[0]}")
    memory = tuple(range(1, rho_ab.space.n_subsystems))
    s_b = marginal_entropy(rho_ab, memory)
    s_q = von_neumann_entropy(post_measurement_state(rho_ab, obs.basis_q)) - s_b
    s_r = von_neumann_entropy(post_measurement_state(rho_ab, obs.basis_r)) - s_b
    s_ab = von_neumann_entropy(rho_ab) - s_b
    lhs = s_q + s_r
    ub = log2(1.0 / obs.complementarity_c) + s_ab
    return UncertaintyReport(
        observables=obs.name,
        complementarity_c=obs.complementarity_c,
        s_q_given_b=s_q,
        s_r_given_b=s_r,
        lhs=lhs,
        ub=ub,
        s_a_given_b=s_ab,
        slack=lhs - ub,
    )


def uncertainty_game(rho: DensityMatrix, obs: ObservablePair) -> GameReport:
    """Alice holds subsystem 0; every other subsystem is one player's quantum memory."""
    n = rho.space.n_subsystems
    if n < 3:
        raise DimensionMismatch("the uncertainty game needs Alice and at least two players")
    memoryless = log2(1.0 / obs.complementarity_c)
    players: List[PlayerBound] = []
    for i in range(1, n):
        rho_ai = DensityMatrix.from_array(partial_trace_array(rho.mat, rho.dims, (0, i)), (rho.dims[0], rho.dims[i]))
        rep = uncertainty_report(rho_ai, obs)
        players.append(PlayerBound(**dict(rep), player=i, below_memoryless=rep.ub < memoryless - TAU_EXACT))
    total = sum(p.s_a_given_b for p in players)
    helped = sum(1 for p in players if p.below_memoryless)
    logger.info("uncertainty game: %d players, sum S(A|X_i)=%.6f, helped=%d", n - 1, total, helped)
    return GameReport(n_players=n - 1, players=players, sum_conditional_entropy=total, helped_players=helped)
