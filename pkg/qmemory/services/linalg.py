# qmemory/services/linalg.py
"""
Dense complex-matrix substrate.

Index convention: subsystem 0 is the most significant tensor factor, so a
state on dims (d0, d1, ..., dn) reshapes row-major to (d0, d1, ..., dn).
"""
import logging
from math import prod
from typing import Iterable, Sequence, Tuple

import numpy as np

from ..config import EIG_CLIP, RANK_CUTOFF, TAU_EXACT
from ..errors import BadSubsystemIndex, NonHermitian, NotPositive
from ..models.hilbert import DensityMatrix, HilbertSpace, PureState
from ..utils.numeric import ComplexMatrix, fix_column_phases, hermitian_deviation

logger = logging.getLogger(__name__)


def eigh(m: ComplexMatrix) -> Tuple[np.ndarray, ComplexMatrix]:
    """Eigenvalues in descending order, eigenvectors as phase-fixed orthonormal columns."""
    m = np.asarray(m, dtype=np.complex128)
    dev = hermitian_deviation(m)
    if dev > TAU_EXACT:
        raise NonHermitian(f"matrix deviates from Hermitian by {dev:.3e}")
    w, v = np.linalg.eigh(m)
    # stable sort keeps LAPACK's order inside degenerate blocks
    order = np.argsort(-w, kind="stable")
    return w[order], fix_column_phases(v[:, order])


def tensor(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def tensor_states(*states: DensityMatrix) -> DensityMatrix:
    mat = np.array([[1.0 + 0j]])
    dims: Tuple[int, ...] = ()
    for s in states:
        mat = tensor(mat, s.mat)
        dims = dims + s.dims
    return DensityMatrix.from_array(mat, dims)


def _normalize_keep(dims: Sequence[int], keep: Iterable[int]) -> Tuple[int, ...]:
    keep_sorted = tuple(sorted(set(int(k) for k in keep)))
    if not keep_sorted:
        raise BadSubsystemIndex("partial trace must keep at least one subsystem")
    for k in keep_sorted:
        if k < 0 or k >= len(dims):
            raise BadSubsystemIndex(f"subsystem {k} not in 0..{len(dims) - 1}")
    return keep_sorted


def partial_trace_array(mat: np.ndarray, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Raw-array partial trace; kept subsystems stay in their original order."""
    dims = tuple(dims)
    keep = _normalize_keep(dims, keep)
    if len(keep) == len(dims):
        return np.array(mat, copy=True)
    drop = tuple(i for i in range(len(dims)) if i not in keep)
    n = len(dims)
    d_keep = prod(dims[i] for i in keep)
    d_drop = prod(dims[i] for i in drop)
    t = mat.reshape(dims + dims).transpose(keep + drop + tuple(n + i for i in keep) + tuple(n + i for i in drop))
    t = t.reshape(d_keep, d_drop, d_keep, d_drop)
    return np.einsum("ijkj->ik", t)


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    keep = _normalize_keep(rho.dims, keep)
    out = partial_trace_array(rho.mat, rho.dims, keep)
    return DensityMatrix.from_array(out, tuple(rho.dims[i] for i in keep))


def reduced_from_pure(amplitudes: np.ndarray, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Marginal of a pure state without forming the full projector."""
    dims = tuple(dims)
    keep = _normalize_keep(dims, keep)
    drop = tuple(i for i in range(len(dims)) if i not in keep)
    t = np.asarray(amplitudes).reshape(dims).transpose(keep + drop)
    m = t.reshape(prod(dims[i] for i in keep), -1)
    return m @ m.conj().T


def permute_array(mat: np.ndarray, dims: Sequence[int], order: Sequence[int]) -> np.ndarray:
    dims = tuple(dims)
    n = len(dims)
    order = tuple(int(o) for o in order)
    if sorted(order) != list(range(n)):
        raise BadSubsystemIndex(f"{order} is not a permutation of 0..{n - 1}")
    d = prod(dims)
    t = mat.reshape(dims + dims).transpose(order + tuple(n + o for o in order))
    return t.reshape(d, d)


def permute(rho: DensityMatrix, order: Sequence[int]) -> DensityMatrix:
    out = permute_array(rho.mat, rho.dims, order)
    return DensityMatrix.from_array(out, tuple(rho.dims[o] for o in order))


def density_from_pure(psi: PureState) -> DensityMatrix:
    return DensityMatrix.from_array(psi.projector(), psi.dims)


def is_pure(rho: DensityMatrix) -> bool:
    return abs(rho.purity() - 1.0) <= TAU_EXACT


def clipped_spectrum(mat: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian PSD matrix with the tiny negative tail set to 0."""
    w = np.linalg.eigvalsh(mat)
    if w.size and w[0] < -EIG_CLIP:
        raise NotPositive(f"eigenvalue {w[0]:.3e} is below -{EIG_CLIP:g}")
    return np.where(w < 0, 0.0, w)


def purification_matrix(mat: np.ndarray) -> np.ndarray:
    """Columns sqrt(l_i) |v_i> over eigenpairs with l_i > RANK_CUTOFF, descending.

    Row index is the system basis state, column index the ancilla |i>; the
    flattened matrix is the canonical purification.
    """
    w, v = eigh(mat)
    keep = w > RANK_CUTOFF
    return v[:, keep] * np.sqrt(w[keep])[np.newaxis, :]


def purify(rho: DensityMatrix) -> PureState:
    """|Psi> = sum_i sqrt(l_i) |v_i>|i> over eigenpairs with l_i > RANK_CUTOFF, descending."""
    cols = purification_matrix(rho.mat)
    rank = cols.shape[1]
    logger.debug("purified dims=%s with ancilla of rank %d", rho.dims, rank)
    space = HilbertSpace(dims=rho.dims + (rank,))
    return PureState.from_amplitudes(cols.reshape(-1), space.dims)
