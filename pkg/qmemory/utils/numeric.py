# qmemory/utils/numeric.py
from typing import Iterable

import numpy as np
import numpy.typing as npt

ComplexMatrix = npt.NDArray[np.complex128]
ComplexVector = npt.NDArray[np.complex128]

_PHASE_CUTOFF = 1e-12


def as_complex_array(x, ndim: int) -> np.ndarray:
    arr = np.array(x, dtype=np.complex128, copy=True)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-d array, got shape {arr.shape}")
    return arr


def freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def fix_phase(vec: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the first nonzero entry is real and positive."""
    out = np.array(vec, dtype=np.complex128, copy=True)
    nonzero = np.flatnonzero(np.abs(out) > _PHASE_CUTOFF)
    if nonzero.size == 0:
        return out
    lead = out[nonzero[0]]
    out *= np.conj(lead) / abs(lead)
    out[nonzero[0]] = abs(lead)
    return out


def fix_column_phases(vecs: np.ndarray) -> np.ndarray:
    return np.column_stack([fix_phase(vecs[:, k]) for k in range(vecs.shape[1])])


def hermitian_deviation(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def shannon_bits(weights: Iterable[float]) -> float:
    """-sum w log2 w over the strictly positive weights."""
    w = np.asarray(list(weights), dtype=float)
    w = w[w > 0]
    return float(-np.sum(w * np.log2(w)))


def binary_entropy(p: float) -> float:
    return shannon_bits([p, 1.0 - p])
