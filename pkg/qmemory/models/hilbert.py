# qmemory/models/hilbert.py
from __future__ import annotations

from math import prod
from typing import Iterable, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ..config import EIG_CLIP, MAX_TOTAL_DIM, TAU_EXACT
from ..errors import BadSubsystemIndex, DimTooLarge, DimensionMismatch, NonHermitian, NotPositive
from ..utils.numeric import as_complex_array, fix_phase, freeze, hermitian_deviation


class HilbertSpace(BaseModel):
    """Ordered tensor product of subsystems; subsystem 0 is the most significant factor."""

    model_config = ConfigDict(frozen=True)

    dims: Tuple[int, ...]

    @field_validator("dims", mode="before")
    @classmethod
    def _to_tuple(cls, v):
        if isinstance(v, int):
            return (v,)
        return tuple(int(d) for d in v)

    @model_validator(mode="after")
    def _check(self):
        if not self.dims:
            raise DimensionMismatch("a Hilbert space needs at least one subsystem")
        # dimension-1 factors only arise as the ancilla of a rank-1 purification
        if any(d < 1 for d in self.dims):
            raise DimensionMismatch(f"subsystem dimensions must be positive, got {self.dims}")
        if self.total_dim > MAX_TOTAL_DIM:
            raise DimTooLarge(f"total dimension {self.total_dim} exceeds {MAX_TOTAL_DIM}")
        return self

    @property
    def total_dim(self) -> int:
        return prod(self.dims)

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    def check_indices(self, indices: Iterable[int]) -> Tuple[int, ...]:
        idx = tuple(int(i) for i in indices)
        for i in idx:
            if i < 0 or i >= self.n_subsystems:
                raise BadSubsystemIndex(f"subsystem {i} not in 0..{self.n_subsystems - 1}")
        if len(set(idx)) != len(idx):
            raise BadSubsystemIndex(f"repeated subsystem index in {idx}")
        return idx

    def sub(self, indices: Iterable[int]) -> "HilbertSpace":
        idx = self.check_indices(indices)
        return HilbertSpace(dims=tuple(self.dims[i] for i in idx))


class DensityMatrix(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    space: HilbertSpace
    mat: np.ndarray
    # present only on states built by states.make_factorized
    origin: Optional[FactorizationRecord] = None

    @field_validator("mat", mode="before")
    @classmethod
    def _to_matrix(cls, v):
        return as_complex_array(v, 2)

    @model_validator(mode="after")
    def _check(self):
        n = self.space.total_dim
        if self.mat.shape != (n, n):
            raise DimensionMismatch(f"matrix shape {self.mat.shape} does not match dims {self.space.dims}")
        dev = hermitian_deviation(self.mat)
        if dev > TAU_EXACT:
            raise NonHermitian(f"density matrix deviates from Hermitian by {dev:.3e}")
        tr = np.trace(self.mat).real
        if abs(tr - 1.0) > TAU_EXACT:
            raise DimensionMismatch(f"trace is {tr!r}, expected 1")
        smallest = float(np.linalg.eigvalsh(self.mat)[0])
        if smallest < -EIG_CLIP:
            raise NotPositive(f"smallest eigenvalue {smallest:.3e} is below -{EIG_CLIP:g}")
        freeze(self.mat)
        return self

    @classmethod
    def from_array(cls, mat, dims, origin: Optional[FactorizationRecord] = None) -> "DensityMatrix":
        return cls(space=HilbertSpace(dims=dims), mat=mat, origin=origin)

    @property
    def dims(self) -> Tuple[int, ...]:
        return self.space.dims

    def eigenvalues(self) -> np.ndarray:
        """Descending spectrum with the small negative tail clipped to zero."""
        w = np.linalg.eigvalsh(self.mat)[::-1]
        return np.where(w < 0, 0.0, w)

    def purity(self) -> float:
        return float(np.real(np.vdot(self.mat, self.mat)))


class PureState(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    space: HilbertSpace
    amplitudes: np.ndarray

    @field_validator("amplitudes", mode="before")
    @classmethod
    def _to_vector(cls, v):
        return fix_phase(as_complex_array(v, 1))

    @model_validator(mode="after")
    def _check(self):
        if self.amplitudes.shape != (self.space.total_dim,):
            raise DimensionMismatch(
                f"{self.amplitudes.shape[0]} amplitudes do not match dims {self.space.dims}"
            )
        norm = float(np.linalg.norm(self.amplitudes))
        if abs(norm - 1.0) > TAU_EXACT:
            raise DimensionMismatch(f"state norm is {norm!r}, expected 1")
        freeze(self.amplitudes)
        return self

    @classmethod
    def from_amplitudes(cls, amplitudes, dims, normalize: bool = True) -> "PureState":
        amps = np.asarray(amplitudes, dtype=np.complex128)
        if normalize:
            norm = np.linalg.norm(amps)
            if norm == 0:
                raise DimensionMismatch("cannot normalize the zero vector")
            amps = amps / norm
        return cls(space=HilbertSpace(dims=dims), amplitudes=amps)

    @property
    def dims(self) -> Tuple[int, ...]:
        return self.space.dims

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


class FactorizationRecord(BaseModel):
    """Construction data of rho_AB = |psi><psi|_{A B^L} (x) rho_{B^R}."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    psi_abl: PureState
    rho_br: DensityMatrix


DensityMatrix.model_rebuild()
FactorizationRecord.model_rebuild()
