# qmemory/models/measurement.py
from __future__ import annotations

from math import pi
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ..config import TAU_EXACT
from ..errors import DimensionMismatch, IncompleteBasis
from ..utils.numeric import as_complex_array, freeze

_TWO_PI = 2.0 * pi


def reduce_bloch_angles(theta: float, phi: float) -> Tuple[float, float]:
    """Map any (theta, phi) onto theta in [0, pi], phi in [0, 2 pi) for the same Bloch vector."""
    theta = float(theta) % _TWO_PI
    phi = float(phi)
    if theta > pi:
        theta = _TWO_PI - theta
        phi += pi
    phi %= _TWO_PI
    if phi >= _TWO_PI:
        phi = 0.0
    return theta, phi


def bloch_ket(theta: float, phi: float) -> np.ndarray:
    return np.array([np.cos(theta / 2.0), np.exp(1j * phi) * np.sin(theta / 2.0)], dtype=np.complex128)


class MeasurementBasis(BaseModel):
    """Rank-1 projective qubit measurement along the Bloch direction (theta, phi)."""

    model_config = ConfigDict(frozen=True)

    theta: float
    phi: float

    @model_validator(mode="before")
    @classmethod
    def _reduce(cls, values):
        if isinstance(values, dict) and "theta" in values and "phi" in values:
            theta, phi = reduce_bloch_angles(values["theta"], values["phi"])
            values = {**values, "theta": theta, "phi": phi}
        return values

    @model_validator(mode="after")
    def _check(self):
        p0, p1 = self.projectors
        if np.max(np.abs(p0 + p1 - np.eye(2))) > TAU_EXACT:
            raise IncompleteBasis("measurement projectors do not sum to the identity")
        if max(np.max(np.abs(p @ p - p)) for p in (p0, p1)) > TAU_EXACT:
            raise IncompleteBasis("measurement projectors are not idempotent")
        return self

    @property
    def kets(self) -> np.ndarray:
        """Columns are the two outcome vectors."""
        up = bloch_ket(self.theta, self.phi)
        down = np.array([-np.conj(up[1]), np.conj(up[0])], dtype=np.complex128)
        return np.column_stack([up, down])

    @property
    def projectors(self) -> Tuple[np.ndarray, np.ndarray]:
        k = self.kets
        return np.outer(k[:, 0], k[:, 0].conj()), np.outer(k[:, 1], k[:, 1].conj())

    @classmethod
    def z(cls) -> "MeasurementBasis":
        return cls(theta=0.0, phi=0.0)

    @classmethod
    def x(cls) -> "MeasurementBasis":
        return cls(theta=pi / 2, phi=0.0)


def _check_orthonormal(basis: np.ndarray, label: str) -> None:
    if basis.ndim != 2 or basis.shape[0] != basis.shape[1]:
        raise IncompleteBasis(f"basis {label} must hold d vectors of length d, got shape {basis.shape}")
    gram = basis.conj().T @ basis
    if np.max(np.abs(gram - np.eye(basis.shape[0]))) > TAU_EXACT:
        raise IncompleteBasis(f"basis {label} is not orthonormal")


def overlap_complementarity(basis_q: np.ndarray, basis_r: np.ndarray) -> float:
    return float(np.max(np.abs(basis_q.conj().T @ basis_r) ** 2))


class ObservablePair(BaseModel):
    """Eigenbases of the two observables Q, R (as columns) and c = max |<q_k|r_l>|^2."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    basis_q: np.ndarray
    basis_r: np.ndarray
    complementarity_c: Optional[float] = None
    name: str = "custom"

    @field_validator("basis_q", "basis_r", mode="before")
    @classmethod
    def _to_matrix(cls, v):
        return as_complex_array(v, 2)

    @model_validator(mode="after")
    def _check(self):
        _check_orthonormal(self.basis_q, "Q")
        _check_orthonormal(self.basis_r, "R")
        if self.basis_q.shape != self.basis_r.shape:
            raise DimensionMismatch("Q and R must act on the same subsystem")
        c = overlap_complementarity(self.basis_q, self.basis_r)
        if self.complementarity_c is None:
            object.__setattr__(self, "complementarity_c", c)
        elif abs(self.complementarity_c - c) > TAU_EXACT:
            raise IncompleteBasis(f"stated complementarity {self.complementarity_c} does not match {c}")
        freeze(self.basis_q)
        freeze(self.basis_r)
        return self

    @property
    def dim(self) -> int:
        return self.basis_q.shape[0]
