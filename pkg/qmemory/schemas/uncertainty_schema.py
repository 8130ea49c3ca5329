# qmemory/schemas/uncertainty_schema.py
from typing import List

from pydantic import Field

from ..config import SCHEMA_VERSION
from ._base_float import SigFigModel


class UncertaintyReport(SigFigModel):
    schema_version: int = SCHEMA_VERSION
    observables: str = "Z,X"
    complementarity_c: float
    s_q_given_b: float
    s_r_given_b: float
    lhs: float = Field(..., description="S(Q|B) + S(R|B)")
    ub: float = Field(..., description="log2(1/c) + S(A|B)")
    s_a_given_b: float
    slack: float = Field(..., description="lhs - ub")


class PlayerBound(UncertaintyReport):
    player: int = Field(..., description="subsystem index of the memory holder")
    below_memoryless: bool = Field(..., description="ub < log2(1/c): this memory helps")


class GameReport(SigFigModel):
    schema_version: int = SCHEMA_VERSION
    n_players: int = Field(..., description="number of memory holders (N - 1)")
    players: List[PlayerBound]
    sum_conditional_entropy: float = Field(..., description="sum_i S(A|X_i), never negative")
    helped_players: int
