# qmemory/schemas/claim_schema.py
from enum import Enum
from typing import Literal, Optional

from pydantic import Field, computed_field, field_serializer, model_validator

from ..config import SCHEMA_VERSION
from ._base_float import SigFigModel
from .state_schema import StateSpec


class ClaimId(str, Enum):
    EQ1_SLACK = "EQ1_SLACK"
    EQ2 = "EQ2"
    EQ3 = "EQ3"
    EQ6 = "EQ6"
    EQ7 = "EQ7"
    EQ8 = "EQ8"
    EQ9 = "EQ9"
    EQ10 = "EQ10"
    EQ11 = "EQ11"
    EQ14 = "EQ14"
    EQ15 = "EQ15"
    EQ16 = "EQ16"
    EQ17_CASE = "EQ17_CASE"
    PROP1 = "PROP1"
    PROP2 = "PROP2"
    DISCORD_EF_SUM = "DISCORD_EF_SUM"
    EQ10_MIRROR = "EQ10_MIRROR"
    J_SWAP = "J_SWAP"
    MIXED_J = "MIXED_J"


ClaimStatus = Literal["PASS", "FAIL", "NOT_APPLICABLE"]
ClaimKind = Literal["equality", "inequality"]


def judge(kind: ClaimKind, residual: float, tolerance: float) -> ClaimStatus:
    if kind == "equality":
        return "PASS" if abs(residual) <= tolerance else "FAIL"
    return "PASS" if residual >= -tolerance else "FAIL"


def badness(kind: ClaimKind, residual: float) -> float:
    """Larger is worse: |residual| for equalities, negative slack for inequalities."""
    return abs(residual) if kind == "equality" else -residual


class ClaimResult(SigFigModel):
    schema_version: int = SCHEMA_VERSION
    claim_id: ClaimId
    kind: ClaimKind
    lhs: float
    rhs: float
    residual: float = Field(..., description="lhs - rhs; for inequalities the signed slack")
    status: ClaimStatus
    tolerance_used: float
    state_spec: Optional[StateSpec] = None
    detail: str = ""

    @model_validator(mode="after")
    def _status_matches_residual(self):
        if self.status != "NOT_APPLICABLE" and self.status != judge(self.kind, self.residual, self.tolerance_used):
            raise ValueError(f"{self.claim_id.value}: status {self.status} contradicts residual {self.residual}")
        return self

    @computed_field
    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    @field_serializer("state_spec")
    def _spec_text(self, spec: Optional[StateSpec]):
        return spec.to_text() if spec is not None else None


class SweepPoint(SigFigModel):
    theta_over_pi: float
    s_a_given_b: float
    d_b_given_a: float
    d_c_given_a: float
    ddb: float = Field(..., description="d D(B|A) / d(theta/pi)")
    ddc: float = Field(..., description="d D(C|A) / d(theta/pi)")


SWEEP_COLUMNS = ["theta_over_pi", "s_a_given_b", "d_b_given_a", "d_c_given_a", "ddb", "ddc"]


class CrossingBracket(SigFigModel):
    lower: float
    upper: float
    estimate: float = Field(..., description="linear interpolation of the zero of dS(A|B)/d(theta/pi)")
    direction: Literal["+-", "-+"]


class BatchSummary(SigFigModel):
    schema_version: int = SCHEMA_VERSION
    claim_id: ClaimId
    n: int
    passes: int
    failures: int
    not_applicable: int
    worst_residual: Optional[float] = None
    worst_spec: Optional[str] = None
    tolerance_used: float


AUDIT_COLUMNS = [
    "claim_id",
    "n",
    "passes",
    "failures",
    "not_applicable",
    "worst_residual",
    "worst_spec",
    "tolerance_used",
    "schema_version",
]


class WernerThreshold(SigFigModel):
    schema_version: int = SCHEMA_VERSION
    r_star: float
    residual: float = Field(..., description="|S(A|B)| at r_star")
    iterations: int
    tol: float
