# qmemory/schemas/correlation_schema.py
import logging
from typing import Dict, Literal, Optional

from pydantic import Field, model_validator

from ..config import SCHEMA_VERSION, TAU_EXACT, TAU_OPT
from ..models.measurement import MeasurementBasis
from ._base_float import SigFigModel

logger = logging.getLogger(__name__)

Sense = Literal["min", "max"]
Tier = Literal["exact", "opt"]

_REFINE_SLACK = 1e-12


class OptimizerResult(SigFigModel):
    value: float
    argmin_or_argmax: MeasurementBasis
    grid_value: float = Field(..., description="best value on the coarse grid, before refinement")
    refinement_delta: float = Field(..., description="value - grid_value")
    converged: bool
    sense: Sense = "min"
    evaluations: int = 0

    @model_validator(mode="after")
    def _refinement_never_worsens(self):
        if self.sense == "min" and self.value > self.grid_value + _REFINE_SLACK:
            raise ValueError(f"refined minimum {self.value} is above the grid minimum {self.grid_value}")
        if self.sense == "max" and self.value < self.grid_value - _REFINE_SLACK:
            raise ValueError(f"refined maximum {self.value} is below the grid maximum {self.grid_value}")
        return self

    def shifted(self, offset: float, negate: bool = False) -> "OptimizerResult":
        """Same run re-expressed as offset +/- value; negating flips min and max."""
        sign = -1.0 if negate else 1.0
        sense = self.sense
        if negate:
            sense = "max" if self.sense == "min" else "min"
        value = offset + sign * self.value
        grid_value = offset + sign * self.grid_value
        return self.model_copy(
            update={
                "value": value,
                "grid_value": grid_value,
                "refinement_delta": value - grid_value,
                "sense": sense,
            }
        )


class CorrelationReport(SigFigModel):
    schema_version: int = SCHEMA_VERSION
    s_a: float
    s_b: float
    s_ab: float
    s_a_given_b: float
    mutual_information: float
    j: float = Field(..., description="J(B|A)")
    d: float = Field(..., description="D(B|A)")
    e_f: Optional[float] = Field(None, description="E_f(rho_AB); two qubits only")
    e_a: float = Field(..., description="E_a(rho_BC) on the canonical purification")
    e_u: float = Field(..., description="E_u<-(rho_BA)")
    delta_u: float = Field(..., description="delta_u<-(rho_BA)")
    tolerance_tier: Dict[str, Tier]
    optimizer_converged: bool = True
    projective_only: bool = True
    runs: Dict[str, OptimizerResult] = Field(default_factory=dict, exclude=True)

    @model_validator(mode="after")
    def _check_ranges(self):
        if self.j < -TAU_OPT or self.d < -TAU_OPT:
            logger.warning("correlation report out of range: J=%.3e D=%.3e", self.j, self.d)
        if self.e_f is not None and not (-TAU_EXACT <= self.e_f <= 1.0 + TAU_EXACT):
            logger.warning("entanglement of formation %.12g outside [0, 1]", self.e_f)
        return self
