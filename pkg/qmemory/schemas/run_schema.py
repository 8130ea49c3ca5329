# qmemory/schemas/run_schema.py
from math import pi
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..config import WORKERS
from ..errors import SpecParseError
from ..utils.angles import parse_angle
from .claim_schema import ClaimId
from .state_schema import STATE_KEYS, StateSpec, parse_dims, tokens_to_dict

Command = Literal["bound", "sweep", "audit", "werner-threshold", "report", "game"]
OutFormat = Literal["csv", "json"]

# key=value tokens each verb accepts besides the state keys
RUN_KEYS: Dict[str, Tuple[str, ...]] = {
    "bound": ("obs",),
    "report": (),
    "game": ("obs",),
    "sweep": ("phi", "n"),
    "audit": ("n", "seed", "claims", "dims"),
    "werner-threshold": ("tol",),
}
STATEFUL = ("bound", "report", "game")
MIN_SWEEP_POINTS = 16


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    command: Command
    state_spec: Optional[StateSpec] = None
    observables: str = "Z,X"
    n_points: int = Field(512, description="sweep grid size")
    n_samples: int = Field(1000, description="audit samples per claim")
    phi: float = pi / 4
    seed: int = 42
    claims: Optional[List[ClaimId]] = None
    dims: Optional[Tuple[int, ...]] = None
    tol: float = 1e-6
    out_format: OutFormat = "csv"
    out_path: Optional[str] = None
    metadata: bool = True
    workers: int = WORKERS

    @field_validator("claims", mode="before")
    @classmethod
    def _split_claims(cls, v):
        if isinstance(v, str):
            return [c.strip().upper() for c in v.split(",") if c.strip()]
        return v

    @field_validator("dims", mode="before")
    @classmethod
    def _to_dims(cls, v):
        return parse_dims(v)

    @field_validator("phi", mode="before")
    @classmethod
    def _to_radians(cls, v):
        return parse_angle(v) if isinstance(v, str) else v

    @model_validator(mode="after")
    def _check(self):
        if self.n_points < 1 or self.n_samples < 1 or self.workers < 1:
            raise SpecParseError("n and workers must be positive")
        if self.command == "sweep" and self.n_points < MIN_SWEEP_POINTS:
            raise SpecParseError(f"sweep needs n >= {MIN_SWEEP_POINTS}, got {self.n_points}")
        if not self.tol > 0:
            raise SpecParseError(f"tol must be positive, got {self.tol}")
        if not 0 <= self.seed < 2**64:
            raise SpecParseError(f"seed {self.seed} is not a 64-bit unsigned integer")
        if self.command in STATEFUL and self.state_spec is None:
            raise SpecParseError(f"{self.command} needs a state, e.g. family=bell")
        return self

    @classmethod
    def from_tokens(cls, command: str, tokens, **options) -> "RunConfig":
        values = tokens_to_dict(tokens)
        allowed = set(RUN_KEYS[command]) | (set(STATE_KEYS) if command in STATEFUL else set())
        unknown = sorted(set(values) - allowed)
        if unknown:
            raise SpecParseError(f"{command} does not take: {', '.join(unknown)}")
        fields: Dict[str, object] = dict(options)
        if command in STATEFUL:
            state = {k: v for k, v in values.items() if k in STATE_KEYS}
            fields["state_spec"] = StateSpec.from_tokens(state) if state else None
        if "obs" in values:
            fields["observables"] = values["obs"]
        if "n" in values:
            fields["n_points" if command == "sweep" else "n_samples"] = values["n"]
        for key in ("phi", "seed", "claims", "dims", "tol"):
            if key in values and command not in STATEFUL:
                fields[key] = values[key]
        try:
            return cls(command=command, **fields)
        except ValidationError as e:
            first = e.errors()[0]
            where = ".".join(str(x) for x in first.get("loc", ())) or command
            raise SpecParseError(f"{where}: {first.get('msg')}")
