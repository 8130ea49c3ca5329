# qmemory/schemas/state_schema.py
from typing import Dict, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from ..errors import ParamOutOfRange, SpecParseError
from ..utils.angles import format_angle, parse_angle

Family = Literal[
    "bell",
    "ghz",
    "w_generalized",
    "eq12_mixed",
    "product",
    "werner",
    "qubit_qudit_factorized",
    "factorized_eq17",
    "haar_pure",
    "random_mixed",
]

# parameters each family accepts, in to_text order
FAMILY_PARAMS: Dict[str, Tuple[str, ...]] = {
    "bell": (),
    "ghz": ("dims",),
    "w_generalized": ("theta", "phi"),
    "eq12_mixed": ("theta", "phi"),
    "product": ("dims",),
    "werner": ("r",),
    "qubit_qudit_factorized": (),
    "factorized_eq17": ("p", "q"),
    "haar_pure": ("dims", "seed", "stream"),
    "random_mixed": ("dims", "rank", "seed", "stream"),
}
REQUIRED_PARAMS: Dict[str, Tuple[str, ...]] = {
    "w_generalized": ("theta", "phi"),
    "eq12_mixed": ("theta", "phi"),
    "werner": ("r",),
    "factorized_eq17": ("p", "q"),
    "haar_pure": ("seed",),
    "random_mixed": ("seed",),
}
STATE_KEYS = ("family", "theta", "phi", "r", "p", "q", "dims", "seed", "stream", "rank")


def parse_dims(v):
    if isinstance(v, str):
        parts = [x for x in v.replace("x", ",").split(",") if x.strip()]
        if not parts:
            raise SpecParseError(f"empty dims {v!r}")
        try:
            return tuple(int(x) for x in parts)
        except ValueError:
            raise SpecParseError(f"dims must be integers, got {v!r}")
    if isinstance(v, int):
        return (v,)
    return v


def tokens_to_dict(tokens) -> Dict[str, str]:
    out: Dict[str, str] = {}
    for tok in tokens:
        if "=" not in tok:
            raise SpecParseError(f"expected key=value, got {tok!r}")
        key, value = tok.split("=", 1)
        key = key.strip().lower()
        if not key or key in out:
            raise SpecParseError(f"empty or repeated key in {tok!r}")
        out[key] = value.strip()
    return out


class StateSpec(BaseModel):
    """A named state family plus its parameters; text form is `family=werner r=0.8`."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    family: Family
    theta: Optional[float] = None
    phi: Optional[float] = None
    r: Optional[float] = None
    p: Optional[float] = None
    q: Optional[float] = None
    dims: Optional[Tuple[int, ...]] = None
    seed: Optional[int] = None
    stream: int = 0
    rank: Optional[int] = None

    @field_validator("family", mode="before")
    @classmethod
    def _lower_family(cls, v):
        return v.strip().lower() if isinstance(v, str) else v

    @field_validator("theta", "phi", mode="before")
    @classmethod
    def _to_radians(cls, v):
        if isinstance(v, str):
            try:
                return parse_angle(v)
            except ValueError:
                raise SpecParseError(f"cannot read angle {v!r}")
        return v

    @field_validator("dims", mode="before")
    @classmethod
    def _to_dims(cls, v):
        return parse_dims(v)

    @field_validator("seed", "stream", "rank", mode="before")
    @classmethod
    def _to_int(cls, v):
        if isinstance(v, str):
            vv = v.strip()
            if vv.isdigit() or (vv.startswith("-") and vv[1:].isdigit()):
                return int(vv)
        return v

    @model_validator(mode="after")
    def _check_family(self):
        allowed = FAMILY_PARAMS[self.family]
        for key in ("theta", "phi", "r", "p", "q", "dims", "seed", "rank"):
            if getattr(self, key) is not None and key not in allowed:
                raise SpecParseError(f"family {self.family} takes no parameter {key!r}")
        if self.stream and "stream" not in allowed:
            raise SpecParseError(f"family {self.family} takes no parameter 'stream'")
        missing = [k for k in REQUIRED_PARAMS.get(self.family, ()) if getattr(self, k) is None]
        if missing:
            raise SpecParseError(f"family {self.family} needs {', '.join(missing)}")
        for key in ("r", "p", "q"):
            v = getattr(self, key)
            if v is not None and not 0.0 <= v <= 1.0:
                raise ParamOutOfRange(f"{key} = {v} is outside [0, 1]")
        if self.seed is not None and not 0 <= self.seed < 2**64:
            raise ParamOutOfRange(f"seed {self.seed} is not a 64-bit unsigned integer")
        if self.stream < 0:
            raise ParamOutOfRange(f"stream {self.stream} is negative")
        if self.rank is not None and self.rank < 1:
            raise ParamOutOfRange(f"rank {self.rank} must be at least 1")
        if self.dims is not None and any(d < 2 for d in self.dims):
            raise ParamOutOfRange(f"subsystem dimensions must be at least 2, got {self.dims}")
        return self

    @classmethod
    def from_tokens(cls, values: Dict[str, str]) -> "StateSpec":
        unknown = sorted(set(values) - set(STATE_KEYS))
        if unknown:
            raise SpecParseError(f"unknown state parameter(s): {', '.join(unknown)}")
        if "family" not in values:
            raise SpecParseError("state needs family=...")
        try:
            return cls(**values)
        except ValidationError as e:
            first = e.errors()[0]
            where = ".".join(str(x) for x in first.get("loc", ())) or "state"
            raise SpecParseError(f"{where}: {first.get('msg')}")

    @classmethod
    def parse(cls, text: str) -> "StateSpec":
        return cls.from_tokens(tokens_to_dict(text.split()))

    def to_text(self) -> str:
        parts = [f"family={self.family}"]
        for key in FAMILY_PARAMS[self.family]:
            v = getattr(self, key)
            if v is None or (key == "stream" and v == 0):
                continue
            if key in ("theta", "phi"):
                parts.append(f"{key}={format_angle(v)}")
            elif key == "dims":
                parts.append("dims=" + ",".join(str(d) for d in v))
            elif isinstance(v, float):
                parts.append(f"{key}={v!r}")
            else:
                parts.append(f"{key}={v}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_text()
