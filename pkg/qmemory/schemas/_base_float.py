from typing import Any

import numpy as np
from pydantic import BaseModel, model_serializer

SIG_DIGITS = 12


def to_sig_digits(v: Any) -> float:
    # round-trip through the 12-digit text form so output is byte-stable
    out = float(format(float(v), f".{SIG_DIGITS}g"))
    return 0.0 if out == 0 else out


def _round_floats(v: Any):
    if isinstance(v, bool):
        return v
    if isinstance(v, (float, np.floating)):
        return to_sig_digits(v)
    if isinstance(v, list):
        return [_round_floats(x) for x in v]
    if isinstance(v, tuple):
        return tuple(_round_floats(x) for x in v)
    if isinstance(v, dict):
        return {k: _round_floats(val) for k, val in v.items()}
    return v


class SigFigModel(BaseModel):
    """Serialize ALL float fields (including nested lists/dicts) with 12 significant digits."""

    @model_serializer(mode="wrap")
    def _serialize(self, handler):
        data = handler(self)
        return _round_floats(data)
