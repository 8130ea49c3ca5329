# qmemory/utils/angles.py
import re
from math import pi

_PI_SUFFIX = re.compile(r"^\s*([+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*pi\s*$", re.IGNORECASE)


def parse_angle(text) -> float:
    """Radians from '0.7', '0.25pi', 'pi' or '-1.5*pi'."""
    if isinstance(text, (int, float)):
        return float(text)
    s = str(text).strip()
    m = _PI_SUFFIX.match(s)
    if m:
        coeff = m.group(1)
        return (float(coeff) if coeff else 1.0) * pi
    return float(s)


def format_angle(value: float) -> str:
    """Inverse of parse_angle for values that are a short multiple of pi."""
    ratio = value / pi
    short = format(ratio, ".12g")
    if abs(float(short) * pi - value) <= 1e-15 * max(1.0, abs(value)) and len(short) <= 8:
        return f"{short}pi"
    return repr(float(value))
