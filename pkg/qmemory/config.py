# qmemory/config.py
from dotenv import load_dotenv
import os

load_dotenv()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise RuntimeError(f"{name} must be an integer, got {raw!r}")


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return float(raw)
    except ValueError:
        raise RuntimeError(f"{name} must be a number, got {raw!r}")


def _env_flag(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw is None:
        return default
    return raw.strip().lower() in ("1", "true", "yes", "on")


VERSION = "1.0.0"
SCHEMA_VERSION = 1

# Tolerance tiers (bits)
TAU_EXACT = 1e-9          # closed-form quantities: entropies, E_f
TAU_OPT = 2e-3            # anything that goes through the measurement optimizer
TAU_EQ1 = 1e-7            # uncertainty-bound slack floor on random states

EIG_CLIP = 1e-10          # eigenvalues in [-EIG_CLIP, 0) are clipped to 0
RANK_CUTOFF = 1e-12       # purification keeps eigenpairs above this
OUTCOME_CUTOFF = 1e-12    # measurement outcomes below this contribute nothing
MAX_TOTAL_DIM = 64

# Measurement optimizer
GRID_THETA = _env_int("QMEM_GRID_THETA", 64)
GRID_PHI = _env_int("QMEM_GRID_PHI", 128)
SIMPLEX_XATOL = _env_float("QMEM_SIMPLEX_XATOL", 1e-6)
SIMPLEX_MAXITER = _env_int("QMEM_SIMPLEX_MAXITER", 500)

# Runtime
LOG_LEVEL = (os.getenv("QMEM_LOG_LEVEL") or "WARNING").strip().upper()
WORKERS = _env_int("QMEM_WORKERS", 1)
PROGRESS = _env_flag("QMEM_PROGRESS", False)

if GRID_THETA < 2 or GRID_PHI < 2:
    raise RuntimeError("QMEM_GRID_THETA and QMEM_GRID_PHI must be at least 2")
if WORKERS < 1:
    raise RuntimeError("QMEM_WORKERS must be at least 1")
