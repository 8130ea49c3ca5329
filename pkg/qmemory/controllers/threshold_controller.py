# qmemory/controllers/threshold_controller.py
import logging

from scipy.optimize import bisect

from ..errors import ParamOutOfRange
from ..schemas.claim_schema import WernerThreshold
from ..services.entropy import conditional_entropy
from ..services.states import make_werner

logger = logging.getLogger(__name__)


def werner_conditional_entropy(r: float) -> float:
    return conditional_entropy(make_werner(r), 0, 1)


def find_werner_threshold(tol: float = 1e-6, lower: float = 0.5, upper: float = 1.0) -> WernerThreshold:
    """Root of S(A|B) along the Werner line; S(A|B) < 0 above it."""
    if not tol > 0:
        raise ParamOutOfRange(f"tolerance must be positive, got {tol}")
    r_star, info = bisect(werner_conditional_entropy, lower, upper, xtol=tol, full_output=True)
    residual = abs(werner_conditional_entropy(r_star))
    logger.debug("werner threshold r*=%.12g after %d bisections, |S(A|B)|=%.3e", r_star, info.iterations, residual)
    return WernerThreshold(r_star=r_star, residual=residual, iterations=info.iterations, tol=tol)
