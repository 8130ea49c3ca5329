# qmemory/controllers/sweep_controller.py
"""S(A|B), D(B|A) and D(C|A) along the W-family purification, plus the derivative landmarks."""
import logging
from math import pi
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ParamOutOfRange
from ..schemas.claim_schema import CrossingBracket, SweepPoint
from ..services.correlations import measured_discord
from ..services.entropy import conditional_entropy
from ..services.linalg import density_from_pure
from ..services.states import make_w_purification
from ..utils.pool import ordered_map

logger = logging.getLogger(__name__)

MIN_POINTS = 16


def _sweep_values(job: Tuple[float, float]) -> Tuple[float, float, float]:
    theta_over_pi, phi = job
    rho = density_from_pure(make_w_purification(theta_over_pi * pi, phi))
    s_a_given_b = conditional_entropy(rho, 0, 1)
    d_b = measured_discord(rho, 0, 1).value
    d_c = measured_discord(rho, 0, 2).value
    return s_a_given_b, d_b, d_c


def sweep_w_family(
    phi: float = pi / 4,
    n_points: int = 512,
    workers: Optional[int] = None,
    progress: Optional[bool] = None,
) -> List[SweepPoint]:
    if n_points < MIN_POINTS:
        raise ParamOutOfRange(f"sweep needs at least {MIN_POINTS} points, got {n_points}")
    grid = np.linspace(0.0, 1.0, n_points)
    values = ordered_map(_sweep_values, [(float(x), phi) for x in grid], workers=workers, progress=progress, desc="sweep")
    s, d_b, d_c = (np.array(col) for col in zip(*values))
    # central differences inside, one-sided at the two ends
    dd_b = np.gradient(d_b, grid)
    dd_c = np.gradient(d_c, grid)
    logger.info("sweep phi=%.6f over %d points done", phi, n_points)
    return [
        SweepPoint(
            theta_over_pi=float(grid[i]),
            s_a_given_b=float(s[i]),
            d_b_given_a=float(d_b[i]),
            d_c_given_a=float(d_c[i]),
            ddb=float(dd_b[i]),
            ddc=float(dd_c[i]),
        )
        for i in range(n_points)
    ]


def locate_crossings(points: Sequence[SweepPoint]) -> List[CrossingBracket]:
    """Brackets where dS(A|B)/d(theta/pi) changes sign, in sweep order."""
    if len(points) < 3:
        return []
    x = np.array([p.theta_over_pi for p in points])
    slope = np.gradient(np.array([p.s_a_given_b for p in points]), x)
    brackets: List[CrossingBracket] = []
    # a slope of exactly zero sits inside the bracket of its nonzero neighbours
    live = np.flatnonzero(slope != 0)
    for i, j in zip(live, live[1:]):
        g0, g1 = slope[i], slope[j]
        if (g0 > 0) == (g1 > 0):
            continue
        estimate = x[i] - g0 * (x[j] - x[i]) / (g1 - g0)
        brackets.append(
            CrossingBracket(
                lower=float(x[i]),
                upper=float(x[j]),
                estimate=float(estimate),
                direction="+-" if g0 > 0 else "-+",
            )
        )
    return brackets


def landmark_crossing(points: Sequence[SweepPoint]) -> Optional[CrossingBracket]:
    """First place S(A|B) stops increasing."""
    return next((b for b in locate_crossings(points) if b.direction == "+-"), None)
