# qmemory/utils/pool.py
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

from tqdm import tqdm

from ..config import PROGRESS, WORKERS

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(
    fn: Callable[[T], R],
    jobs: Sequence[T],
    workers: Optional[int] = None,
    progress: Optional[bool] = None,
    desc: str = "",
) -> List[R]:
    """fn over jobs, results in job order whatever finishes first. fn must be a module-level function."""
    workers = WORKERS if workers is None else workers
    progress = PROGRESS if progress is None else progress
    if workers > 1 and len(jobs) > 1:
        chunk = max(1, len(jobs) // (4 * workers))
        logger.info("%s: %d jobs on %d workers", desc or "map", len(jobs), workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(tqdm(pool.map(fn, jobs, chunksize=chunk), total=len(jobs), desc=desc, disable=not progress))
    return [fn(job) for job in tqdm(jobs, desc=desc, disable=not progress)]
