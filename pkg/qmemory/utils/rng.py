"""
Seeded random streams.

Every sample draws from its own generator keyed by (master_seed, stream), so
a batch gives the same states whether it runs serially or across processes.
"""
import numpy as np

GENERATOR_NAME = "philox-v1"


def stream_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator for sample `stream` of the run seeded with `seed`."""
    if seed < 0 or stream < 0:
        raise ValueError(f"seed and stream must be non-negative, got {seed}, {stream}")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(stream)])))


def complex_gaussian(rng: np.random.Generator, size) -> np.ndarray:
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)
