"""Block scheduling for the worker pool."""

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

import numpy as np

from app.mc_engine.schemas import SimConfig
from app.mc_engine.streams import block_sizes, derive_generator

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def map_ordered(func: Callable[[T], R], items: Sequence[T], threads: int) -> list[R]:
    """Apply func to every item, results in item order whatever the worker count."""
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))


def run_blocks(
    job: Callable[[np.random.Generator, int], R], paths: int, cfg: SimConfig, stream: int
) -> list[R]:
    """
    Run `job(rng, size)` on every block of `paths`.

    Block b draws from the stream (cfg.seed, stream, b).
    """
    sizes = block_sizes(paths, cfg.block_size)
    logger.debug(f"Scheduling {len(sizes)} blocks of stream {stream} on {cfg.threads} threads")

    def work(block: int) -> R:
        return job(derive_generator(cfg.seed, stream, block), sizes[block])

    results = map_ordered(work, range(len(sizes)), cfg.threads)
    logger.debug(f"Stream {stream} finished")
    return results
