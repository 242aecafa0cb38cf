"""Counter-based random streams."""

import numpy as np


def derive_generator(seed: int, *key: int) -> np.random.Generator:
    """Independent Philox generator for (seed, key); key is usually (stream, block)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=key)))


def block_sizes(total: int, block_size: int) -> list[int]:
    """Split `total` draws into fixed-size blocks, the last one possibly shorter."""
    full, rest = divmod(total, block_size)
    return [block_size] * full + ([rest] if rest else [])
