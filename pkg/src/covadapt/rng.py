"""Per-replication random streams.

Each replication gets a Philox counter-based generator keyed by
``(master_seed, replication_index)``, so any subset of replications can be
run in any order or thread and reproduce the serial results bit for bit.
"""
import numpy as np


def replication_rng(master_seed: int, index: int) -> np.random.Generator:
    if not 0 <= master_seed < 2 ** 64:
        raise ValueError("master seed must be a 64-bit unsigned integer")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([master_seed, index])))


def map_replications(fn, indices, threads: int = 1):
    """``[fn(i) for i in indices]``, optionally on a thread pool; order is kept."""
    indices = list(indices)
    if threads <= 1:
        return [fn(i) for i in indices]
    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, indices))
