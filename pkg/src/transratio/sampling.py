"""SRSWOR sample generation: exhaustive enumeration and seeded draws.

Random draws use SplitMix64. A seed ``s`` defines the key stream
``mix64(s + (i + 1) * GOLDEN)`` for units ``i = 0..N-1``; the sample is the
set of ``n`` units with the smallest keys, which is uniform over all
``C(N, n)`` subsets. Replicate ``r`` of a seeded run uses the child seed
``mix64(seed + (r + 1) * GOLDEN)``. Both are pure functions, so results do not
depend on batching or on how work is split between threads.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterator

import numpy as np

from .errors import InvalidDesign, TooLarge
from .population import Population, Sample
from .validation import check_design

DEFAULT_CAP = 10**7

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK = (1 << 64) - 1


def mix64(z: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer, elementwise on a ``uint64`` array (wrapping)."""
    z = np.asarray(z, dtype=np.uint64)
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def _as_seed(seed: int) -> np.uint64:
    seed = int(seed)
    if not 0 <= seed <= _MASK:
        raise ValueError(f"seed must be an unsigned 64-bit integer (got {seed})")
    return np.uint64(seed)


def child_seeds(seed: int, start: int, stop: int) -> np.ndarray:
    """Child seeds for replicates ``start .. stop-1``."""
    r = np.arange(start + 1, stop + 1, dtype=np.uint64)
    return mix64(_as_seed(seed) + r * GOLDEN)


def child_seed(seed: int, r: int) -> int:
    return int(child_seeds(seed, r, r + 1)[0])


def draw_indices(N: int, n: int, seeds: np.ndarray) -> np.ndarray:
    """One canonical sample per seed: ``(len(seeds), n)`` array of sorted indices."""
    seeds = np.asarray(seeds, dtype=np.uint64).reshape(-1, 1)
    steps = np.arange(1, N + 1, dtype=np.uint64) * GOLDEN
    keys = mix64(seeds + steps)
    idx = np.argpartition(keys, n - 1, axis=1)[:, :n]
    idx.sort(axis=1)
    return idx


def draw_sample(pop: Population, n: int, seed: int) -> Sample:
    """Draw one SRSWOR sample of size ``n``, deterministic in ``seed``."""
    check_design(pop.N, n)
    idx = draw_indices(pop.N, n, np.array([_as_seed(seed)], dtype=np.uint64))[0]
    return Sample(tuple(idx.tolist()))


def n_subsets(N: int, n: int) -> int:
    return math.comb(N, n)


def check_cap(N: int, n: int, cap: int = DEFAULT_CAP) -> int:
    count = math.comb(N, n)
    if count > cap:
        raise TooLarge(count, cap)
    return count


def enumerate_samples(N: int, n: int, cap: int = DEFAULT_CAP) -> Iterator[Sample]:
    """Every ``n``-subset of ``range(N)`` exactly once, in lexicographic order.

    The size check runs eagerly, before iteration starts.
    """
    check_design(N, n)
    check_cap(N, n, cap)
    return (Sample(c) for c in itertools.combinations(range(N), n))


def subset_blocks(N: int, n: int, block: int = 65536, cap: int = DEFAULT_CAP) -> Iterator[np.ndarray]:
    """Lexicographic subsets as ``(k, n)`` integer arrays of at most ``block`` rows."""
    check_design(N, n)
    check_cap(N, n, cap)

    def gen():
        combos = itertools.combinations(range(N), n)
        while True:
            chunk = list(itertools.islice(combos, block))
            if not chunk:
                return
            yield np.array(chunk, dtype=np.intp)

    return gen()


def validate_reps(reps: int) -> int:
    if int(reps) != reps or reps < 2:
        raise InvalidDesign(f"reps must be an integer >= 2 (got {reps})")
    return int(reps)
