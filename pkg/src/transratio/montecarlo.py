"""Seeded Monte Carlo replication of SRSWOR for populations too large to enumerate."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .estimators import EstimatorKind, evaluate_batch
from .population import Population, TransformConfig
from .sampling import child_seeds, draw_indices, validate_reps
from .validation import check_design


@dataclass(frozen=True)
class MCReport:
    estimator: EstimatorKind
    reps: int
    seed: int
    mean: float
    variance: float  # reps - 1 denominator
    std_error_of_mean: float
    failed_reps: int = 0


def replicate_indices(N: int, n: int, seed: int, start: int, stop: int) -> np.ndarray:
    """Samples of replicates ``start .. stop-1`` as a ``(stop - start, n)`` array."""
    return draw_indices(N, n, child_seeds(seed, start, stop))


def _summarize(kind: EstimatorKind, vals: np.ndarray, reps: int, seed: int) -> MCReport:
    good = vals[np.isfinite(vals)]
    m = good.size
    nan = float("nan")
    mean = math.fsum(good.tolist()) / m if m else nan
    var = math.fsum(((good - mean) ** 2).tolist()) / (m - 1) if m >= 2 else nan
    se = math.sqrt(var / m) if m >= 2 else nan
    return MCReport(kind, reps, seed, mean, var, se, reps - m)


def simulate(
    pop: Population,
    n: int,
    kinds,
    config: TransformConfig | None = None,
    reps: int = 10_000,
    seed: int = 0,
    workers: int = 1,
    batch: int | None = None,
) -> list[MCReport]:
    """Run ``reps`` independent SRSWOR replicates and summarize each estimator.

    All estimators see the same sample in a given replicate. Replicate ``r``
    draws with child seed ``mix64(seed + (r+1) * GOLDEN)``, and moments are
    summed with ``math.fsum``, so the reports are identical for any ``workers``
    and ``batch``.
    """
    check_design(pop.N, n)
    reps = validate_reps(reps)
    kinds = [EstimatorKind(k) for k in kinds]
    if config is not None:
        config.check(pop)
    if batch is None:
        batch = max(1, min(reps, (1 << 21) // pop.N))

    values = {k: np.empty(reps, dtype=np.float64) for k in kinds}

    def run(start: int) -> None:
        stop = min(reps, start + batch)
        idx = replicate_indices(pop.N, n, seed, start, stop)
        for k, v in evaluate_batch(kinds, pop, idx, config).items():
            values[k][start:stop] = v

    starts = range(0, reps, batch)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, starts))
    else:
        for start in starts:
            run(start)

    return [_summarize(k, values[k], reps, seed) for k in kinds]
