"""Exact SRSWOR sampling distributions by exhaustive enumeration."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .estimators import EstimatorKind, SampleStats, evaluate_batch
from .population import Population, TransformConfig, summarize
from .sampling import DEFAULT_CAP, subset_blocks
from .validation import check_design


@dataclass(frozen=True, eq=False)
class ExactDistribution:
    """All estimator values over the ``C(N, n)`` subsets (lexicographic order).

    Moments treat the subsets as a complete population (divide by their count)
    and use ``math.fsum``, so they do not depend on summation order. Subsets on
    which the estimator is undefined are dropped and counted in
    ``failed_samples``.
    """

    estimator: EstimatorKind
    values: np.ndarray
    mean: float
    variance: float
    bias: float
    mse: float
    failed_samples: int
    Ybar: float

    @property
    def n_subsets(self) -> int:
        return self.values.size + self.failed_samples


@dataclass(frozen=True)
class UnbiasednessCheck:
    passed: bool
    bias: float
    tol: float
    failed_samples: int = 0

    def __bool__(self) -> bool:
        return self.passed


def _moments(values: np.ndarray, target: float) -> tuple[float, float, float, float]:
    m = values.size
    if m == 0:
        nan = float("nan")
        return nan, nan, nan, nan
    mean = math.fsum(values.tolist()) / m
    variance = math.fsum(((values - mean) ** 2).tolist()) / m
    mse = math.fsum(((values - target) ** 2).tolist()) / m
    return mean, variance, mean - target, mse


def _enumerate_values(pop, n, kinds, config, cap):
    check_design(pop.N, n)
    if config is not None:
        config.check(pop)
    chunks = {k: [] for k in kinds}
    for idx in subset_blocks(pop.N, n, cap=cap):
        for k, vals in evaluate_batch(kinds, pop, idx, config).items():
            chunks[k].append(np.asarray(vals, dtype=np.float64))
    return {k: np.concatenate(v) for k, v in chunks.items()}


def exact_distributions(
    pop: Population,
    n: int,
    kinds,
    config: TransformConfig | None = None,
    cap: int = DEFAULT_CAP,
) -> dict[EstimatorKind, ExactDistribution]:
    """Exact distributions of several estimators from one pass over the subsets."""
    kinds = [EstimatorKind(k) for k in kinds]
    Ybar = pop.Ybar
    out = {}
    for kind, vals in _enumerate_values(pop, n, kinds, config, cap).items():
        ok = np.isfinite(vals)
        failed = int(vals.size - ok.sum())
        if failed:
            warnings.warn(
                f"{kind.value}: undefined on {failed} of {vals.size} subsets; "
                "moments exclude them and are not a design expectation",
                RuntimeWarning,
                stacklevel=2,
            )
        good = vals[ok]
        mean, var, bias, mse = _moments(good, Ybar)
        out[kind] = ExactDistribution(kind, good, mean, var, bias, mse, failed, Ybar)
    return out


def exact_distribution(
    pop: Population,
    n: int,
    kind: EstimatorKind,
    config: TransformConfig | None = None,
    cap: int = DEFAULT_CAP,
) -> ExactDistribution:
    return exact_distributions(pop, n, [kind], config, cap)[EstimatorKind(kind)]


def verify_unbiased(
    pop: Population,
    n: int,
    kind: EstimatorKind,
    config: TransformConfig | None = None,
    tol: float = 1e-12,
    cap: int = DEFAULT_CAP,
) -> UnbiasednessCheck:
    """Passes iff the exact design mean is within ``tol * max(1, |Ybar|)`` of ``Ybar``.

    Any undefined subset makes the check fail.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        dist = exact_distribution(pop, n, kind, config, cap)
    return judge_unbiased(dist, tol)


def judge_unbiased(dist: ExactDistribution, tol: float) -> UnbiasednessCheck:
    bound = tol * max(1.0, abs(dist.Ybar))
    passed = dist.failed_samples == 0 and abs(dist.bias) <= bound
    return UnbiasednessCheck(passed, dist.bias, tol, dist.failed_samples)


def exact_suv_unbiasedness(
    pop: Population,
    n: int,
    config: TransformConfig,
    tol: float = 1e-12,
    cap: int = DEFAULT_CAP,
) -> UnbiasednessCheck:
    """Check that ``n/(n-1) * (ybar - ubar*vbar)`` averages to ``S_uv`` over all subsets."""
    check_design(pop.N, n)
    config.check(pop)
    Suv = summarize(pop, n, config).Suv
    parts = []
    for idx in subset_blocks(pop.N, n, cap=cap):
        s = SampleStats.from_arrays(pop.x[idx], pop.y[idx], N=pop.N, Xbar=pop.Xbar, L=config.L)
        parts.append(n / (n - 1) * (s.ybar - s.ubar * s.vbar))
    vals = np.concatenate(parts)
    mean = math.fsum(vals.tolist()) / vals.size
    diff = mean - Suv
    return UnbiasednessCheck(abs(diff) <= tol * max(1.0, abs(Suv)), diff, tol)
