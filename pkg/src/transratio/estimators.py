"""Point estimators of the population mean from one SRSWOR sample.

Every estimator works on a :class:`SampleStats` whose fields are either
floats (a single sample) or arrays (a batch of samples, one per row). In the
scalar case an undefined estimate raises; in the batch case it comes out as
NaN/inf and the caller counts it as a failed sample.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTransform, DivisionByZero, InvalidDesign, MissingParam
from .population import Population, Sample, TransformConfig


class EstimatorKind(str, enum.Enum):
    SAMPLE_MEAN = "ybar"
    PRODUCT_D1 = "d1"
    DUAL_PRODUCT_D2 = "d2"
    ROBSON_D1U = "d1u"
    DUAL_UNBIASED_D2U = "d2u"
    HARTLEY_ROSS_D3U = "d3u"
    TRANSFORMED_RATIO_DSTAR = "dstar"
    UNBIASED_DU = "du"
    PLAIN_D = "d"
    # d2u with correction coefficient (N-1)/(N(n-1)), i.e. missing the factor n.
    # Biased; kept so the enumeration oracle can demonstrate it.
    D2U_SHORT_COEF = "d2u_short"

    @property
    def needs_L(self) -> bool:
        return self in _NEEDS_L

    @classmethod
    def parse(cls, name: str) -> EstimatorKind:
        key = name.strip()
        for kind in cls:
            if key == kind.value or key.upper() == kind.name:
                return kind
        raise ValueError(f"unknown estimator {name!r} (choose from {', '.join(k.value for k in cls)})")

    def __str__(self) -> str:
        return self.value


_NEEDS_L = frozenset(
    {EstimatorKind.TRANSFORMED_RATIO_DSTAR, EstimatorKind.UNBIASED_DU, EstimatorKind.PLAIN_D}
)

# estimators shown by default (the short-coefficient variant is opt-in)
STANDARD_KINDS = tuple(k for k in EstimatorKind if k is not EstimatorKind.D2U_SHORT_COEF)


def _rowmean(a: np.ndarray):
    m = np.mean(a, axis=-1)
    return float(m) if np.ndim(m) == 0 else m


def _nan_where_zero(mean, denominators: np.ndarray):
    bad = np.any(denominators == 0, axis=-1)
    if np.ndim(bad) == 0:
        return float("nan") if bad else mean
    return np.where(bad, np.nan, mean)


@dataclass(frozen=True)
class SampleStats:
    """Sample means used by the estimators.

    ``rbar`` averages ``y_i / x_i``, ``rstar_bar`` averages ``y_i / x*_i`` and
    ``vbar`` averages ``v_i = y_i / u_i``; each is NaN when one of its
    denominators is zero. ``ubar``/``vbar`` are ``None`` without ``L``.
    """

    n: int
    xbar: float | np.ndarray
    ybar: float | np.ndarray
    pbar: float | np.ndarray
    rbar: float | np.ndarray
    rstar_bar: float | np.ndarray
    xstar_bar: float | np.ndarray
    ubar: float | np.ndarray | None = None
    vbar: float | np.ndarray | None = None

    @classmethod
    def from_arrays(cls, x, y, *, N: int, Xbar: float, L: float | None = None) -> SampleStats:
        """Stats from sampled values; ``x``/``y`` are ``(n,)`` or ``(batch, n)``."""
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        if x.shape != y.shape:
            raise ValueError(f"x and y shapes differ: {x.shape} != {y.shape}")
        n = x.shape[-1]
        if n < 2:
            raise InvalidDesign(f"a sample needs at least 2 units (got {n})")
        if n >= N:
            raise InvalidDesign(f"sample size must be below N (got n={n}, N={N})")
        with np.errstate(divide="ignore", invalid="ignore"):
            xbar = _rowmean(x)
            xs = (N * Xbar - n * x) / (N - n)
            ubar = vbar = None
            if L is not None:
                u = L - x
                ubar = _rowmean(u)
                vbar = _nan_where_zero(_rowmean(y / u), u)
            return cls(
                n=n,
                xbar=xbar,
                ybar=_rowmean(y),
                pbar=_rowmean(x * y),
                rbar=_nan_where_zero(_rowmean(y / x), x),
                rstar_bar=_nan_where_zero(_rowmean(y / xs), xs),
                xstar_bar=(N * Xbar - n * xbar) / (N - n),
                ubar=ubar,
                vbar=vbar,
            )

    @classmethod
    def from_sample(cls, pop: Population, sample: Sample, config: TransformConfig | None = None) -> SampleStats:
        if config is not None:
            config.check(pop)
        x, y = pop.take(sample)
        return cls.from_arrays(x, y, N=pop.N, Xbar=pop.Xbar, L=None if config is None else config.L)


def _scalar_guard(value, exc: type[Exception], message: str):
    """Raise for an undefined single-sample value; pass arrays through."""
    if np.ndim(value) == 0:
        if not np.isfinite(value):
            raise exc(message)
        return float(value)
    return value


def _require_L(s: SampleStats, name: str) -> None:
    if s.ubar is None or s.vbar is None:
        raise MissingParam("L", name)


def correction_coef(N: int, n: int) -> float:
    """``n(N-1) / (N(n-1))``, the bias-correction multiplier."""
    if n < 2:
        raise InvalidDesign(f"bias correction needs n >= 2 (got n={n})")
    return n * (N - 1) / (N * (n - 1))


def sample_mean(s: SampleStats):
    return s.ybar


def product_d1(s: SampleStats, Xbar: float):
    """Product estimator ``ybar * xbar / Xbar``."""
    if Xbar == 0:
        raise DivisionByZero("product estimator needs Xbar != 0")
    return s.ybar * s.xbar / Xbar


def dual_product_d2(s: SampleStats, Xbar: float):
    """Dual-to-product estimator ``ybar * Xbar / xbar*``."""
    with np.errstate(divide="ignore", invalid="ignore"):
        value = np.divide(s.ybar * Xbar, s.xstar_bar)
    return _scalar_guard(value, DivisionByZero, "dual product estimator: xbar* is zero")


def robson_d1u(s: SampleStats, Xbar: float, N: int, n: int):
    """Unbiased product-type estimator (Robson)."""
    if Xbar == 0:
        raise DivisionByZero("Robson estimator needs Xbar != 0")
    if n < 2:
        raise InvalidDesign(f"Robson estimator needs n >= 2 (got n={n})")
    a = n * (N - 1) / (N * (n - 1))
    b = (N - n) / (N * (n - 1))
    return a * s.ybar * s.xbar / Xbar - b * s.pbar / Xbar


def dual_unbiased_d2u(s: SampleStats, Xbar: float, N: int, n: int):
    """Hartley-Ross type estimator built on the dual variable ``x*``."""
    c = correction_coef(N, n)
    rs = _scalar_guard(s.rstar_bar, DivisionByZero, "some sampled x*_i is zero")
    return rs * Xbar + c * (s.ybar - rs * s.xstar_bar)


def dual_unbiased_d2u_short(s: SampleStats, Xbar: float, N: int, n: int):
    """As :func:`dual_unbiased_d2u` but with coefficient ``(N-1)/(N(n-1))``. Biased."""
    if n < 2:
        raise InvalidDesign(f"needs n >= 2 (got n={n})")
    c = (N - 1) / (N * (n - 1))
    rs = _scalar_guard(s.rstar_bar, DivisionByZero, "some sampled x*_i is zero")
    return rs * Xbar + c * (s.ybar - rs * s.xstar_bar)


def hartley_ross_d3u(s: SampleStats, Xbar: float, N: int, n: int):
    """Classical Hartley-Ross unbiased ratio estimator."""
    c = correction_coef(N, n)
    r = _scalar_guard(s.rbar, DivisionByZero, "some sampled x_i is zero")
    return r * Xbar + c * (s.ybar - r * s.xbar)


def dstar(s: SampleStats, Ubar: float):
    """Ratio estimator on the transformed variable: ``ybar * Ubar / ubar``."""
    _require_L(s, "dstar")
    with np.errstate(divide="ignore", invalid="ignore"):
        value = np.divide(s.ybar * Ubar, s.ubar)
    return _scalar_guard(value, DivisionByZero, "dstar: sample mean of u is zero")


def plain_d(s: SampleStats, Ubar: float):
    """``vbar * Ubar``; biased by ``-(N-1)/N * S_uv``."""
    _require_L(s, "plain_d")
    vbar = _scalar_guard(s.vbar, DegenerateTransform, "some sampled u_i is zero")
    return vbar * Ubar


def bias_hat(s: SampleStats, N: int, n: int):
    """Unbiased estimate of the bias of :func:`plain_d`."""
    _require_L(s, "bias_hat")
    c = correction_coef(N, n)
    vbar = _scalar_guard(s.vbar, DegenerateTransform, "some sampled u_i is zero")
    return -c * (s.ybar - s.ubar * vbar)


def unbiased_du(s: SampleStats, Ubar: float, N: int, n: int):
    """Unbiased ratio-type estimator ``vbar*Ubar + c*(ybar - ubar*vbar)``.

    Computed as ``plain_d - bias_hat`` so the decomposition holds bit for bit.
    """
    return plain_d(s, Ubar) - bias_hat(s, N, n)


def evaluate(kind: EstimatorKind, s: SampleStats, *, N: int, Xbar: float, L: float | None = None):
    """Dispatch on ``kind``; ``n`` is taken from ``s``."""
    kind = EstimatorKind(kind)
    n = s.n
    if kind.needs_L and L is None:
        raise MissingParam("L", kind.value)
    if kind is EstimatorKind.SAMPLE_MEAN:
        return sample_mean(s)
    if kind is EstimatorKind.PRODUCT_D1:
        return product_d1(s, Xbar)
    if kind is EstimatorKind.DUAL_PRODUCT_D2:
        return dual_product_d2(s, Xbar)
    if kind is EstimatorKind.ROBSON_D1U:
        return robson_d1u(s, Xbar, N, n)
    if kind is EstimatorKind.DUAL_UNBIASED_D2U:
        return dual_unbiased_d2u(s, Xbar, N, n)
    if kind is EstimatorKind.D2U_SHORT_COEF:
        return dual_unbiased_d2u_short(s, Xbar, N, n)
    if kind is EstimatorKind.HARTLEY_ROSS_D3U:
        return hartley_ross_d3u(s, Xbar, N, n)
    if kind is EstimatorKind.TRANSFORMED_RATIO_DSTAR:
        return dstar(s, L - Xbar)
    if kind is EstimatorKind.PLAIN_D:
        return plain_d(s, L - Xbar)
    return unbiased_du(s, L - Xbar, N, n)


def estimate(pop: Population, sample: Sample, kind: EstimatorKind, config: TransformConfig | None = None) -> float:
    """Single-sample estimate of the population mean of ``y``."""
    kind = EstimatorKind(kind)
    if kind.needs_L and config is None:
        raise MissingParam("L", kind.value)
    s = SampleStats.from_sample(pop, sample, config if kind.needs_L else None)
    return float(evaluate(kind, s, N=pop.N, Xbar=pop.Xbar, L=None if config is None else config.L))


def evaluate_batch(
    kinds, pop: Population, indices: np.ndarray, config: TransformConfig | None = None
) -> dict[EstimatorKind, np.ndarray]:
    """Evaluate several estimators on the same ``(batch, n)`` index matrix.

    Undefined estimates are returned as non-finite values.
    """
    kinds = [EstimatorKind(k) for k in kinds]
    L = None if config is None else config.L
    if any(k.needs_L for k in kinds) and L is None:
        raise MissingParam("L", ", ".join(k.value for k in kinds if k.needs_L))
    if config is not None:
        config.check(pop)
    s = SampleStats.from_arrays(pop.x[indices], pop.y[indices], N=pop.N, Xbar=pop.Xbar, L=L)
    Xbar = pop.Xbar
    out = {}
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for k in kinds:
            if k in (EstimatorKind.PRODUCT_D1, EstimatorKind.ROBSON_D1U) and Xbar == 0:
                out[k] = np.full(indices.shape[0], np.nan)
                continue
            out[k] = np.broadcast_to(evaluate(k, s, N=pop.N, Xbar=Xbar, L=L), (indices.shape[0],))
    return out


def correlation_warning(kind: EstimatorKind, rho: float) -> str | None:
    """Flag use outside the correlation sign each estimator is designed for."""
    kind = EstimatorKind(kind)
    if kind in (EstimatorKind.UNBIASED_DU, EstimatorKind.DUAL_UNBIASED_D2U) and rho >= 0:
        return f"population rho={rho:.4g} >= 0; estimator targets negative correlation"
    if kind is EstimatorKind.HARTLEY_ROSS_D3U and rho <= 0:
        return f"population rho={rho:.4g} <= 0; estimator targets positive correlation"
    return None
