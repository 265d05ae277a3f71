"""Closed-form biases, first-order variances, efficiency regions and optimal L.

Every first-order variance here has the shape

    (1 - f)/n * (Sy2 + a**2 * Sx2 + 2 * a * rho * Sy * Sx)

with a per-estimator coefficient ``a``: ``R`` for the unbiased product
estimator, ``Rstar_bar * g`` for the dual-variable Hartley-Ross estimator,
``theta * R`` for the transformed ratio estimator and ``Vbar`` for the
unbiased transformed estimator. Comparisons between estimators therefore
reduce to comparing ``a**2 + 2*a*beta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BracketFailure, DivisionByZero, MissingParam, NoSolution, UnsupportedEstimator
from .estimators import EstimatorKind
from .population import SummaryParams, fmean


@dataclass(frozen=True)
class VarianceReport:
    estimator: EstimatorKind
    variance: float
    order: str  # "exact" or "first-order"
    vbar_source: str | None = None


def _coefficient(kind: EstimatorKind, p: SummaryParams) -> float | None:
    """Coefficient ``a`` of the shared variance form; ``None`` for the sample mean."""
    if kind is EstimatorKind.SAMPLE_MEAN:
        return None
    if kind in (EstimatorKind.ROBSON_D1U, EstimatorKind.PRODUCT_D1):
        return p.R
    if kind in (EstimatorKind.DUAL_UNBIASED_D2U, EstimatorKind.DUAL_PRODUCT_D2):
        if p.Rstar_bar is None:
            raise MissingParam("Rstar_bar", kind.value)
        return p.Rstar_bar * p.g
    if kind is EstimatorKind.TRANSFORMED_RATIO_DSTAR:
        if p.L is None:
            raise MissingParam("L", kind.value)
        return p.theta * p.R
    if kind in (EstimatorKind.UNBIASED_DU, EstimatorKind.PLAIN_D):
        if p.Vbar is None:
            raise MissingParam("Vbar", kind.value)
        return p.Vbar
    if kind is EstimatorKind.HARTLEY_ROSS_D3U:
        # the L = 0 member of the transformed family: Vbar = -mean(y/x)
        if p.population is None:
            raise MissingParam("population", kind.value)
        x, y = p.population.x, p.population.y
        if np.any(x == 0):
            raise DivisionByZero("Hartley-Ross variance needs every x_i != 0")
        return -fmean(y / x)
    raise UnsupportedEstimator(f"no first-order variance for {kind.value}")


def variance_from_coefficient(p: SummaryParams, a: float) -> float:
    """``(1-f)/n * (Sy2 + a^2 Sx2 + 2 a rho Sy Sx)``, clipped at zero."""
    bracket = p.Sy2 + a * a * p.Sx2 + 2.0 * a * p.rho * p.Sy * p.Sx
    return max(0.0, p.fpc * bracket)


def variance_first_order(kind: EstimatorKind, p: SummaryParams) -> VarianceReport:
    """Design variance of ``kind``: exact for the sample mean, first order otherwise."""
    kind = EstimatorKind(kind)
    a = _coefficient(kind, p)
    if a is None:
        return VarianceReport(kind, p.fpc * p.Sy2, "exact")
    source = p.vbar_source if kind in (EstimatorKind.UNBIASED_DU, EstimatorKind.PLAIN_D) else None
    return VarianceReport(kind, variance_from_coefficient(p, a), "first-order", source)


def bias_first_order_dstar(p: SummaryParams) -> float:
    """First-order bias ``(1-f)/n * Ybar * theta * Cx^2 * (theta + K)`` of the transformed ratio."""
    if p.L is None:
        raise MissingParam("L", "dstar bias")
    theta = p.theta
    return p.fpc * p.Ybar * theta * p.Cx**2 * (theta + p.K)


def bias_exact_plain_d(p: SummaryParams) -> float:
    """Exact design bias ``-(N-1)/N * S_uv`` of ``vbar * Ubar``."""
    if p.Suv is None:
        raise MissingParam("Suv", "exact bias of plain d")
    return -((p.N - 1) / p.N) * p.Suv


def min_variance_du(p: SummaryParams) -> float:
    """Smallest first-order variance of the unbiased transformed estimator (at ``Vbar = -beta``)."""
    return p.fpc * p.Sy2 * (1.0 - p.rho**2)


def relative_efficiency(var_a: float, var_b: float) -> float:
    """Percent efficiency of candidate ``a`` over baseline ``b``: ``100 * var_b / var_a``."""
    if var_a == 0:
        raise DivisionByZero("candidate variance is zero")
    if var_a < 0 or var_b < 0:
        raise ValueError("variances must be non-negative")
    return 100.0 * var_b / var_a


@dataclass(frozen=True)
class EfficiencyReport:
    """Relative efficiencies of the unbiased transformed estimator at one ``L``.

    Boolean fields are the region conditions; ``margins`` holds the signed
    slack of each (positive means the condition holds). The ``*_high`` /
    ``*_low`` pairs are the two branches of a comparison, split on whether
    ``Vbar`` exceeds the competitor's coefficient.
    """

    L: float
    Vbar: float
    vbar_source: str
    var_du: float
    re_vs_ybar: float
    re_vs_d1u: float
    re_vs_d2u: float | None
    beats_ybar: bool
    beats_d1u_high: bool
    beats_d1u_low: bool
    ybar_d1u_band: bool
    beats_ybar_and_d1u: bool
    beats_d2u_high: bool | None
    beats_d2u_low: bool | None
    beats_d2u: bool | None
    beats_dstar: bool
    margins: dict[str, float] = field(default_factory=dict)


def _branch_margins(beta: float, vbar: float, a: float) -> tuple[float, float]:
    """Margins of ``V(du) < V(competitor)`` for ``Vbar > a`` and ``Vbar < a``."""
    mid = -(a + vbar) / 2.0
    return min(vbar - a, mid - beta), min(a - vbar, beta - mid)


def efficiency_conditions(p: SummaryParams, L: float | None = None, vbar: str | None = None) -> EfficiencyReport:
    """Evaluate relative efficiencies and all region conditions.

    Args:
        p: summary constants, optionally already bound to ``L``.
        L: transformation constant; overrides any ``L`` bound in ``p``.
        vbar: ``"exact"``/``"approx"`` passed to :meth:`SummaryParams.at_L`.

    The conditions mirror the published inequalities:

    * ``beats_ybar``: ``beta < -Vbar/2``
    * ``beats_d1u_high``: ``beta < -(R/2)(1 + Vbar/R)`` with ``Vbar > R``
    * ``beats_d1u_low``: ``beta > -(R/2)(1 + Vbar/R)`` with ``Vbar < R``
    * ``ybar_d1u_band``: the two-sided band ``-(R/2)(1 + Vbar/R) < beta < -Vbar/2``
      as printed, without the ``Vbar < R`` side condition
    * ``beats_ybar_and_d1u``: ``beats_ybar`` and either d1u branch
    * ``beats_d2u_high``: ``beta < -(R*/2)(g + Vbar/R*)`` with ``g < Vbar/R*``
    * ``beats_d2u_low``: the mirrored branch; ``beats_d2u`` is their union
    * ``beats_dstar``: ``(theta R + beta)^2 > (Vbar + beta)^2``

    ``beats_ybar`` presumes ``Vbar > 0`` (``L`` above the data).
    """
    if L is not None:
        p = p.at_L(L, vbar)
    elif p.Vbar is None:
        raise MissingParam("L", "efficiency_conditions")
    beta, vb, R = p.beta, p.Vbar, p.R

    var_ybar = variance_first_order(EstimatorKind.SAMPLE_MEAN, p).variance
    var_d1u = variance_first_order(EstimatorKind.ROBSON_D1U, p).variance
    var_du = variance_first_order(EstimatorKind.UNBIASED_DU, p).variance

    m = {"beats_ybar": -vb / 2.0 - beta}
    m["beats_d1u_high"], m["beats_d1u_low"] = _branch_margins(beta, vb, R)
    m["ybar_d1u_band"] = min(beta + (R + vb) / 2.0, -vb / 2.0 - beta)
    m["beats_ybar_and_d1u"] = min(m["beats_ybar"], max(m["beats_d1u_high"], m["beats_d1u_low"]))

    re_d2u = d2_high = d2_low = d2 = None
    if p.Rstar_bar is not None:
        a2 = p.Rstar_bar * p.g
        var_d2u = variance_first_order(EstimatorKind.DUAL_UNBIASED_D2U, p).variance
        re_d2u = relative_efficiency(var_du, var_d2u) if var_du > 0 else math.inf
        if p.Rstar_bar != 0:
            bound = -(p.Rstar_bar / 2.0) * (p.g + vb / p.Rstar_bar)
            m["beats_d2u_high"] = min(vb / p.Rstar_bar - p.g, bound - beta)
            m["beats_d2u_low"] = min(p.g - vb / p.Rstar_bar, beta - bound)
        else:
            m["beats_d2u_high"], m["beats_d2u_low"] = _branch_margins(beta, vb, a2)
        m["beats_d2u"] = max(m["beats_d2u_high"], m["beats_d2u_low"])
        d2_high, d2_low, d2 = (m[k] > 0 for k in ("beats_d2u_high", "beats_d2u_low", "beats_d2u"))

    m["beats_dstar"] = (p.theta * R + beta) ** 2 - (vb + beta) ** 2

    def re(base):
        return relative_efficiency(var_du, base) if var_du > 0 else math.inf

    return EfficiencyReport(
        L=p.L,
        Vbar=vb,
        vbar_source=p.vbar_source,
        var_du=var_du,
        re_vs_ybar=re(var_ybar),
        re_vs_d1u=re(var_d1u),
        re_vs_d2u=re_d2u,
        beats_ybar=m["beats_ybar"] > 0,
        beats_d1u_high=m["beats_d1u_high"] > 0,
        beats_d1u_low=m["beats_d1u_low"] > 0,
        ybar_d1u_band=m["ybar_d1u_band"] > 0,
        beats_ybar_and_d1u=m["beats_ybar_and_d1u"] > 0,
        beats_d2u_high=d2_high,
        beats_d2u_low=d2_low,
        beats_d2u=d2,
        beats_dstar=m["beats_dstar"] > 0,
        margins=m,
    )


def exact_vbar(p: SummaryParams, L: float) -> float:
    """Population mean of ``y_i / (L - x_i)``; needs raw data."""
    if p.population is None:
        raise MissingParam("population", "exact Vbar")
    return math.fsum((p.population.y / (L - p.population.x)).tolist()) / p.N


def optimal_L(p: SummaryParams, mode: str = "approx", tol: float = 1e-10, max_iter: int = 400) -> float:
    """Transformation constant ``L > max(x)`` at which ``Vbar = -beta``.

    ``mode="approx"`` uses ``Vbar ~ Ybar/(L - Xbar)`` and returns
    ``Xbar - Ybar/beta``. ``mode="exact"`` bisects
    ``mean(y/(L - x)) + beta`` to ``tol`` using the raw data.
    """
    beta = p.beta
    if beta >= 0:
        raise NoSolution(f"beta = {beta:.6g} >= 0: no L gives a positive Vbar equal to -beta")
    L_approx = p.Xbar - p.Ybar / beta
    if mode == "approx":
        if p.Ybar <= 0:
            raise NoSolution("Ybar <= 0: approximate Vbar cannot equal -beta above Xbar")
        return L_approx
    if mode != "exact":
        raise ValueError(f"mode must be 'exact' or 'approx' (got {mode!r})")
    if p.population is None:
        raise MissingParam("population", "exact optimal L")

    x = p.population.x
    xmax = float(np.max(x))
    scale = max(1.0, abs(xmax), float(np.ptp(x)))
    target = -beta

    def resid(L):
        return exact_vbar(p, L) - target

    lo = xmax + 1e-9 * scale
    hi = max(L_approx, xmax + scale) * 10.0 if L_approx > 0 else xmax + 10.0 * scale
    hi = max(hi, xmax + scale)
    r_lo = resid(lo)
    if not r_lo > 0:
        raise BracketFailure(f"Vbar - (-beta) = {r_lo:.6g} is not positive just above max(x)")
    r_hi = resid(hi)
    for _ in range(200):
        if r_hi < 0:
            break
        hi = xmax + 2.0 * (hi - xmax)
        r_hi = resid(hi)
    else:
        raise BracketFailure("Vbar stays above -beta for all tried L")

    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        r_mid = resid(mid)
        if abs(r_mid) <= tol or mid in (lo, hi):
            return mid
        if r_mid > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
