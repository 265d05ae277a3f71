"""Finite populations, samples, auxiliary transformations and summary constants."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .errors import DegenerateTransform, DivisionByZero, InvalidDesign, MissingParam
from .validation import as_finite_vector, check_design, check_L


def fmean(values) -> float:
    """Correctly rounded mean."""
    values = np.asarray(values, dtype=np.float64)
    return math.fsum(values.tolist()) / values.size


def _fcov(a: np.ndarray, b: np.ndarray) -> float:
    """Covariance with an ``len - 1`` denominator, summed with ``math.fsum``."""
    da = a - fmean(a)
    db = b - fmean(b)
    return math.fsum((da * db).tolist()) / (a.size - 1)


@dataclass(frozen=True, eq=False)
class Population:
    """Paired auxiliary (``x``) and study (``y``) values for all ``N`` units."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = as_finite_vector(self.x, "x")
        y = as_finite_vector(self.y, "y")
        if x.size != y.size:
            raise ValueError(f"x and y lengths differ ({x.size} != {y.size})")
        if x.size < 2:
            raise InvalidDesign(f"population size must be at least 2 (got {x.size})")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def N(self) -> int:
        return int(self.x.size)

    @property
    def Xbar(self) -> float:
        return fmean(self.x)

    @property
    def Ybar(self) -> float:
        return fmean(self.y)

    def take(self, sample: Sample) -> tuple[np.ndarray, np.ndarray]:
        idx = np.asarray(sample.indices, dtype=np.intp)
        if idx[-1] >= self.N:
            raise InvalidDesign(f"sample index {idx[-1]} out of range for N={self.N}")
        return self.x[idx], self.y[idx]

    def permuted(self, order: Sequence[int]) -> Population:
        order = np.asarray(order, dtype=np.intp)
        return Population(self.x[order], self.y[order])


@dataclass(frozen=True)
class Sample:
    """Canonical (strictly increasing) tuple of distinct unit indices."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if len(idx) < 2:
            raise InvalidDesign(f"a sample needs at least 2 units (got {len(idx)})")
        if idx[0] < 0 or any(b <= a for a, b in zip(idx, idx[1:])):
            raise InvalidDesign(f"sample indices must be non-negative and strictly increasing: {idx}")
        object.__setattr__(self, "indices", idx)

    @property
    def n(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class TransformConfig:
    """Scalar ``L`` of the transformation ``u_i = L - x_i``."""

    L: float

    def check(self, pop: Population) -> None:
        check_L(pop.x, self.L)


def transform_u(x_values, L: float) -> np.ndarray:
    """Return ``u_i = L - x_i``.

    Raises:
        DegenerateTransform: ``L`` lies within ``[min(x), max(x)]``.
    """
    x = as_finite_vector(x_values, "x")
    check_L(x, float(L))
    return float(L) - x


def transform_x_star(x_values, N: int, n: int, Xbar: float) -> np.ndarray:
    """Dual transformation ``x*_i = (N*Xbar - n*x_i) / (N - n)``."""
    if n >= N:
        raise InvalidDesign(f"dual transformation requires n < N (got n={n}, N={N})")
    x = np.asarray(x_values, dtype=np.float64)
    return (N * Xbar - n * x) / (N - n)


@dataclass(frozen=True)
class SummaryParams:
    """Population and design constants feeding every closed-form result.

    Built either from raw data (:func:`summarize`) or from published summary
    constants (:meth:`from_constants`). ``L``-dependent quantities (``Vbar``,
    ``Suv``, ``theta``) are present only after :meth:`at_L`.
    ``vbar_source`` is ``"exact"`` when ``Vbar`` is the population mean of
    ``y_i / (L - x_i)`` and ``"approximated"`` when it is ``Ybar / (L - Xbar)``.
    """

    N: int
    n: int
    Ybar: float
    Xbar: float
    Sx2: float
    Sy2: float
    Sxy: float
    rho: float
    R: float
    Rstar_bar: float | None = None
    L: float | None = None
    Vbar: float | None = None
    vbar_source: str | None = None
    Suv: float | None = None
    rho_degenerate: bool = False
    population: Population | None = field(default=None, repr=False, compare=False)

    @classmethod
    def from_constants(
        cls,
        N: int,
        n: int,
        Ybar: float,
        Xbar: float,
        Sx2: float,
        Sy2: float,
        rho: float,
        R: float | None = None,
        Rstar_bar: float | None = None,
    ) -> SummaryParams:
        """Build from published summary constants (no raw data)."""
        check_design(N, n)
        if Xbar == 0:
            raise DivisionByZero("Xbar is zero: R = Ybar/Xbar and Cx are undefined")
        if Ybar == 0:
            raise DivisionByZero("Ybar is zero: Cy is undefined")
        if Sx2 < 0 or Sy2 < 0:
            raise ValueError("variances must be non-negative")
        if not -1.0 <= rho <= 1.0:
            raise ValueError(f"rho must lie in [-1, 1] (got {rho})")
        return cls(
            N=int(N),
            n=int(n),
            Ybar=float(Ybar),
            Xbar=float(Xbar),
            Sx2=float(Sx2),
            Sy2=float(Sy2),
            Sxy=float(rho) * math.sqrt(Sx2 * Sy2),
            rho=float(rho),
            R=float(Ybar) / float(Xbar) if R is None else float(R),
            Rstar_bar=None if Rstar_bar is None else float(Rstar_bar),
            rho_degenerate=Sx2 * Sy2 == 0,
        )

    # design constants
    @property
    def f(self) -> float:
        return self.n / self.N

    @property
    def g(self) -> float:
        return self.n / (self.N - self.n)

    @property
    def fpc(self) -> float:
        """``(1 - f) / n``, the common SRSWOR variance multiplier."""
        return (1.0 - self.f) / self.n

    @property
    def Sx(self) -> float:
        return math.sqrt(self.Sx2)

    @property
    def Sy(self) -> float:
        return math.sqrt(self.Sy2)

    @property
    def Cx(self) -> float:
        return self.Sx / self.Xbar

    @property
    def Cy(self) -> float:
        return self.Sy / self.Ybar

    @property
    def beta(self) -> float:
        """Regression slope of y on x; 0 when ``Sx2 == 0``."""
        if self.Sx2 == 0:
            return 0.0
        return self.rho * math.sqrt(self.Sy2 / self.Sx2)

    @property
    def K(self) -> float:
        if self.Cx == 0:
            return 0.0
        return self.rho * self.Cy / self.Cx

    @property
    def Ubar(self) -> float:
        if self.L is None:
            raise MissingParam("L", "Ubar")
        return self.L - self.Xbar

    @property
    def theta(self) -> float:
        if self.L is None:
            raise MissingParam("L", "theta")
        if self.L == self.Xbar:
            raise DivisionByZero("theta = Xbar/(L - Xbar) is undefined at L == Xbar")
        return self.Xbar / (self.L - self.Xbar)

    def at_L(self, L: float, vbar: str | None = None) -> SummaryParams:
        """Return a copy bound to transformation constant ``L``.

        Args:
            L: transformation constant.
            vbar: ``"exact"`` (needs raw data), ``"approx"``, or ``None`` to pick
                exact whenever raw data are attached.
        """
        L = float(L)
        if vbar is None:
            vbar = "exact" if self.population is not None else "approx"
        if vbar not in ("exact", "approx"):
            raise ValueError(f"vbar must be 'exact' or 'approx' (got {vbar!r})")
        if self.population is not None:
            check_L(self.population.x, L)
        elif L == self.Xbar:
            raise DegenerateTransform("L equals Xbar, so Ubar = 0")

        if vbar == "exact":
            if self.population is None:
                raise MissingParam("population", "exact Vbar")
            u = self.population.x * -1.0 + L
            v = self.population.y / u
            Vbar = fmean(v)
            Suv = _fcov(u, v)
            source = "exact"
        else:
            Vbar = self.Ybar / (L - self.Xbar)
            Suv = None
            if self.population is not None:
                u = L - self.population.x
                Suv = _fcov(u, self.population.y / u)
            source = "approximated"
        return replace(self, L=L, Vbar=Vbar, vbar_source=source, Suv=Suv)

    def with_design(self, n: int) -> SummaryParams:
        """Same population constants under a different sample size."""
        check_design(self.N, n)
        if self.population is not None:
            out = summarize(self.population, n)
        else:
            out = replace(self, n=int(n), L=None, Vbar=None, vbar_source=None, Suv=None)
        if self.L is not None:
            out = out.at_L(self.L, "exact" if self.vbar_source == "exact" else "approx")
        return out


def summarize(pop: Population, n: int, config: TransformConfig | None = None) -> SummaryParams:
    """Compute every summary constant of ``pop`` under SRSWOR of size ``n``.

    All dispersion statistics use ``N - 1`` denominators. When ``config`` is
    given, ``Vbar`` and ``Suv`` are computed exactly from the raw data.
    """
    check_design(pop.N, n)
    x, y = pop.x, pop.y
    Xbar, Ybar = pop.Xbar, pop.Ybar
    if Xbar == 0:
        raise DivisionByZero("Xbar is zero: R = Ybar/Xbar and Cx are undefined")
    if Ybar == 0:
        raise DivisionByZero("Ybar is zero: Cy is undefined")

    Sx2 = _fcov(x, x)
    Sy2 = _fcov(y, y)
    Sxy = _fcov(x, y)
    degenerate = Sx2 * Sy2 == 0
    if degenerate:
        rho = 0.0
    else:
        rho = Sxy / math.sqrt(Sx2 * Sy2)
        rho = min(1.0, max(-1.0, rho))

    xs = transform_x_star(x, pop.N, n, Xbar)
    Rstar_bar = None if np.any(xs == 0) else fmean(y / xs)

    params = SummaryParams(
        N=pop.N,
        n=int(n),
        Ybar=Ybar,
        Xbar=Xbar,
        Sx2=Sx2,
        Sy2=Sy2,
        Sxy=Sxy,
        rho=rho,
        R=Ybar / Xbar,
        Rstar_bar=Rstar_bar,
        rho_degenerate=degenerate,
        population=pop,
    )
    if config is not None:
        config.check(pop)
        params = params.at_L(config.L, "exact")
    return params
