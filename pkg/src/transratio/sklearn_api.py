"""scikit-learn compatible wrappers.

The auxiliary variable is passed as ``X`` (one column) and the study variable
as ``y``. Known population constants (``N``, ``Xbar``) and the transformation
constant ``L`` are constructor parameters, so ``get_params``/``set_params``
and ``clone`` work as usual.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .errors import MissingParam
from .estimators import EstimatorKind, SampleStats, evaluate
from .population import Population
from .validation import check_L, check_design


def _column(X, **kw) -> np.ndarray:
    X = check_array(X, ensure_2d=False, dtype=np.float64, **kw)
    if X.ndim == 2:
        if X.shape[1] != 1:
            raise ValueError(f"expected a single auxiliary column, got {X.shape[1]}")
        X = X[:, 0]
    return X


class TransformedAuxiliary(TransformerMixin, BaseEstimator):
    """``u = L - x``; ``L`` must lie outside the range of ``x`` seen in ``fit``."""

    def __init__(self, L: float = 0.0):
        self.L = L

    def fit(self, X, y=None):
        x = _column(X)
        check_L(x, float(self.L))
        self.data_range_ = (float(x.min()), float(x.max()))
        return self

    def transform(self, X):
        check_is_fitted(self, "data_range_")
        X = check_array(X, ensure_2d=False, dtype=np.float64)
        check_L(np.ravel(X), float(self.L))
        return float(self.L) - X

    def inverse_transform(self, U):
        check_is_fitted(self, "data_range_")
        return float(self.L) - check_array(U, ensure_2d=False, dtype=np.float64)


class DualAuxiliary(TransformerMixin, BaseEstimator):
    """``x* = (N*Xbar - n*x) / (N - n)`` for a design of size ``n`` out of ``N``."""

    def __init__(self, N: int = 2, n: int = 1, Xbar: float = 0.0):
        self.N = N
        self.n = n
        self.Xbar = Xbar

    def fit(self, X=None, y=None):
        check_design(self.N, self.n)
        self.g_ = self.n / (self.N - self.n)
        return self

    def transform(self, X):
        check_is_fitted(self, "g_")
        X = check_array(X, ensure_2d=False, dtype=np.float64)
        return (self.N * self.Xbar - self.n * X) / (self.N - self.n)


class PopulationMeanEstimator(BaseEstimator):
    """Estimate the population mean of ``y`` from one SRSWOR sample.

    Parameters
    ----------
    estimator : str
        Estimator name, e.g. ``"du"`` (unbiased transformed), ``"d3u"``
        (Hartley-Ross), ``"d1u"``, ``"d2u"``, ``"ybar"``.
    N : int
        Population size.
    Xbar : float
        Known population mean of the auxiliary variable.
    L : float, optional
        Transformation constant, required by ``du``, ``d`` and ``dstar``.

    Attributes
    ----------
    estimate_ : float
        Estimated population mean.
    stats_ : SampleStats
        Sample means used by the estimate.
    """

    def __init__(self, estimator: str = "du", N: int | None = None, Xbar: float | None = None, L: float | None = None):
        self.estimator = estimator
        self.N = N
        self.Xbar = Xbar
        self.L = L

    @classmethod
    def for_population(cls, pop: Population, estimator: str = "du", L: float | None = None):
        return cls(estimator=estimator, N=pop.N, Xbar=pop.Xbar, L=L)

    def fit(self, X, y):
        x, y = check_X_y(X, y, ensure_2d=False, dtype=np.float64, y_numeric=True)
        x = np.ravel(x) if x.ndim == 1 or x.shape[1] == 1 else _column(x)
        kind = EstimatorKind.parse(self.estimator)
        if self.N is None:
            raise MissingParam("N", kind.value)
        if self.Xbar is None:
            raise MissingParam("Xbar", kind.value)
        check_design(self.N, x.size)
        if kind.needs_L:
            if self.L is None:
                raise MissingParam("L", kind.value)
            check_L(x, float(self.L))
        L = None if self.L is None else float(self.L)
        self.stats_ = SampleStats.from_arrays(x, y, N=self.N, Xbar=float(self.Xbar), L=L)
        self.estimate_ = float(evaluate(kind, self.stats_, N=self.N, Xbar=float(self.Xbar), L=L))
        self.n_samples_ = x.size
        return self

    def predict(self, X):
        """The fitted estimate repeated once per row of ``X``."""
        check_is_fitted(self, "estimate_")
        X = check_array(X, ensure_2d=False)
        return np.full(X.shape[0], self.estimate_)
