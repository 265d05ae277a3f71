"""Unbiased ratio-type estimation of a finite population mean using ``u = L - x``."""

from .errors import (
    BracketFailure,
    DegenerateTransform,
    DivisionByZero,
    InvalidDesign,
    MissingParam,
    NoSolution,
    ParseError,
    SamplingError,
    TooLarge,
    UnsupportedEstimator,
)
from .estimators import EstimatorKind, SampleStats, estimate
from .exact import exact_distribution, exact_suv_unbiasedness, verify_unbiased
from .io import read_params, read_population_csv, rao_params
from .montecarlo import MCReport, simulate
from .population import Population, Sample, SummaryParams, TransformConfig, summarize, transform_u, transform_x_star
from .sampling import draw_sample, enumerate_samples
from .theory import (
    EfficiencyReport,
    bias_exact_plain_d,
    bias_first_order_dstar,
    efficiency_conditions,
    min_variance_du,
    optimal_L,
    relative_efficiency,
    variance_first_order,
)

__version__ = "0.1.0"

__all__ = [
    "BracketFailure",
    "DegenerateTransform",
    "DivisionByZero",
    "EfficiencyReport",
    "EstimatorKind",
    "InvalidDesign",
    "MCReport",
    "MissingParam",
    "NoSolution",
    "ParseError",
    "Population",
    "Sample",
    "SampleStats",
    "SamplingError",
    "SummaryParams",
    "TooLarge",
    "TransformConfig",
    "UnsupportedEstimator",
    "bias_exact_plain_d",
    "bias_first_order_dstar",
    "draw_sample",
    "efficiency_conditions",
    "enumerate_samples",
    "estimate",
    "exact_distribution",
    "exact_suv_unbiasedness",
    "min_variance_du",
    "optimal_L",
    "rao_params",
    "read_params",
    "read_population_csv",
    "relative_efficiency",
    "simulate",
    "summarize",
    "transform_u",
    "transform_x_star",
    "variance_first_order",
    "verify_unbiased",
]
