"""Input validation helpers used across the package."""

from __future__ import annotations

import math

import numpy as np

from .errors import DegenerateTransform, InvalidDesign


def as_finite_vector(values, name: str) -> np.ndarray:
    """Return ``values`` as a read-only 1-d float64 array, rejecting NaN/inf."""
    arr = np.array(values, dtype=np.float64)
    if arr.ndim == 2 and 1 in arr.shape:
        arr = arr.ravel()
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or infinite values")
    arr.setflags(write=False)
    return arr


def check_design(N: int, n: int) -> None:
    """Require integer sizes with ``2 <= n < N``."""
    if int(N) != N or int(n) != n:
        raise InvalidDesign(f"N and n must be integers (got N={N}, n={n})")
    if N < 2:
        raise InvalidDesign(f"population size must be at least 2 (got N={N})")
    if not 2 <= n < N:
        raise InvalidDesign(f"sample size must satisfy 2 <= n < N (got n={n}, N={N})")


def check_L(x: np.ndarray, L: float) -> None:
    """Require ``L`` strictly outside ``[min(x), max(x)]``."""
    if not math.isfinite(L):
        raise DegenerateTransform(f"L must be finite (got {L})")
    lo, hi = float(np.min(x)), float(np.max(x))
    if lo <= L <= hi:
        raise DegenerateTransform(
            f"L={L} lies inside the auxiliary data range [{lo}, {hi}]; "
            "u = L - x would vanish or change sign"
        )
