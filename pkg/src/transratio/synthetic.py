"""Deterministic test populations."""

from __future__ import annotations

import math

import numpy as np

from .population import Population

_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def linear_population(
    N: int = 500,
    x_range: tuple[float, float] = (20.0, 80.0),
    intercept: float = 150.0,
    slope: float = -1.0,
    rho: float = -0.7,
) -> Population:
    """Evenly spaced ``x`` with ``y = intercept + slope*x + e``.

    ``e`` is a golden-ratio (Weyl) sequence, centred and made orthogonal to
    ``x``, then scaled so the population correlation equals ``rho`` (to
    rounding). ``rho`` must have the sign of ``slope``.
    """
    if not 0 < abs(rho) < 1 or math.copysign(1.0, rho) != math.copysign(1.0, slope) or slope == 0:
        raise ValueError("need 0 < |rho| < 1 with the sign of a nonzero slope")
    x = np.linspace(x_range[0], x_range[1], N)
    e = (np.arange(1, N + 1) * _PHI) % 1.0 - 0.5
    e -= e.mean()
    xc = x - x.mean()
    e -= xc * (e @ xc) / (xc @ xc)
    # rho^2 = b^2 Sx^2 / (b^2 Sx^2 + a^2 Se^2)
    sx2 = xc @ xc
    se2 = e @ e
    a = abs(slope) * math.sqrt(sx2 / se2 * (1.0 / rho**2 - 1.0))
    y = intercept + slope * x + a * e
    return Population(x, y)
