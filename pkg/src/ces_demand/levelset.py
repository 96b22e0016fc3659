"""Two-good level sets ``||(x1, x2)|| = 1`` as point clouds.

For each aggregator the unit level set admits a closed-form branch
``x2(x1)``: ``(1 - x1^r)^(1/r)`` for finite r (positive only where
``x1^r < 1``, which means x1 < 1 for r > 0 and x1 > 1 for r < 0),
``x1^(-theta1/theta2)`` for Cobb-Douglas, and the constant 1 on the
feasible side for the min/max limits.  Points are emitted on a log-spaced
x1 grid over [1e-3, 1e3] clipped to the feasible interval.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, ValidationError
from .exponents import COBB_DOUGLAS, FINITE, NEG_INFINITY, Exponent
from .norms import WeightVector

GRID_LO = 1e-3
GRID_HI = 1e3
#: margin keeping the grid off the boundary where x2 degenerates to 0 or inf
EDGE = 1e-9


def solve_level(x1: float, e: Exponent, weights: WeightVector | None = None):
    """Positive x2 with ``||(x1, x2)|| = 1`` under ``e``, or None if no
    positive solution exists at this x1."""
    x1 = float(x1)
    if x1 <= 0.0:
        raise DomainError(f"x1 must be > 0, got {x1!r}")
    if e.kind == FINITE:
        t = 1.0 - x1 ** e.r
        if t <= 0.0:
            return None
        return t ** (1.0 / e.r)
    if e.kind == COBB_DOUGLAS:
        if weights is None or len(weights) != 2:
            raise DomainError("cobb_douglas level sets need exactly two weights")
        t1, t2 = weights.theta
        return x1 ** (-t1 / t2)
    if e.kind == NEG_INFINITY:
        return 1.0 if x1 >= 1.0 else None
    return 1.0 if x1 <= 1.0 else None


def _feasible_interval(e: Exponent):
    if e.kind == FINITE:
        if e.r > 0.0:
            return GRID_LO, 1.0 - EDGE
        return 1.0 + EDGE, GRID_HI
    if e.kind == COBB_DOUGLAS:
        return GRID_LO, GRID_HI
    if e.kind == NEG_INFINITY:
        return 1.0, GRID_HI
    return GRID_LO, 1.0


def ball_points(e: Exponent, n: int, weights: WeightVector | None = None):
    """``n`` points ``(x1, x2)`` on the unit level set of ``e``.

    x1 runs over a log-spaced grid on the feasible part of [1e-3, 1e3].
    Raises if no positive solution exists anywhere in that range.
    """
    if n < 2:
        raise ValidationError(f"need n >= 2 grid points, got {n}")
    if e.kind == COBB_DOUGLAS and (weights is None or len(weights) != 2):
        raise DomainError("cobb_douglas level sets need exactly two weights")
    lo, hi = _feasible_interval(e)
    if not lo < hi:
        raise DomainError(f"no positive solution for {e.label()} in the grid range")
    points = []
    for x1 in np.geomspace(lo, hi, n):
        x2 = solve_level(float(x1), e, weights)
        if x2 is not None and 0.0 < x2 < float("inf"):
            points.append((float(x1), float(x2)))
    if not points:
        raise DomainError(f"no positive solution for {e.label()} in the grid range")
    return points
