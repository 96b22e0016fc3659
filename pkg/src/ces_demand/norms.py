"""Power-mean quasinorms and the inequality kernel.

Evaluates ``(sum x_i^r)^(1/r)`` for any finite ``r != 0`` together with the
weighted and limiting variants (Cobb-Douglas, min, max), and exposes gap
functions for the scalar Young inequality ``ab >= a^r/r + b^s/s`` and the
product inequality ``x . y >= ||x||_r ||y||_s`` that hold for ``r < 1``
(the direction is reversed relative to the classical ``r >= 1`` case).
All gap functions report ``lhs - rhs``, which is nonnegative up to
round-off whenever the preconditions hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _backend
from .errors import DomainError, ValidationError
from .exponents import COBB_DOUGLAS, FINITE, NEG_INFINITY, Exponent, dual_exponent

QUANTITY = "quantity"
PRICE = "price"

#: absolute tolerance on sum(theta) - 1 accepted at WeightVector construction
WEIGHT_SUM_TOL = 1e-9


@dataclass(frozen=True)
class PositiveVector:
    """Strictly positive 1-D vector tagged by economic role.

    ``values`` is stored as a read-only C-contiguous float64 array so it can
    be handed to the kernels without copies.
    """

    values: np.ndarray
    role: str = QUANTITY

    def __post_init__(self):
        if self.role not in (QUANTITY, PRICE):
            raise DomainError(f"unknown vector role {self.role!r}")
        arr = np.ascontiguousarray(self.values, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValidationError("positive vector must be 1-D and nonempty")
        if not np.all(np.isfinite(arr)) or not np.all(arr > 0.0):
            raise ValidationError("positive vector entries must be finite and > 0")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @classmethod
    def quantities(cls, values) -> "PositiveVector":
        return _coerce(values, QUANTITY)

    @classmethod
    def prices(cls, values) -> "PositiveVector":
        return _coerce(values, PRICE)

    def __len__(self):
        return self.values.size


def _coerce(x, role: str) -> PositiveVector:
    if isinstance(x, PositiveVector):
        if x.role != role:
            raise DomainError(f"expected a {role} vector, got role {x.role!r}")
        return x
    return PositiveVector(np.asarray(x, dtype=np.float64), role)


def as_quantities(x) -> PositiveVector:
    return _coerce(x, QUANTITY)


def as_prices(p) -> PositiveVector:
    return _coerce(p, PRICE)


@dataclass(frozen=True)
class WeightVector:
    """Positive weights summing to one.

    Construction checks ``|sum(theta) - 1| <= 1e-9`` and then renormalizes by
    the exact float sum, so downstream share identities do not inherit the
    input drift.  Stored as a tuple, which keeps the type hashable.
    """

    theta: tuple[float, ...]

    def __post_init__(self):
        vals = [float(t) for t in np.asarray(self.theta, dtype=np.float64).ravel()]
        if not vals:
            raise ValidationError("weight vector must be nonempty")
        if any(not math.isfinite(t) or t <= 0.0 for t in vals):
            raise ValidationError("weights must be finite and > 0")
        total = math.fsum(vals)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValidationError(
                f"weights must sum to 1 within {WEIGHT_SUM_TOL:g}; got {total!r}"
            )
        object.__setattr__(self, "theta", tuple(t / total for t in vals))

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.asarray(self.theta, dtype=np.float64)
        arr.flags.writeable = False
        return arr

    def __len__(self):
        return len(self.theta)


@dataclass(frozen=True)
class InequalityGapReport:
    """Two sides of an inequality plus their gap.

    ``gap = lhs - rhs`` exactly as stored; ``relative_gap`` divides by
    ``max(|lhs|, |rhs|, 1)``.  A nonnegative gap means the inequality held.
    """

    lhs: float
    rhs: float
    gap: float
    relative_gap: float

    @classmethod
    def from_sides(cls, lhs: float, rhs: float) -> "InequalityGapReport":
        gap = lhs - rhs
        denom = max(abs(lhs), abs(rhs), 1.0)
        rel = gap / denom if denom > 0.0 else gap
        if math.isinf(gap) and math.isinf(denom):
            # a side saturated past the double range; keep the sign only
            rel = math.copysign(1.0, gap)
        return cls(lhs=lhs, rhs=rhs, gap=gap, relative_gap=rel)


def _pow_sat(base: float, expo: float) -> float:
    # pow that saturates to inf instead of raising OverflowError; base > 0
    if expo * math.log(base) > 709.0:
        return math.inf
    return base ** expo


def _exp_sat(t: float) -> float:
    # exp that saturates to inf instead of raising OverflowError
    return math.inf if t > 709.0 else math.exp(t)


def _norm_dispatch(values: np.ndarray, e: Exponent, weights: WeightVector | None) -> float:
    """Single evaluation path for all norms; tree aggregation reuses it so a
    flat tree reproduces the free functions bit-for-bit."""
    k = _backend.kernels
    if weights is not None and len(weights) != values.size:
        raise ValidationError(
            f"weight length {len(weights)} does not match vector length {values.size}"
        )
    if e.kind == FINITE:
        if weights is None:
            return k.norm_finite(values, e.r)
        return k.norm_weighted_finite(values, weights.array, e.r)
    if e.kind == COBB_DOUGLAS:
        if weights is None:
            raise DomainError("the Cobb-Douglas aggregator requires weights")
        return k.norm_cobb_douglas(values, weights.array)
    if e.kind == NEG_INFINITY:
        return k.norm_min(values)
    return k.norm_max(values)


def lr_norm(x, e: Exponent) -> float:
    """Aggregate ``x`` under exponent ``e``.

    Finite r gives ``(sum x_i^r)^(1/r)``; the -inf/+inf kinds give the
    minimum/maximum entry.  Cobb-Douglas is rejected here because it needs
    weights (see :func:`weighted_norm`).  Degree-1 homogeneous in ``x``.
    """
    xv = x if isinstance(x, PositiveVector) else PositiveVector(np.asarray(x, dtype=np.float64))
    if e.kind == COBB_DOUGLAS:
        raise DomainError("cobb_douglas needs weights; use weighted_norm")
    return _norm_dispatch(xv.values, e, None)


def weighted_norm(x, theta: WeightVector, e: Exponent) -> float:
    """Weighted aggregate of ``x``.

    Finite r gives ``(sum theta_i x_i^r)^(1/r)``; Cobb-Douglas gives
    ``prod x_i^theta_i``.  The +-infinity limits ignore the weights (they
    wash out of the limit) but still require matching length.
    """
    xv = x if isinstance(x, PositiveVector) else PositiveVector(np.asarray(x, dtype=np.float64))
    return _norm_dispatch(xv.values, e, theta)


def young_gap(a: float, b: float, r: float) -> InequalityGapReport:
    """Gap of the scalar inequality ``ab >= a^r/r + b^s/s`` (r < 1, r != 0).

    Equality holds exactly when ``a^r = b^s``, i.e. ``a = b^(s-1)``.
    """
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and a > 0.0 and math.isfinite(b) and b > 0.0):
        raise DomainError("young_gap needs finite a > 0 and b > 0")
    s = dual_exponent(r)
    lhs = a * b
    rhs = _pow_sat(a, r) / r + _pow_sat(b, s) / s
    return InequalityGapReport.from_sides(lhs, rhs)


def reverse_holder_gap(x, y, r: float) -> InequalityGapReport:
    """Gap of ``x . y >= ||x||_r ||y||_s`` for positive vectors, r < 1, r != 0.

    Equality holds when ``y_i`` is proportional to ``x_i^(r-1)``.  The right
    side is evaluated in the log domain: for r near zero the two norms over-
    and underflow doubles individually even though their product (which the
    inequality actually bounds) does not.
    """
    s = dual_exponent(r)
    xv = x if isinstance(x, PositiveVector) else PositiveVector(np.asarray(x, dtype=np.float64))
    yv = y if isinstance(y, PositiveVector) else PositiveVector(np.asarray(y, dtype=np.float64))
    if len(xv) != len(yv):
        raise ValidationError(f"length mismatch: {len(xv)} vs {len(yv)}")
    k = _backend.kernels
    lhs = k.dot(xv.values, yv.values)
    rhs = _exp_sat(
        k.log_norm_finite(np.log(xv.values), r) + k.log_norm_finite(np.log(yv.values), s)
    )
    return InequalityGapReport.from_sides(lhs, rhs)


def l0_holder_gap(x, y, theta: WeightVector) -> InequalityGapReport:
    """Gap of the Cobb-Douglas (r -> 0) product inequality
    ``x . y >= prod x_i^theta_i * prod (y_i/theta_i)^theta_i``.
    The right side is evaluated in the log domain (see reverse_holder_gap).
    """
    xv = x if isinstance(x, PositiveVector) else PositiveVector(np.asarray(x, dtype=np.float64))
    yv = y if isinstance(y, PositiveVector) else PositiveVector(np.asarray(y, dtype=np.float64))
    if len(xv) != len(yv) or len(xv) != len(theta):
        raise ValidationError(
            f"length mismatch: x {len(xv)}, y {len(yv)}, theta {len(theta)}"
        )
    k = _backend.kernels
    lhs = k.dot(xv.values, yv.values)
    log_theta = np.log(theta.array)
    rhs = _exp_sat(
        k.log_norm_cobb_douglas(np.log(xv.values), theta.array)
        + k.log_norm_cobb_douglas(np.log(yv.values) - log_theta, theta.array)
    )
    return InequalityGapReport.from_sides(lhs, rhs)
