"""CES exponents and their dual / elasticity transforms.

A finite parameter ``r`` (``r != 0``) selects a member of the CES family of
aggregators ``(sum x_i^r)^(1/r)``.  Demand theory lives on ``r < 1``; larger
finite ``r`` is still a valid aggregator for norm evaluation.  The limiting
members are encoded explicitly: the Cobb-Douglas limit ``r -> 0`` (which
needs weights), the Leontief limit ``r -> -inf`` (minimum) and the
``r -> +inf`` maximum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

FINITE = "finite"
COBB_DOUGLAS = "cobb_douglas"
NEG_INFINITY = "neg_infinity"
POS_INFINITY = "pos_infinity"

_KINDS = (FINITE, COBB_DOUGLAS, NEG_INFINITY, POS_INFINITY)


def dual_exponent(r: float) -> float:
    """Solve 1/r + 1/s = 1 for s.

    Defined for finite r < 1, r != 0.  The dual always satisfies s < 1;
    s < 0 exactly when 0 < r < 1, and 0 < s < 1 exactly when r < 0, so the
    transform is an involution on its domain.
    """
    r = float(r)
    if not math.isfinite(r) or r >= 1.0 or r == 0.0:
        raise DomainError(f"dual exponent needs finite r < 1, r != 0; got {r!r}")
    return r / (r - 1.0)


def elasticity(r: float) -> float:
    """Elasticity of substitution sigma = 1/(1 - r) for finite r < 1.

    r = 0 is allowed (the Cobb-Douglas case has unit elasticity).
    """
    r = float(r)
    if not math.isfinite(r) or r >= 1.0:
        raise DomainError(f"elasticity needs finite r < 1; got {r!r}")
    return 1.0 / (1.0 - r)


@dataclass(frozen=True)
class Exponent:
    """Aggregator selector: finite r, Cobb-Douglas, or a +-infinity limit."""

    kind: str
    r: float | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown exponent kind {self.kind!r}")
        if self.kind == FINITE:
            if self.r is None or not math.isfinite(self.r) or self.r == 0.0:
                raise DomainError(
                    f"finite exponent needs finite nonzero r; got {self.r!r}"
                )
            object.__setattr__(self, "r", float(self.r))
        elif self.r is not None:
            raise DomainError(f"{self.kind} exponent takes no r value")

    @classmethod
    def finite(cls, r: float) -> "Exponent":
        return cls(FINITE, float(r))

    @classmethod
    def cobb_douglas(cls) -> "Exponent":
        return cls(COBB_DOUGLAS)

    @classmethod
    def neg_inf(cls) -> "Exponent":
        return cls(NEG_INFINITY)

    @classmethod
    def pos_inf(cls) -> "Exponent":
        return cls(POS_INFINITY)

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    @property
    def dual_s(self) -> float:
        """Dual exponent s = r/(r-1); finite r < 1 only."""
        if self.kind != FINITE:
            raise DomainError(f"dual exponent undefined for {self.kind}")
        return dual_exponent(self.r)

    @property
    def sigma(self) -> float:
        """Elasticity of substitution; finite r < 1 or Cobb-Douglas."""
        if self.kind == COBB_DOUGLAS:
            return 1.0
        if self.kind != FINITE:
            raise DomainError(f"elasticity undefined for {self.kind}")
        return elasticity(self.r)

    def label(self) -> str:
        """Short text form used in CSV output and serialized reports."""
        if self.kind == FINITE:
            return repr(self.r)
        return {COBB_DOUGLAS: "cobb_douglas", NEG_INFINITY: "-inf", POS_INFINITY: "inf"}[
            self.kind
        ]
