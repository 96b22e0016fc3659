"""CES, Cobb-Douglas and nested Armington demand systems.

Models these aggregators as power-mean quasinorms on nest trees, computes
expenditure, demand and cost-of-living quantities from the dual price
aggregate in closed form, and ships an independent brute-force /
finite-difference oracle that verifies every closed form.
"""

__version__ = "0.1.0"

from ._backend import available_backends, backend_name, use_backend
from .demand import (
    BudgetShares,
    DemandReport,
    PriceIndexResult,
    budget_shares,
    expenditure,
    hicksian_demand,
    indirect_utility,
    konus_index,
    marshallian_demand,
)
from .errors import CesDemandError, ConfigError, DomainError, ValidationError
from .exponents import Exponent, dual_exponent, elasticity
from .levelset import ball_points, solve_level
from .norms import (
    InequalityGapReport,
    PositiveVector,
    WeightVector,
    l0_holder_gap,
    lr_norm,
    reverse_holder_gap,
    weighted_norm,
    young_gap,
)
from .oracle import (
    OracleConfig,
    OracleReport,
    finite_diff_gradient,
    minimize_expenditure_bruteforce,
    sample_inequalities,
)
from .trees import (
    Aggregation,
    Leaf,
    NestTree,
    Node,
    NodeIndexing,
    aggregate_price,
    aggregate_quantity,
    direct_sum_holder_gap,
    flat_tree,
    validate_tree,
)

__all__ = [
    "Aggregation",
    "BudgetShares",
    "CesDemandError",
    "ConfigError",
    "DemandReport",
    "DomainError",
    "Exponent",
    "InequalityGapReport",
    "Leaf",
    "NestTree",
    "Node",
    "NodeIndexing",
    "OracleConfig",
    "OracleReport",
    "PositiveVector",
    "PriceIndexResult",
    "ValidationError",
    "WeightVector",
    "aggregate_price",
    "aggregate_quantity",
    "available_backends",
    "backend_name",
    "ball_points",
    "budget_shares",
    "direct_sum_holder_gap",
    "dual_exponent",
    "elasticity",
    "expenditure",
    "finite_diff_gradient",
    "flat_tree",
    "hicksian_demand",
    "indirect_utility",
    "konus_index",
    "l0_holder_gap",
    "lr_norm",
    "marshallian_demand",
    "minimize_expenditure_bruteforce",
    "reverse_holder_gap",
    "sample_inequalities",
    "solve_level",
    "use_backend",
    "validate_tree",
    "weighted_norm",
    "young_gap",
]
