"""Closed-form demand theory on nest trees.

Everything here rides on one fact: for an aggregator tree with utility
``U(x)`` the minimum cost of a unit of utility at prices ``p`` is the dual
aggregate ``C(p)`` of :func:`ces_demand.trees.aggregate_price`, and the
bound ``x . p >= U(x) C(p)`` is attained.  Expenditure is therefore
``e(u, p) = u C(p)``, indirect utility ``v(m, p) = m / C(p)``, and demand
falls out of a budget-share cascade: a finite-r node with dual ``s`` and
child price aggregates ``P_c`` allocates share ``P_c^s / sum_j P_j^s`` to
child ``c`` (weighted form ``theta_c (P_c/theta_c)^s`` normalized), a
Cobb-Douglas node allocates its weights, and a leaf with budget ``b`` buys
``b / p_i``.  The cost-minimizing (fixed-utility) bundle is the same cascade
run at income ``e(u, p)``.

Demand requires every aggregator to have a dual: finite r < 1, with r = 0
(Cobb-Douglas) weighted.  Trees containing r = 1 or Leontief nodes are
rejected; callers wanting those limits should use r = 0.999 or r = -40
explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .exponents import COBB_DOUGLAS, Exponent, dual_exponent
from .norms import PositiveVector, as_prices
from .trees import Leaf, NestTree, NodeIndexing, _resolve_indexing, aggregate_price


@dataclass(frozen=True)
class DemandReport:
    """Demanded bundle plus the share and price structure behind it.

    ``node_budget_shares[i]`` is node ``i``'s share within its parent (the
    root gets 1), ``leaf_budget_shares[g]`` is good ``g``'s share of total
    expenditure (the product of node shares along the path), and
    ``price_index_per_node[i]`` is the dual price aggregate at node ``i``.
    Leaf shares sum to one, children's shares sum to one within each node,
    and ``p . quantities`` equals ``expenditure``, all up to round-off.
    """

    quantities: PositiveVector
    node_budget_shares: dict[int, float]
    leaf_budget_shares: dict[int, float]
    expenditure: float
    utility: float
    price_index_per_node: dict[int, float]


@dataclass(frozen=True)
class BudgetShares:
    node_shares: dict[int, float]
    leaf_shares: dict[int, float]


@dataclass(frozen=True)
class PriceIndexResult:
    """Cost-of-living ratio between two price situations at fixed utility."""

    index: float
    numerator_cost: float
    denominator_cost: float


def _check_scalar(value, name):
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be finite and > 0, got {value!r}")
    return value


def _children_shares(node, child_price_values):
    """Within-node budget shares given the children's price aggregates."""
    e = node.aggregator
    if e.kind == COBB_DOUGLAS:
        return list(node.weights.theta)
    s = dual_exponent(e.r)
    if node.weights is None:
        base = child_price_values
        scaled = None
    else:
        scaled = node.weights.theta
        base = [v / t for v, t in zip(child_price_values, scaled)]
    # normalize by the extremal base so every power stays in (0, 1]
    m = min(base) if s < 0.0 else max(base)
    if scaled is None:
        terms = [(b / m) ** s for b in base]
    else:
        terms = [t * (b / m) ** s for t, b in zip(scaled, base)]
    total = sum(terms)
    return [t / total for t in terms]


def _share_cascade(idx: NodeIndexing, price_values):
    """Top-down shares: per-node share within its parent and the cumulative
    product along the path from the root."""
    n = len(idx.nodes)
    node_share = [1.0] * n
    path_share = [1.0] * n
    for i in range(n):
        node = idx.nodes[i]
        if isinstance(node, Leaf):
            continue
        kids = idx.children_ids[i]
        shares = _children_shares(node, [price_values[c] for c in kids])
        for c, sh in zip(kids, shares):
            node_share[c] = sh
            path_share[c] = path_share[i] * sh
    return node_share, path_share


def _demand_report(idx, pv, price, budget, utility):
    node_share, path_share = _share_cascade(idx, price.node_values)
    quantities = np.empty(idx.n_goods, dtype=np.float64)
    leaf_shares: dict[int, float] = {}
    for leaf_idx, good in idx.leaves:
        leaf_shares[good] = path_share[leaf_idx]
        quantities[good] = budget * path_share[leaf_idx] / pv.values[good]
    return DemandReport(
        quantities=PositiveVector.quantities(quantities),
        node_budget_shares={i: node_share[i] for i in range(len(idx.nodes))},
        leaf_budget_shares=leaf_shares,
        expenditure=budget,
        utility=utility,
        price_index_per_node={i: v for i, v in enumerate(price.node_values)},
    )


def expenditure(tree: NestTree, u, p, indexing: NodeIndexing | None = None) -> float:
    """Minimum cost of reaching utility ``u`` at prices ``p``:
    ``e(u, p) = u * C(p)``.  Linear in ``u``; the bound is attained by
    :func:`hicksian_demand`."""
    u = _check_scalar(u, "utility")
    pv = as_prices(p)
    idx = _resolve_indexing(tree, len(pv), indexing)
    return u * aggregate_price(tree, pv, indexing=idx).value


def indirect_utility(tree: NestTree, m, p, indexing: NodeIndexing | None = None) -> float:
    """Maximum utility reachable with income ``m``: ``v(m, p) = m / C(p)``."""
    m = _check_scalar(m, "income")
    pv = as_prices(p)
    idx = _resolve_indexing(tree, len(pv), indexing)
    return m / aggregate_price(tree, pv, indexing=idx).value


def marshallian_demand(tree: NestTree, m, p, indexing: NodeIndexing | None = None) -> DemandReport:
    """Utility-maximizing bundle at income ``m`` via the share cascade.

    Spends the budget exactly: ``p . quantities = m`` up to round-off, and
    coincides with ``hicksian_demand(tree, v(m,p), p)``.
    """
    m = _check_scalar(m, "income")
    pv = as_prices(p)
    idx = _resolve_indexing(tree, len(pv), indexing)
    price = aggregate_price(tree, pv, indexing=idx)
    return _demand_report(idx, pv, price, budget=m, utility=m / price.value)


def hicksian_demand(tree: NestTree, u, p, indexing: NodeIndexing | None = None) -> DemandReport:
    """Cost-minimizing bundle at utility ``u``: the share cascade run at the
    income ``e(u, p)``.  Satisfies ``U(quantities) = u`` and
    ``p . quantities = e(u, p)`` up to round-off."""
    u = _check_scalar(u, "utility")
    pv = as_prices(p)
    idx = _resolve_indexing(tree, len(pv), indexing)
    price = aggregate_price(tree, pv, indexing=idx)
    return _demand_report(idx, pv, price, budget=u * price.value, utility=u)


def budget_shares(tree: NestTree, p, indexing: NodeIndexing | None = None) -> BudgetShares:
    """Node and leaf budget shares at prices ``p``.

    Demand is linear in income, so shares depend on prices alone.  A leaf's
    share is the product of node shares along its path; leaf shares sum to
    one.
    """
    pv = as_prices(p)
    idx = _resolve_indexing(tree, len(pv), indexing)
    price = aggregate_price(tree, pv, indexing=idx)
    node_share, path_share = _share_cascade(idx, price.node_values)
    return BudgetShares(
        node_shares={i: node_share[i] for i in range(len(idx.nodes))},
        leaf_shares={good: path_share[leaf_idx] for leaf_idx, good in idx.leaves},
    )


def konus_index(tree: NestTree, p_new, p_old, indexing: NodeIndexing | None = None) -> PriceIndexResult:
    """True cost-of-living index ``e(u, p_new) / e(u, p_old)``.

    Homothetic preferences make it independent of the utility level, so it
    reduces to the ratio of unit costs ``C(p_new) / C(p_old)``.
    """
    pn = as_prices(p_new)
    po = as_prices(p_old)
    if len(pn) != len(po):
        raise ValidationError(f"price vectors differ in length: {len(pn)} vs {len(po)}")
    idx = _resolve_indexing(tree, len(pn), indexing)
    num = aggregate_price(tree, pn, indexing=idx).value
    den = aggregate_price(tree, po, indexing=idx).value
    return PriceIndexResult(index=num / den, numerator_cost=num, denominator_cost=den)
