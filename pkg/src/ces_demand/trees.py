"""Nested aggregator trees over a fixed set of goods.

A tree is either a ``Leaf`` referencing one good or a ``Node`` carrying an
aggregator exponent (plus weights where the aggregator needs or allows them)
over child subtrees.  Every good appears in exactly one leaf, so a tree
induces a multi-stage aggregate: quantities aggregate bottom-up under each
node's own exponent, prices aggregate under the nodewise dual exponent.  The
same construction powers the direct-sum product inequality
``x . p >= U(x) * C(p)`` checked by :func:`direct_sum_holder_gap`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .exponents import COBB_DOUGLAS, FINITE, NEG_INFINITY, POS_INFINITY, Exponent, dual_exponent
from .norms import PositiveVector, WeightVector, _norm_dispatch, as_prices, as_quantities

#: deeper trees are legal but almost certainly a configuration mistake
DEPTH_WARN_ABOVE = 16


@dataclass(frozen=True)
class Leaf:
    good: int

    def __post_init__(self):
        if not isinstance(self.good, (int, np.integer)) or isinstance(self.good, bool):
            raise ValidationError(f"leaf good id must be an integer, got {self.good!r}")
        object.__setattr__(self, "good", int(self.good))


@dataclass(frozen=True)
class Node:
    aggregator: Exponent
    children: tuple
    weights: WeightVector | None = None

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if not self.children:
            raise ValidationError("a node needs at least one child")


NestTree = Leaf | Node


def flat_tree(e: Exponent, n_goods: int, weights: WeightVector | None = None) -> Node:
    """Depth-1 tree: one aggregator directly over goods ``0..n_goods-1``."""
    return Node(e, tuple(Leaf(g) for g in range(n_goods)), weights)


@dataclass(frozen=True)
class NodeIndexing:
    """Pre-order addressing of a validated tree.

    ``nodes[i]`` is the subtree at pre-order index ``i`` (the root is 0 and
    every descendant has a larger index than its parent), ``spans[i]`` the
    goods beneath it.  ``leaves`` pairs each leaf's pre-order index with its
    good id, in pre-order.
    """

    nodes: tuple
    parents: tuple[int, ...]
    children_ids: tuple[tuple[int, ...], ...]
    spans: tuple[frozenset, ...]
    leaves: tuple[tuple[int, int], ...]
    n_goods: int
    depth: int

    def __len__(self):
        return len(self.nodes)


def validate_tree(tree: NestTree, n_goods: int) -> NodeIndexing:
    """Check all tree invariants against a good set of size ``n_goods``.

    Verifies that the leaves partition the goods, that every aggregator is
    admissible for quantity aggregation (finite r <= 1, Cobb-Douglas, or the
    Leontief minimum), and that weights appear exactly where they belong
    (mandatory on Cobb-Douglas nodes, optional on finite-r nodes, nowhere
    else) with one weight per child.  Returns the pre-order indexing.
    """
    if n_goods <= 0:
        raise ValidationError(f"n_goods must be positive, got {n_goods}")
    if isinstance(tree, Leaf):
        raise ValidationError("the root must be an aggregator node, not a leaf")

    nodes: list = []
    parents: list[int] = []
    children_ids: list[list[int]] = []
    leaves: list[tuple[int, int]] = []
    depths: list[int] = []

    def walk(node, parent, depth):
        idx = len(nodes)
        nodes.append(node)
        parents.append(parent)
        children_ids.append([])
        depths.append(depth)
        if parent >= 0:
            children_ids[parent].append(idx)
        if isinstance(node, Leaf):
            leaves.append((idx, node.good))
            return
        if not isinstance(node, Node):
            raise ValidationError(f"not a tree node: {node!r}")
        e = node.aggregator
        if e.kind == POS_INFINITY or (e.kind == FINITE and e.r > 1.0):
            raise ValidationError(
                f"node {idx}: aggregator must satisfy r <= 1, got {e.label()}"
            )
        if e.kind == COBB_DOUGLAS and node.weights is None:
            raise ValidationError(f"node {idx}: cobb_douglas aggregator needs weights")
        if e.kind in (NEG_INFINITY, POS_INFINITY) and node.weights is not None:
            raise ValidationError(f"node {idx}: weights are not allowed on {e.label()} nodes")
        if node.weights is not None and len(node.weights) != len(node.children):
            raise ValidationError(
                f"node {idx}: {len(node.weights)} weights for {len(node.children)} children"
            )
        for child in node.children:
            walk(child, idx, depth + 1)

    walk(tree, -1, 1)

    seen: dict[int, int] = {}
    for idx, good in leaves:
        if good < 0 or good >= n_goods:
            raise ValidationError(f"leaf node {idx}: good id {good} outside 0..{n_goods - 1}")
        if good in seen:
            raise ValidationError(
                f"good id {good} appears in leaf nodes {seen[good]} and {idx}"
            )
        seen[good] = idx
    if len(seen) != n_goods:
        missing = sorted(set(range(n_goods)) - set(seen))
        raise ValidationError(f"goods missing from the tree: {missing}")

    n = len(nodes)
    spans: list[frozenset] = [frozenset()] * n
    for i in range(n - 1, -1, -1):
        if isinstance(nodes[i], Leaf):
            spans[i] = frozenset((nodes[i].good,))
        else:
            acc: set = set()
            for c in children_ids[i]:
                acc |= spans[c]
            spans[i] = frozenset(acc)

    depth = max(d for d, nd in zip(depths, nodes) if isinstance(nd, Node))
    if depth > DEPTH_WARN_ABOVE:
        warnings.warn(
            f"tree depth {depth} exceeds {DEPTH_WARN_ABOVE}; deep nests are "
            "numerically fine but usually a configuration error",
            RuntimeWarning,
            stacklevel=2,
        )

    return NodeIndexing(
        nodes=tuple(nodes),
        parents=tuple(parents),
        children_ids=tuple(tuple(c) for c in children_ids),
        spans=tuple(spans),
        leaves=tuple(leaves),
        n_goods=n_goods,
        depth=depth,
    )


@dataclass(frozen=True)
class Aggregation:
    """Root aggregate plus the value at every pre-order node."""

    value: float
    node_values: tuple[float, ...]


def _resolve_indexing(tree, n, indexing):
    if indexing is None:
        return validate_tree(tree, n)
    if indexing.n_goods != n:
        raise ValidationError(
            f"vector has {n} entries but the tree covers {indexing.n_goods} goods"
        )
    return indexing


def _aggregate_values(idx: NodeIndexing, leaf_values: np.ndarray, dual: bool) -> list[float]:
    """Bottom-up evaluation over a validated tree.

    ``dual=False`` applies each node's own aggregator to its children's
    values; ``dual=True`` applies the dual exponent with the weighted
    transforms used on the price side (values v/theta under weights, the
    Cobb-Douglas product of v/theta on cobb_douglas nodes).
    """
    vals = [0.0] * len(idx.nodes)
    for i in range(len(idx.nodes) - 1, -1, -1):
        node = idx.nodes[i]
        if isinstance(node, Leaf):
            vals[i] = float(leaf_values[node.good])
            continue
        kids = idx.children_ids[i]
        buf = np.empty(len(kids), dtype=np.float64)
        for j, c in enumerate(kids):
            buf[j] = vals[c]
        e = node.aggregator
        if not dual:
            vals[i] = _norm_dispatch(buf, e, node.weights)
            continue
        if e.kind == FINITE:
            if e.r == 1.0:
                raise DomainError(
                    f"node {i}: r = 1 (perfect substitutes) has no dual aggregate"
                )
            s = Exponent.finite(dual_exponent(e.r))
            if node.weights is None:
                vals[i] = _norm_dispatch(buf, s, None)
            else:
                np.divide(buf, node.weights.array, out=buf)
                vals[i] = _norm_dispatch(buf, s, node.weights)
        elif e.kind == COBB_DOUGLAS:
            np.divide(buf, node.weights.array, out=buf)
            vals[i] = _norm_dispatch(buf, Exponent.cobb_douglas(), node.weights)
        else:
            raise DomainError(
                f"node {i}: {e.label()} aggregator has no dual aggregate"
            )
    return vals


def _aggregate_log_values(idx: NodeIndexing, log_leaf_values: np.ndarray, dual: bool) -> list[float]:
    """Log-domain twin of :func:`_aggregate_values`: takes and returns
    logarithms, so the result stays representable even where the plain
    aggregate leaves the double range (tiny |r| on unweighted nodes)."""
    from . import _backend

    k = _backend.kernels
    vals = [0.0] * len(idx.nodes)
    for i in range(len(idx.nodes) - 1, -1, -1):
        node = idx.nodes[i]
        if isinstance(node, Leaf):
            vals[i] = float(log_leaf_values[node.good])
            continue
        kids = idx.children_ids[i]
        buf = np.empty(len(kids), dtype=np.float64)
        for j, c in enumerate(kids):
            buf[j] = vals[c]
        e = node.aggregator
        if not dual:
            if e.kind == FINITE:
                if node.weights is None:
                    vals[i] = k.log_norm_finite(buf, e.r)
                else:
                    vals[i] = k.log_norm_weighted_finite(buf, node.weights.array, e.r)
            elif e.kind == COBB_DOUGLAS:
                vals[i] = k.log_norm_cobb_douglas(buf, node.weights.array)
            elif e.kind == NEG_INFINITY:
                vals[i] = k.norm_min(buf)
            else:
                vals[i] = k.norm_max(buf)
            continue
        if e.kind == FINITE:
            if e.r == 1.0:
                raise DomainError(
                    f"node {i}: r = 1 (perfect substitutes) has no dual aggregate"
                )
            s = dual_exponent(e.r)
            if node.weights is None:
                vals[i] = k.log_norm_finite(buf, s)
            else:
                np.subtract(buf, np.log(node.weights.array), out=buf)
                vals[i] = k.log_norm_weighted_finite(buf, node.weights.array, s)
        elif e.kind == COBB_DOUGLAS:
            np.subtract(buf, np.log(node.weights.array), out=buf)
            vals[i] = k.log_norm_cobb_douglas(buf, node.weights.array)
        else:
            raise DomainError(f"node {i}: {e.label()} aggregator has no dual aggregate")
    return vals


def aggregate_quantity(tree: NestTree, x, indexing: NodeIndexing | None = None) -> Aggregation:
    """Aggregate a quantity bundle bottom-up; the root value is the utility
    level U(x).  Returns all per-node aggregate quantities as well."""
    xv = as_quantities(x)
    idx = _resolve_indexing(tree, len(xv), indexing)
    vals = _aggregate_values(idx, xv.values, dual=False)
    return Aggregation(value=vals[0], node_values=tuple(vals))


def aggregate_price(tree: NestTree, p, indexing: NodeIndexing | None = None) -> Aggregation:
    """Aggregate a price vector bottom-up under nodewise dual exponents.

    The root value is the cost of one unit of aggregate at prices ``p``.
    Rejects trees containing r = 1 or infinite aggregators, whose dual is
    not defined.
    """
    pv = as_prices(p)
    idx = _resolve_indexing(tree, len(pv), indexing)
    vals = _aggregate_values(idx, pv.values, dual=True)
    return Aggregation(value=vals[0], node_values=tuple(vals))


def direct_sum_holder_gap(tree: NestTree, x, p, indexing: NodeIndexing | None = None):
    """Gap of ``x . p >= U(x) * C(p)`` on a nest tree (the flat product
    inequality applied nodewise).  The right side is evaluated in the log
    domain: near r = 0 an unweighted aggregate and its dual over- and
    underflow doubles individually while their product stays moderate."""
    from . import _backend
    from .norms import InequalityGapReport, _exp_sat

    xv = as_quantities(x)
    pv = as_prices(p)
    if len(xv) != len(pv):
        raise ValidationError(f"length mismatch: {len(xv)} vs {len(pv)}")
    idx = _resolve_indexing(tree, len(xv), indexing)
    lhs = _backend.kernels.dot(xv.values, pv.values)
    rhs = _exp_sat(
        _aggregate_log_values(idx, np.log(xv.values), dual=False)[0]
        + _aggregate_log_values(idx, np.log(pv.values), dual=True)[0]
    )
    return InequalityGapReport.from_sides(lhs, rhs)
