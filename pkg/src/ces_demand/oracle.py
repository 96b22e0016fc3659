"""Independent verification of the closed forms.

Three tools, none of which touches the closed-form price aggregates they are
used to check:

* a brute-force expenditure minimizer that exploits degree-1 homogeneity
  (search over directions on the unit simplex, where the utility constraint
  can be eliminated),
* central finite differences for gradient identities,
* a seeded sampler that hammers the inequality gap functions and reports any
  negative gap beyond round-off.

Determinism contract: every sampled instance draws from its own generator
seeded by ``(seed, stream, index)``, so results do not depend on execution
order or thread count, and any reported worst case can be regenerated from
the seed and index alone.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import _backend
from .config import tree_to_jsonable
from .demand import expenditure, hicksian_demand, indirect_utility, marshallian_demand
from .errors import DomainError, ValidationError
from .exponents import Exponent
from .norms import WeightVector, as_prices, l0_holder_gap, reverse_holder_gap, young_gap
from .trees import Leaf, Node, _aggregate_values, direct_sum_holder_gap, validate_tree

#: relative gaps below the negative of this count as inequality violations
VIOLATION_TOL = 1e-10

#: band around r = 0 excluded from finite-r draws
R_EXCLUSION = 1e-3

#: wider band used when drawing trees for the demand-side checks: an
#: unweighted aggregate scales like n^(1/r), so |r| below ~ln(n)/700
#: overflows doubles outright and anything much below 0.05 pushes optimal
#: bundle coordinates past what cost comparisons can resolve.  The
#: inequality sampler keeps the narrow band (its log-domain evaluation does
#: not care); the closed-form/oracle comparisons need representable values.
DEMAND_R_EXCLUSION = 5e-2

# sub-seed stream ids, one per kind of randomized check
_STREAM_INEQUALITY = 0
_STREAM_AGREEMENT = 1
_STREAM_SHEPHARD = 2
_STREAM_ROY = 3
_STREAM_DUALITY = 4
_STREAM_SHARPNESS = 5
_STREAM_MINIMIZER = 6


@dataclass(frozen=True)
class OracleConfig:
    """Knobs for the randomized checks; see the module docstring for the
    seeding scheme.  ``n_samples`` doubles as the number of random starts of
    the brute-force minimizer."""

    seed: int = 42
    n_samples: int = 10_000
    dim_range: tuple[int, int] = (2, 8)
    r_range: tuple[float, float] = (-5.0, 0.99)
    cd_probability: float = 0.25
    fd_step_rel: float = 1e-5
    refine_iters: int = 60

    def __post_init__(self):
        if not isinstance(self.seed, int) or isinstance(self.seed, bool) or self.seed < 0:
            raise ValidationError(f"seed must be a nonnegative integer, got {self.seed!r}")
        if not isinstance(self.n_samples, int) or self.n_samples < 0:
            raise ValidationError(f"n_samples must be >= 0, got {self.n_samples!r}")
        lo, hi = (int(v) for v in self.dim_range)
        if lo < 1 or hi < lo:
            raise ValidationError(f"dim_range must satisfy 1 <= lo <= hi, got {self.dim_range!r}")
        object.__setattr__(self, "dim_range", (lo, hi))
        rlo, rhi = (float(v) for v in self.r_range)
        if not (-5.0 <= rlo < rhi <= 0.99):
            raise ValidationError(
                f"r_range must be a subinterval of [-5, 0.99], got {self.r_range!r}"
            )
        if rhi < R_EXCLUSION and rlo > -R_EXCLUSION:
            raise ValidationError("r_range lies entirely inside the excluded band around 0")
        object.__setattr__(self, "r_range", (rlo, rhi))
        if not 0.0 <= self.cd_probability <= 1.0:
            raise ValidationError(f"cd_probability must be in [0, 1], got {self.cd_probability!r}")
        if not 0.0 < self.fd_step_rel < 1.0:
            raise ValidationError(
                f"fd_step_rel must be in (0, 1) to keep perturbed arguments positive, "
                f"got {self.fd_step_rel!r}"
            )
        if not isinstance(self.refine_iters, int) or self.refine_iters < 1:
            raise ValidationError(f"refine_iters must be >= 1, got {self.refine_iters!r}")


@dataclass(frozen=True)
class OracleReport:
    """Outcome of a randomized check.

    ``worst_relative_gap`` is the most adverse relative figure observed
    (None when nothing was tested); ``worst_case_inputs`` serializes the
    instance that produced it so it can be replayed.
    """

    n_tested: int
    n_violations: int
    worst_relative_gap: float | None
    worst_case_inputs: dict | None

    def to_jsonable(self) -> dict:
        return {
            "n_tested": self.n_tested,
            "n_violations": self.n_violations,
            "worst_relative_gap": self.worst_relative_gap,
            "worst_case_inputs": self.worst_case_inputs,
        }


def _rng(seed, stream, index):
    return np.random.default_rng((seed, stream, index))


def _draw_positive(rng, n, high=10.0):
    # uniform on (0, high]; 1 - random() avoids an exact zero
    return high * (1.0 - rng.random(n))


def _draw_r(rng, r_range, exclusion=R_EXCLUSION):
    lo, hi = r_range
    while True:
        r = float(rng.uniform(lo, hi))
        if abs(r) >= exclusion:
            return r


def _draw_weights(rng, n):
    while True:
        g = rng.dirichlet(np.ones(n))
        if g.min() > 1e-9:
            return WeightVector(tuple(g.tolist()))


def random_tree(rng, cfg: OracleConfig, max_depth: int = 3, r_exclusion: float = R_EXCLUSION):
    """Draw a random aggregator tree; returns ``(tree, n_goods)``.

    The good count comes from ``cfg.dim_range``; the good ids are shuffled
    and partitioned recursively.  Internal nodes split their block into 2-4
    parts, flattening into leaves at the depth cap or, below the root, with
    probability 1/2 (average depth stays near 2).  Each internal node is
    Cobb-Douglas with probability ``cfg.cd_probability`` (Dirichlet weights)
    and otherwise an unweighted finite-r node with r uniform on
    ``cfg.r_range`` minus the ``r_exclusion`` band around zero.
    """
    n = int(rng.integers(cfg.dim_range[0], cfg.dim_range[1] + 1))
    order = [int(g) for g in rng.permutation(n)]

    def build(block, depth):
        if len(block) == 1:
            return Leaf(block[0])
        if depth >= max_depth or (depth > 1 and rng.random() < 0.5) or len(block) == 2:
            children = tuple(Leaf(g) for g in block)
        else:
            k = int(rng.integers(2, min(4, len(block)) + 1))
            cuts = sorted(
                int(c) for c in rng.choice(np.arange(1, len(block)), size=k - 1, replace=False)
            )
            bounds = [0, *cuts, len(block)]
            children = tuple(build(block[a:b], depth + 1) for a, b in zip(bounds, bounds[1:]))
        if rng.random() < cfg.cd_probability:
            return Node(Exponent.cobb_douglas(), children, _draw_weights(rng, len(children)))
        return Node(Exponent.finite(_draw_r(rng, cfg.r_range, r_exclusion)), children)

    root = build(order, 1)
    if isinstance(root, Leaf):
        root = Node(Exponent.finite(_draw_r(rng, cfg.r_range, r_exclusion)), (root,))
    return root, n


# ---------------------------------------------------------------------------
# inequality sampling


def _eval_inequality_sample(cfg, i, capture=False):
    """Evaluate the four gap kinds on sample ``i``.  Returns
    ``(n_violations, worst_rel, worst_inputs_or_None)``."""
    rng = _rng(cfg.seed, _STREAM_INEQUALITY, i)
    dim = int(rng.integers(cfg.dim_range[0], cfg.dim_range[1] + 1))

    results = []
    a, b = (float(v) for v in _draw_positive(rng, 2))
    r = _draw_r(rng, cfg.r_range)
    results.append(("young", young_gap(a, b, r), {"a": a, "b": b, "r": r}))

    x = _draw_positive(rng, dim)
    y = _draw_positive(rng, dim)
    r2 = _draw_r(rng, cfg.r_range)
    results.append(
        ("reverse_holder", reverse_holder_gap(x, y, r2),
         {"x": x.tolist(), "y": y.tolist(), "r": r2})
    )

    x3 = _draw_positive(rng, dim)
    y3 = _draw_positive(rng, dim)
    theta = _draw_weights(rng, dim)
    results.append(
        ("l0_holder", l0_holder_gap(x3, y3, theta),
         {"x": x3.tolist(), "y": y3.tolist(), "theta": list(theta.theta)})
    )

    tree, n_goods = random_tree(rng, cfg)
    xq = _draw_positive(rng, n_goods)
    pq = _draw_positive(rng, n_goods)
    results.append(
        ("direct_sum", direct_sum_holder_gap(tree, xq, pq),
         {"tree": tree_to_jsonable(tree), "x": xq.tolist(), "p": pq.tolist()})
    )

    violations = 0
    worst_rel = math.inf
    worst_inputs = None
    for kind, rep, payload in results:
        if rep.relative_gap < -VIOLATION_TOL:
            violations += 1
        if rep.relative_gap < worst_rel:
            worst_rel = rep.relative_gap
            if capture:
                worst_inputs = {
                    "kind": kind,
                    "sample": i,
                    **payload,
                    "lhs": rep.lhs,
                    "rhs": rep.rhs,
                    "gap": rep.gap,
                    "relative_gap": rep.relative_gap,
                }
    return violations, worst_rel, worst_inputs


def sample_inequalities(cfg: OracleConfig, threads: int = 1) -> OracleReport:
    """Draw ``cfg.n_samples`` instances of each of the four inequality kinds
    (scalar Young, flat product, Cobb-Douglas product, nest-tree product) and
    report gaps below ``-1e-10`` relative.

    The same seed always produces the same report; with ``threads > 1`` the
    sample range is split across a thread pool, which cannot change the
    outcome because every sample owns its generator.
    """
    n = cfg.n_samples
    if n == 0:
        return OracleReport(0, 0, None, None)

    def eval_range(bounds):
        lo, hi = bounds
        viol = 0
        worst_rel = math.inf
        worst_idx = -1
        for i in range(lo, hi):
            v, rel, _ = _eval_inequality_sample(cfg, i)
            viol += v
            if rel < worst_rel:
                worst_rel = rel
                worst_idx = i
        return viol, worst_rel, worst_idx

    if threads > 1:
        step = -(-n // threads)
        bounds = [(a, min(a + step, n)) for a in range(0, n, step)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(eval_range, bounds))
    else:
        parts = [eval_range((0, n))]

    violations = sum(p[0] for p in parts)
    worst_rel, worst_idx = min(((p[1], p[2]) for p in parts), key=lambda t: (t[0], t[1]))
    _, _, worst_inputs = _eval_inequality_sample(cfg, worst_idx, capture=True)
    return OracleReport(
        n_tested=4 * n,
        n_violations=violations,
        worst_relative_gap=worst_rel,
        worst_case_inputs=worst_inputs,
    )


# ---------------------------------------------------------------------------
# brute-force expenditure minimization


def minimize_expenditure_bruteforce(tree, u, p, cfg: OracleConfig, indexing=None):
    """Minimize ``p . x`` subject to ``U(x) = u`` without the closed form.

    Homogeneity reduces the problem to minimizing ``g(d) = (p . d) / U(d)``
    over directions ``d`` on the open unit simplex: along the ray ``t d`` the
    constraint pins ``t = u / U(d)`` and the cost is ``u g(d)``.  The search
    draws ``cfg.n_samples`` Dirichlet directions, keeps the best, then runs
    up to ``cfg.refine_iters`` sweeps of greedy coordinatewise multiplicative
    steps (iterates stay positive by construction) with a step size that
    halves whenever a sweep brings no improvement.

    Returns ``(bundle, cost)``.  Every candidate satisfies the constraint, so
    the cost can never undercut the true minimum by more than round-off.
    """
    u = float(u)
    if not math.isfinite(u) or u <= 0.0:
        raise DomainError(f"utility must be finite and > 0, got {u!r}")
    pv = as_prices(p)
    idx = indexing if indexing is not None else validate_tree(tree, len(pv))
    prices = pv.values
    k = _backend.kernels
    n = idx.n_goods

    def g(d):
        return k.dot(prices, d) / _aggregate_values(idx, d, dual=False)[0]

    rng = _rng(cfg.seed, _STREAM_MINIMIZER, 0)
    best_d = np.full(n, 1.0 / n)
    best_g = g(best_d)
    if n > 1:
        alpha = np.ones(n)
        for _ in range(cfg.n_samples):
            d = rng.dirichlet(alpha)
            if d.min() <= 0.0:
                continue
            v = g(d)
            if v < best_g:
                best_d, best_g = d, v

        step = 0.5
        for _ in range(cfg.refine_iters):
            improved = False
            for i in range(n):
                for sign in (1.0, -1.0):
                    factor = math.exp(sign * step)
                    while True:
                        trial = best_d.copy()
                        trial[i] *= factor
                        v = g(trial)
                        if v < best_g:
                            best_d, best_g = trial, v
                            improved = True
                        else:
                            break
            if not improved:
                step *= 0.5
                if step < 1e-8:
                    break

    scale = u / _aggregate_values(idx, best_d, dual=False)[0]
    bundle = scale * best_d
    return bundle, float(k.dot(prices, bundle))


def finite_diff_gradient(f, p, fd_step_rel: float = 1e-5):
    """Central-difference gradient of ``f`` at the positive vector ``p``,
    with per-coordinate step ``fd_step_rel * p_i`` (second-order accurate).
    ``fd_step_rel`` must lie in (0, 1) so perturbed arguments stay positive.
    """
    if not 0.0 < fd_step_rel < 1.0:
        raise DomainError(
            f"fd_step_rel must be in (0, 1); {fd_step_rel!r} would push an argument to 0"
        )
    base = np.array(p, dtype=np.float64)
    grad = np.empty(base.size, dtype=np.float64)
    for i in range(base.size):
        h = fd_step_rel * base[i]
        hi = base.copy()
        hi[i] += h
        lo = base.copy()
        lo[i] -= h
        grad[i] = (f(hi) - f(lo)) / (2.0 * h)
    return grad


# ---------------------------------------------------------------------------
# randomized agreement and identity checks


def _draw_instance(rng, cfg, value_range):
    # demand-side instances use the wide near-zero exclusion; see
    # DEMAND_R_EXCLUSION
    tree, n = random_tree(rng, cfg, r_exclusion=DEMAND_R_EXCLUSION)
    lo, hi = value_range
    p = rng.uniform(lo, hi, n)
    return tree, n, p


def expenditure_agreement_check(
    cfg: OracleConfig,
    n_instances: int = 200,
    dim_range: tuple[int, int] = (2, 6),
    r_range: tuple[float, float] = (-4.0, 0.9),
    value_range: tuple[float, float] = (0.5, 2.0),
    cost_tol: float = 1e-4,
    bound_tol: float = 1e-10,
    bundle_tol: float = 1e-2,
    bundle_share_floor: float = 1e-6,
) -> OracleReport:
    """Brute-force cost vs closed-form expenditure on random instances.

    A violation is a cost mismatch beyond ``cost_tol`` relative, a cost
    undercutting the closed form by more than ``bound_tol`` relative (which
    would contradict the lower bound itself), or a search bundle coordinate
    off the cost-minimizing bundle by more than ``bundle_tol`` relative.
    The bundle comparison covers coordinates whose budget share exceeds
    ``bundle_share_floor``: a coordinate carrying less than that share of
    total cost is invisible to any cost-based search.
    ``worst_relative_gap`` is the signed cost difference of largest size.
    """
    inst_cfg = replace(cfg, dim_range=dim_range, r_range=r_range)
    violations = 0
    worst = 0.0
    worst_inputs = None
    for i in range(n_instances):
        rng = _rng(cfg.seed, _STREAM_AGREEMENT, i)
        tree, n, p = _draw_instance(rng, inst_cfg, value_range)
        u = float(rng.uniform(*value_range))
        idx = validate_tree(tree, n)
        closed = expenditure(tree, u, p, indexing=idx)
        bundle, cost = minimize_expenditure_bruteforce(tree, u, p, cfg, indexing=idx)
        rel = (cost - closed) / closed
        exact = hicksian_demand(tree, u, p, indexing=idx).quantities.values
        relevant = (p * exact) / closed > bundle_share_floor
        bundle_err = float(
            np.max(np.abs(bundle[relevant] - exact[relevant]) / exact[relevant])
        )
        if rel < -bound_tol or abs(rel) > cost_tol or bundle_err > bundle_tol:
            violations += 1
        if abs(rel) > abs(worst):
            worst = rel
            worst_inputs = {
                "instance": i,
                "tree": tree_to_jsonable(tree),
                "u": u,
                "p": p.tolist(),
                "closed_form": closed,
                "bruteforce": cost,
                "bundle_error": bundle_err,
            }
    return OracleReport(
        n_tested=n_instances,
        n_violations=violations,
        worst_relative_gap=worst,
        worst_case_inputs=worst_inputs,
    )


def _gradient_error(approx, exact):
    # scale-relative max-norm error; avoids blowing up on tiny coordinates
    scale = float(np.max(np.abs(exact)))
    return float(np.max(np.abs(approx - exact)) / scale)


def shephard_check(
    cfg: OracleConfig,
    n_instances: int = 100,
    dim_range: tuple[int, int] = (2, 8),
    r_range: tuple[float, float] = (-4.0, 0.9),
    value_range: tuple[float, float] = (0.5, 2.0),
    tol: float = 1e-5,
    fd_step_rel: float | None = None,
) -> OracleReport:
    """Gradient identity: d e(u, p) / d p equals the fixed-utility bundle.

    Compares central differences of expenditure against hicksian_demand in
    scale-relative max norm.
    """
    step = cfg.fd_step_rel if fd_step_rel is None else fd_step_rel
    inst_cfg = replace(cfg, dim_range=dim_range, r_range=r_range)
    violations = 0
    worst = 0.0
    worst_inputs = None
    for i in range(n_instances):
        rng = _rng(cfg.seed, _STREAM_SHEPHARD, i)
        tree, n, p = _draw_instance(rng, inst_cfg, value_range)
        u = float(rng.uniform(*value_range))
        idx = validate_tree(tree, n)
        fd = finite_diff_gradient(lambda q: expenditure(tree, u, q, indexing=idx), p, step)
        exact = hicksian_demand(tree, u, p, indexing=idx).quantities.values
        err = _gradient_error(fd, exact)
        if err > tol:
            violations += 1
        if err > worst:
            worst = err
            worst_inputs = {
                "instance": i,
                "tree": tree_to_jsonable(tree),
                "u": u,
                "p": p.tolist(),
                "error": err,
            }
    return OracleReport(n_instances, violations, worst, worst_inputs)


def roy_check(
    cfg: OracleConfig,
    n_instances: int = 100,
    dim_range: tuple[int, int] = (2, 8),
    r_range: tuple[float, float] = (-4.0, 0.9),
    value_range: tuple[float, float] = (0.5, 2.0),
    tol: float = 1e-5,
) -> OracleReport:
    """Quotient identity: -(dv/dp_i) / (dv/dm) equals the income-driven
    bundle, both derivatives taken by central differences."""
    violations = 0
    worst = 0.0
    worst_inputs = None
    inst_cfg = replace(cfg, dim_range=dim_range, r_range=r_range)
    for i in range(n_instances):
        rng = _rng(cfg.seed, _STREAM_ROY, i)
        tree, n, p = _draw_instance(rng, inst_cfg, value_range)
        m = float(rng.uniform(*value_range))
        idx = validate_tree(tree, n)
        fd_p = finite_diff_gradient(
            lambda q: indirect_utility(tree, m, q, indexing=idx), p, cfg.fd_step_rel
        )
        hm = cfg.fd_step_rel * m
        fd_m = (
            indirect_utility(tree, m + hm, p, indexing=idx)
            - indirect_utility(tree, m - hm, p, indexing=idx)
        ) / (2.0 * hm)
        approx = -fd_p / fd_m
        exact = marshallian_demand(tree, m, p, indexing=idx).quantities.values
        err = _gradient_error(approx, exact)
        if err > tol:
            violations += 1
        if err > worst:
            worst = err
            worst_inputs = {
                "instance": i,
                "tree": tree_to_jsonable(tree),
                "m": m,
                "p": p.tolist(),
                "error": err,
            }
    return OracleReport(n_instances, violations, worst, worst_inputs)


@dataclass(frozen=True)
class DualityReport:
    """Worst relative errors of the four duality identities."""

    n_tested: int
    n_violations: int
    max_roundtrip_utility: float
    max_adding_up: float
    max_demand_equality: float
    max_utility_attainment: float


def duality_check(
    cfg: OracleConfig,
    n_instances: int = 500,
    dim_range: tuple[int, int] = (2, 8),
    r_range: tuple[float, float] = (-4.0, 0.9),
    value_range: tuple[float, float] = (0.5, 2.0),
    roundtrip_tol: float = 1e-12,
    adding_up_tol: float = 1e-12,
    demand_tol: float = 1e-9,
    attainment_tol: float = 1e-9,
) -> DualityReport:
    """Random-instance checks of the exact identities:
    v(e(u,p), p) = u, p . x(m,p) = m, x(m,p) = x(v(m,p), p), U(x(u,p)) = u.
    """
    from .trees import aggregate_quantity

    inst_cfg = replace(cfg, dim_range=dim_range, r_range=r_range)
    violations = 0
    w_round = w_add = w_dem = w_att = 0.0
    for i in range(n_instances):
        rng = _rng(cfg.seed, _STREAM_DUALITY, i)
        tree, n, p = _draw_instance(rng, inst_cfg, value_range)
        u = float(rng.uniform(*value_range))
        m = float(rng.uniform(*value_range))
        idx = validate_tree(tree, n)

        e = expenditure(tree, u, p, indexing=idx)
        err_round = abs(indirect_utility(tree, e, p, indexing=idx) / u - 1.0)

        marsh = marshallian_demand(tree, m, p, indexing=idx)
        err_add = abs(float(np.dot(p, marsh.quantities.values)) / m - 1.0)

        hick = hicksian_demand(tree, indirect_utility(tree, m, p, indexing=idx), p, indexing=idx)
        err_dem = float(
            np.max(np.abs(marsh.quantities.values / hick.quantities.values - 1.0))
        )

        hu = hicksian_demand(tree, u, p, indexing=idx)
        err_att = abs(aggregate_quantity(tree, hu.quantities, indexing=idx).value / u - 1.0)

        if (
            err_round > roundtrip_tol
            or err_add > adding_up_tol
            or err_dem > demand_tol
            or err_att > attainment_tol
        ):
            violations += 1
        w_round = max(w_round, err_round)
        w_add = max(w_add, err_add)
        w_dem = max(w_dem, err_dem)
        w_att = max(w_att, err_att)
    return DualityReport(n_instances, violations, w_round, w_add, w_dem, w_att)


def sharpness_check(
    cfg: OracleConfig,
    n_instances: int = 25,
    n_bundles: int = 1000,
    dim_range: tuple[int, int] = (2, 6),
    r_range: tuple[float, float] = (-4.0, 0.9),
    value_range: tuple[float, float] = (0.5, 2.0),
    bound_tol: float = 1e-10,
    attain_tol: float = 1e-9,
) -> OracleReport:
    """The closed form is a true lower bound and it is attained: every random
    feasible bundle (rescaled onto U(x) = u) costs at least e(u, p), and the
    fixed-utility bundle costs exactly e(u, p)."""
    from .trees import aggregate_quantity

    inst_cfg = replace(cfg, dim_range=dim_range, r_range=r_range)
    violations = 0
    worst = 0.0
    worst_inputs = None
    for i in range(n_instances):
        rng = _rng(cfg.seed, _STREAM_SHARPNESS, i)
        tree, n, p = _draw_instance(rng, inst_cfg, value_range)
        u = float(rng.uniform(*value_range))
        idx = validate_tree(tree, n)
        e = expenditure(tree, u, p, indexing=idx)

        hick = hicksian_demand(tree, u, p, indexing=idx)
        attain_err = abs(float(np.dot(p, hick.quantities.values)) / e - 1.0)
        if attain_err > attain_tol:
            violations += 1

        lo, hi = value_range
        for _ in range(n_bundles):
            x = rng.uniform(lo, hi, n)
            t = u / aggregate_quantity(tree, x, indexing=idx).value
            rel = (float(np.dot(p, t * x)) - e) / e
            if rel < -bound_tol:
                violations += 1
            if rel < worst:
                worst = rel
                worst_inputs = {
                    "instance": i,
                    "tree": tree_to_jsonable(tree),
                    "u": u,
                    "p": p.tolist(),
                    "x": (t * x).tolist(),
                }
    return OracleReport(n_instances * n_bundles, violations, worst, worst_inputs)


def shephard_convergence_ratios(cfg: OracleConfig, base_step: float = 2e-4):
    """Error ratios err(h) / err(h/2) of the gradient identity on three fixed
    smooth instances.  Central differences are second-order, so the ratios
    sit near 4 while truncation dominates round-off; ``base_step`` is chosen
    large enough for that to hold."""
    w = WeightVector((0.3, 0.7))
    instances = [
        (Node(Exponent.finite(0.5), (Leaf(0), Leaf(1), Leaf(2))), [1.0, 2.0, 0.7], 1.3),
        (
            Node(
                Exponent.finite(-1.0),
                (
                    Node(Exponent.finite(0.4), (Leaf(0), Leaf(1))),
                    Node(Exponent.cobb_douglas(), (Leaf(2), Leaf(3)), w),
                ),
            ),
            [0.8, 1.1, 1.9, 0.6],
            0.9,
        ),
        (Node(Exponent.cobb_douglas(), (Leaf(0), Leaf(1)), w), [1.5, 0.5], 2.0),
    ]
    ratios = []
    for tree, p, u in instances:
        p = np.asarray(p)
        n = p.size
        idx = validate_tree(tree, n)
        exact = hicksian_demand(tree, u, p, indexing=idx).quantities.values
        errs = []
        for h in (base_step, base_step / 2.0):
            fd = finite_diff_gradient(lambda q: expenditure(tree, u, q, indexing=idx), p, h)
            errs.append(_gradient_error(fd, exact))
        ratios.append(errs[0] / errs[1])
    return ratios
