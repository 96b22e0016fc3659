"""Batch command-line interface.

Subcommands operate on a scenario JSON file (see :mod:`ces_demand.config`)
and print one machine-readable result document to stdout:

* ``norm`` / ``price``: aggregate a quantity bundle or scenario prices.
* ``expenditure`` / ``hicksian`` / ``marshallian`` / ``shares``: the demand
  quantities for one or all scenarios.
* ``index``: cost-of-living index between two named scenarios.
* ``verify``: seeded inequality sampling plus brute-force/closed-form
  agreement; exits 2 when any violation is found.
* ``ball``: CSV point cloud of a two-good unit level set.

Exit codes: 0 success, 1 validation or configuration error, 2 verification
failure.  ``--deterministic`` omits the timestamp so identical inputs give
byte-identical output.  CES_DEMAND_THREADS caps verification parallelism.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from datetime import datetime, timezone

from . import __version__
from .config import load_scenario_file
from .demand import (
    budget_shares,
    expenditure,
    hicksian_demand,
    konus_index,
    marshallian_demand,
)
from .errors import CesDemandError, ValidationError
from .exponents import Exponent
from .levelset import ball_points
from .norms import WeightVector
from .oracle import OracleConfig, expenditure_agreement_check, sample_inequalities
from .trees import aggregate_price, aggregate_quantity

_TOOL = "ces-demand"


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise ValidationError(f"expected a comma-separated list of numbers, got {text!r}")


def _parse_exponent(text: str) -> Exponent:
    t = text.strip().lower()
    if t in ("inf", "+inf"):
        return Exponent.pos_inf()
    if t == "-inf":
        return Exponent.neg_inf()
    if t in ("0", "0.0", "cobb_douglas", "cd"):
        return Exponent.cobb_douglas()
    try:
        return Exponent.finite(float(t))
    except ValueError:
        raise ValidationError(f"cannot parse exponent {text!r}")


def _digest_bytes(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _digest_file(path: str) -> str:
    with open(path, "rb") as fh:
        return _digest_bytes(fh.read())


def _document(command: str, digest: str, deterministic: bool, results) -> dict:
    doc = {"tool": _TOOL, "version": __version__, "command": command, "input_digest": digest}
    if not deterministic:
        doc["timestamp"] = datetime.now(timezone.utc).isoformat()
    doc["results"] = results
    return doc


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _share_map(d: dict) -> dict:
    return {str(k): v for k, v in d.items()}


def _report_jsonable(rep) -> dict:
    return {
        "quantities": rep.quantities.values.tolist(),
        "expenditure": rep.expenditure,
        "utility": rep.utility,
        "node_budget_shares": _share_map(rep.node_budget_shares),
        "leaf_budget_shares": _share_map(rep.leaf_budget_shares),
        "price_index_per_node": _share_map(rep.price_index_per_node),
    }


def _select_scenarios(cfg, name):
    if name is None:
        return list(cfg.scenarios.values())
    if name not in cfg.scenarios:
        raise ValidationError(
            f"scenario {name!r} not in file (have {sorted(cfg.scenarios)})"
        )
    return [cfg.scenarios[name]]


def _scenario_scalar(scenario, override, field):
    if override is not None:
        return override
    value = getattr(scenario, field)
    if value is None:
        raise ValidationError(
            f"scenario {scenario.name!r} has no {field}; supply --{field} or add it to the file"
        )
    return value


def _threads(args) -> int:
    if getattr(args, "threads", None) is not None:
        n = args.threads
    else:
        env = os.environ.get("CES_DEMAND_THREADS")
        if env is not None:
            try:
                n = int(env)
            except ValueError:
                raise ValidationError(f"CES_DEMAND_THREADS must be an integer, got {env!r}")
        else:
            n = os.cpu_count() or 1
    if n < 1:
        raise ValidationError(f"thread count must be >= 1, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=_TOOL, description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, config=True, scenario=True):
        p = sub.add_parser(name, help=help_text)
        if config:
            p.add_argument("--config", required=True, help="scenario JSON file")
        if scenario:
            p.add_argument("--scenario", help="scenario name (default: all)")
        p.add_argument(
            "--deterministic",
            action="store_true",
            help="omit the timestamp so identical inputs give identical bytes",
        )
        return p

    p = add("norm", "aggregate a quantity bundle through the tree", scenario=False)
    p.add_argument(
        "--quantities", required=True, help="comma-separated quantities in good-id order"
    )

    add("price", "aggregate scenario prices through the dual tree")

    p = add("expenditure", "minimum cost of the scenario utility level")
    p.add_argument("--utility", type=float, help="override the scenario utility")

    p = add("hicksian", "cost-minimizing bundle at fixed utility")
    p.add_argument("--utility", type=float, help="override the scenario utility")

    p = add("marshallian", "utility-maximizing bundle at fixed income")
    p.add_argument("--income", type=float, help="override the scenario income")

    add("shares", "node and leaf budget shares")

    p = add("index", "cost-of-living index between two scenarios", scenario=False)
    p.add_argument("--from", dest="from_scenario", required=True, metavar="NAME")
    p.add_argument("--to", dest="to_scenario", required=True, metavar="NAME")

    p = add("verify", "randomized inequality and agreement checks", config=False, scenario=False)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=10_000, help="inequality samples per kind")
    p.add_argument("--instances", type=int, default=200, help="brute-force agreement instances")
    p.add_argument("--threads", type=int, help="overrides CES_DEMAND_THREADS")

    p = add("ball", "CSV points of a two-good unit level set", config=False, scenario=False)
    p.add_argument(
        "--r",
        help="exponent: a number, 'inf', '-inf', or 'cobb_douglas' "
        "(write --r=-inf so the value is not read as a flag)",
    )
    p.add_argument("--cobb-douglas", action="store_true", dest="cd")
    p.add_argument("--theta", help="two comma-separated weights (cobb_douglas only)")
    p.add_argument("--n", type=int, default=200, help="grid points (default 200)")

    return parser


def _cmd_norm(args) -> int:
    cfg = load_scenario_file(args.config)
    x = _float_list(args.quantities)
    agg = aggregate_quantity(cfg.tree, x, indexing=cfg.indexing)
    results = [
        {"quantities": x, "value": agg.value, "node_values": list(agg.node_values)}
    ]
    _emit(_document("norm", _digest_file(args.config), args.deterministic, results))
    return 0


def _cmd_price(args) -> int:
    cfg = load_scenario_file(args.config)
    results = []
    for sc in _select_scenarios(cfg, args.scenario):
        agg = aggregate_price(cfg.tree, sc.prices, indexing=cfg.indexing)
        results.append(
            {"scenario": sc.name, "value": agg.value, "node_values": list(agg.node_values)}
        )
    _emit(_document("price", _digest_file(args.config), args.deterministic, results))
    return 0


def _cmd_expenditure(args) -> int:
    cfg = load_scenario_file(args.config)
    results = []
    for sc in _select_scenarios(cfg, args.scenario):
        u = _scenario_scalar(sc, args.utility, "utility")
        e = expenditure(cfg.tree, u, sc.prices, indexing=cfg.indexing)
        results.append(
            {"scenario": sc.name, "utility": u, "expenditure": e, "unit_cost": e / u}
        )
    _emit(_document("expenditure", _digest_file(args.config), args.deterministic, results))
    return 0


def _cmd_hicksian(args) -> int:
    cfg = load_scenario_file(args.config)
    results = []
    for sc in _select_scenarios(cfg, args.scenario):
        u = _scenario_scalar(sc, args.utility, "utility")
        rep = hicksian_demand(cfg.tree, u, sc.prices, indexing=cfg.indexing)
        results.append({"scenario": sc.name, **_report_jsonable(rep)})
    _emit(_document("hicksian", _digest_file(args.config), args.deterministic, results))
    return 0


def _cmd_marshallian(args) -> int:
    cfg = load_scenario_file(args.config)
    results = []
    for sc in _select_scenarios(cfg, args.scenario):
        m = _scenario_scalar(sc, args.income, "income")
        rep = marshallian_demand(cfg.tree, m, sc.prices, indexing=cfg.indexing)
        results.append({"scenario": sc.name, **_report_jsonable(rep)})
    _emit(_document("marshallian", _digest_file(args.config), args.deterministic, results))
    return 0


def _cmd_shares(args) -> int:
    cfg = load_scenario_file(args.config)
    results = []
    for sc in _select_scenarios(cfg, args.scenario):
        shares = budget_shares(cfg.tree, sc.prices, indexing=cfg.indexing)
        results.append(
            {
                "scenario": sc.name,
                "node_shares": _share_map(shares.node_shares),
                "leaf_shares": _share_map(shares.leaf_shares),
            }
        )
    _emit(_document("shares", _digest_file(args.config), args.deterministic, results))
    return 0


def _cmd_index(args) -> int:
    cfg = load_scenario_file(args.config)
    new = _select_scenarios(cfg, args.to_scenario)[0]
    old = _select_scenarios(cfg, args.from_scenario)[0]
    res = konus_index(cfg.tree, new.prices, old.prices, indexing=cfg.indexing)
    results = [
        {
            "from": old.name,
            "to": new.name,
            "index": res.index,
            "numerator_cost": res.numerator_cost,
            "denominator_cost": res.denominator_cost,
        }
    ]
    _emit(_document("index", _digest_file(args.config), args.deterministic, results))
    return 0


def _cmd_verify(args) -> int:
    threads = _threads(args)
    cfg = OracleConfig(seed=args.seed, n_samples=args.samples)
    search_cfg = OracleConfig(seed=args.seed, n_samples=128)
    inequalities = sample_inequalities(cfg, threads=threads)
    agreement = expenditure_agreement_check(search_cfg, n_instances=args.instances)
    params = {
        "seed": args.seed,
        "samples": args.samples,
        "instances": args.instances,
    }
    digest = _digest_bytes(json.dumps(params, sort_keys=True).encode())
    results = [
        {
            **params,
            "threads": threads,
            "inequalities": inequalities.to_jsonable(),
            "expenditure_agreement": agreement.to_jsonable(),
        }
    ]
    _emit(_document("verify", digest, args.deterministic, results))
    if inequalities.n_violations > 0 or agreement.n_violations > 0:
        return 2
    return 0


def _cmd_ball(args) -> int:
    weights = None
    if args.cd:
        e = Exponent.cobb_douglas()
    elif args.r is not None:
        e = _parse_exponent(args.r)
    else:
        raise ValidationError("ball needs --r or --cobb-douglas")
    if e.kind == "cobb_douglas":
        if not args.theta:
            raise ValidationError("cobb_douglas level sets need --theta a,b")
        weights = WeightVector(tuple(_float_list(args.theta)))
    label = e.label()
    lines = ["x1,x2,r"]
    for x1, x2 in ball_points(e, args.n, weights):
        lines.append(f"{x1!r},{x2!r},{label}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


_HANDLERS = {
    "norm": _cmd_norm,
    "price": _cmd_price,
    "expenditure": _cmd_expenditure,
    "hicksian": _cmd_hicksian,
    "marshallian": _cmd_marshallian,
    "shares": _cmd_shares,
    "index": _cmd_index,
    "verify": _cmd_verify,
    "ball": _cmd_ball,
}


def run(argv) -> int:
    """Parse arguments, dispatch, and map errors to exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return _HANDLERS[args.command](args)
    except CesDemandError as exc:
        print(f"{_TOOL}: error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    console_main()
