"""Scenario files: JSON configs naming goods, one aggregator tree, and
price/income/utility scenarios.

Schema::

    {
      "goods": [{"id": 0, "name": "domestic"}, ...],
      "tree": {"aggregator": "ces", "r": 0.5, "children": [{"good": 0}, ...]}
              | {"aggregator": "cobb_douglas", "weights": [...], "children": [...]}
              | {"good": 2},
      "scenarios": [
        {"name": "base", "prices": {"0": 1.0, "1": 4.0},
         "income": 10.0, "utility": 1.0}
      ]
    }

Good ids must be 0..n-1; prices may be keyed by id or by good name; weights
are optional on "ces" nodes and mandatory on "cobb_douglas" nodes.  Parse
errors carry a location such as ``flat.json:3:7`` or
``tree.children[1].weights``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .exponents import Exponent
from .norms import WeightVector
from .trees import Leaf, NestTree, Node, NodeIndexing, validate_tree


@dataclass(frozen=True)
class Good:
    id: int
    name: str


@dataclass(frozen=True)
class Scenario:
    name: str
    prices: np.ndarray
    income: float | None = None
    utility: float | None = None


@dataclass(frozen=True)
class ScenarioFile:
    goods: tuple[Good, ...]
    tree: Node
    scenarios: dict[str, Scenario]
    indexing: NodeIndexing

    @property
    def n_goods(self) -> int:
        return len(self.goods)


def _expect(obj, typ, loc, what):
    if not isinstance(obj, typ) or isinstance(obj, bool) and typ is not bool:
        raise ConfigError(f"expected {what}", loc)
    return obj


def _positive_number(value, loc):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError("expected a number", loc)
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise ConfigError(f"must be finite and > 0, got {value!r}", loc)
    return value


def parse_tree(obj, loc="tree") -> NestTree:
    _expect(obj, dict, loc, "an object")
    if "good" in obj:
        extra = set(obj) - {"good"}
        if extra:
            raise ConfigError(f"leaf has unexpected keys {sorted(extra)}", loc)
        good = obj["good"]
        if isinstance(good, bool) or not isinstance(good, int):
            raise ConfigError("leaf good id must be an integer", f"{loc}.good")
        return Leaf(good)
    kind = obj.get("aggregator")
    if kind not in ("ces", "cobb_douglas"):
        raise ConfigError(
            f"aggregator must be 'ces' or 'cobb_douglas', got {kind!r}",
            f"{loc}.aggregator",
        )
    if kind == "ces":
        if "r" not in obj:
            raise ConfigError("ces node needs an exponent r", f"{loc}.r")
        r = obj["r"]
        if isinstance(r, bool) or not isinstance(r, (int, float)):
            raise ConfigError("r must be a number", f"{loc}.r")
        try:
            e = Exponent.finite(float(r))
        except Exception as exc:
            raise ConfigError(str(exc), f"{loc}.r") from None
    else:
        if "r" in obj:
            raise ConfigError("cobb_douglas node takes weights, not r", f"{loc}.r")
        e = Exponent.cobb_douglas()
    weights = None
    if "weights" in obj:
        w = _expect(obj["weights"], list, f"{loc}.weights", "a list of weights")
        try:
            weights = WeightVector(tuple(float(t) for t in w))
        except Exception as exc:
            raise ConfigError(str(exc), f"{loc}.weights") from None
    children_obj = obj.get("children")
    if not isinstance(children_obj, list) or not children_obj:
        raise ConfigError("node needs a nonempty children list", f"{loc}.children")
    children = tuple(
        parse_tree(c, f"{loc}.children[{i}]") for i, c in enumerate(children_obj)
    )
    try:
        return Node(e, children, weights)
    except Exception as exc:
        raise ConfigError(str(exc), loc) from None


def tree_to_jsonable(tree: NestTree) -> dict:
    """Inverse of parse_tree; used for result documents and worst-case dumps."""
    if isinstance(tree, Leaf):
        return {"good": tree.good}
    out: dict = {}
    if tree.aggregator.kind == "finite":
        out["aggregator"] = "ces"
        out["r"] = tree.aggregator.r
    else:
        out["aggregator"] = tree.aggregator.kind
    if tree.weights is not None:
        out["weights"] = list(tree.weights.theta)
    out["children"] = [tree_to_jsonable(c) for c in tree.children]
    return out


def parse_scenario_file(obj, source: str = "<memory>") -> ScenarioFile:
    _expect(obj, dict, source, "a JSON object")

    goods_obj = obj.get("goods")
    if not isinstance(goods_obj, list) or not goods_obj:
        raise ConfigError("needs a nonempty goods list", f"{source}: goods")
    goods = []
    for i, g in enumerate(goods_obj):
        loc = f"goods[{i}]"
        _expect(g, dict, loc, "an object with id and name")
        gid = g.get("id")
        if isinstance(gid, bool) or not isinstance(gid, int):
            raise ConfigError("good id must be an integer", f"{loc}.id")
        name = g.get("name")
        if not isinstance(name, str) or not name:
            raise ConfigError("good name must be a nonempty string", f"{loc}.name")
        goods.append(Good(gid, name))
    n = len(goods)
    ids = sorted(g.id for g in goods)
    if ids != list(range(n)):
        raise ConfigError(f"good ids must be exactly 0..{n - 1}, got {ids}", "goods")
    names = [g.name for g in goods]
    if len(set(names)) != n:
        raise ConfigError("good names must be unique", "goods")
    by_name = {g.name: g.id for g in goods}

    tree = parse_tree(obj.get("tree"), "tree")
    if isinstance(tree, Leaf):
        raise ConfigError("the top-level tree must be an aggregator node", "tree")
    indexing = validate_tree(tree, n)

    scenarios_obj = obj.get("scenarios")
    if not isinstance(scenarios_obj, list) or not scenarios_obj:
        raise ConfigError("needs a nonempty scenarios list", "scenarios")
    scenarios: dict[str, Scenario] = {}
    for i, sc in enumerate(scenarios_obj):
        loc = f"scenarios[{i}]"
        _expect(sc, dict, loc, "a scenario object")
        name = sc.get("name")
        if not isinstance(name, str) or not name:
            raise ConfigError("scenario needs a nonempty name", f"{loc}.name")
        if name in scenarios:
            raise ConfigError(f"duplicate scenario name {name!r}", f"{loc}.name")
        prices_obj = sc.get("prices")
        _expect(prices_obj, dict, f"{loc}.prices", "a map of good id/name to price")
        prices = np.zeros(n, dtype=np.float64)
        seen = set()
        for key, value in prices_obj.items():
            ploc = f"{loc}.prices[{key!r}]"
            if key in by_name:
                gid = by_name[key]
            else:
                try:
                    gid = int(key)
                except (TypeError, ValueError):
                    raise ConfigError(f"unknown good {key!r}", ploc) from None
                if gid < 0 or gid >= n:
                    raise ConfigError(f"good id {gid} outside 0..{n - 1}", ploc)
            if gid in seen:
                raise ConfigError(f"good {key!r} priced twice", ploc)
            seen.add(gid)
            prices[gid] = _positive_number(value, ploc)
        if len(seen) != n:
            missing = sorted(set(range(n)) - seen)
            raise ConfigError(f"missing prices for goods {missing}", f"{loc}.prices")
        income = utility = None
        if "income" in sc:
            income = _positive_number(sc["income"], f"{loc}.income")
        if "utility" in sc:
            utility = _positive_number(sc["utility"], f"{loc}.utility")
        scenarios[name] = Scenario(name=name, prices=prices, income=income, utility=utility)

    return ScenarioFile(
        goods=tuple(goods), tree=tree, scenarios=scenarios, indexing=indexing
    )


def load_scenario_file(path) -> ScenarioFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(str(exc), str(path)) from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"invalid JSON: {exc.msg}", f"{path}:{exc.lineno}:{exc.colno}"
        ) from None
    return parse_scenario_file(obj, source=str(path))
