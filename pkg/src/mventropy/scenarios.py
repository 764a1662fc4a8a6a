"""Declarative scenario runner and randomized property suites.

A scenario is a single JSON document with sections ``carrier`` / ``map`` /
``measures`` / ``partitions`` / ``covers`` / ``params`` / ``checks``.  All
rationals are written as ``"p/q"`` strings and interval sets use the piece
literal syntax of :mod:`mventropy.intervals`.  Reports are deterministic:
given the same scenario, seed and package version the JSON report and CSV
tables are byte-identical.

Exit codes: 0 all checks hold, 1 at least one check failed, 2 the scenario
could not be parsed or configured, 3 an enumeration cap was exceeded.
"""

from __future__ import annotations

import csv
import json
import math
import random
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Optional

from . import __version__ as _version
from .carriers import (
    FiniteMetricSpace,
    FiniteRelation,
    PLBranch,
    PLFunc,
    PLMultiMap,
    compose,
    discretize,
)
from .covers import (
    Cover,
    OpennessViolation,
    cover_entropy_estimate,
    cover_entropy_ladder,
    interval_ball_cover,
    iterate_refinement_check,
    minimal_subcover,
    pullback_cover,
)
from .estimates import EntropyEstimate
from .intervals import IntervalSet, as_fraction
from .library import endpoint_pair_map, tent_map, two_point_full_shift
from .measures import (
    find_invariant_measure,
    interval_algebra_family,
    strong_invariance_report,
    verify_invariance_bruteforce,
    verify_invariance_flow,
)
from .orbits import (
    OrbitCapError,
    bottleneck_distance_matrix,
    bottleneck_entropy_estimates,
    bottleneck_separated_count,
    bottleneck_spanning_count,
    hyperspace_entropy_estimate,
    orbit_entropy_estimates,
    orbit_separated_count,
    orbit_spanning_count,
)
from .partitions import (
    FiniteMeasure,
    IntervalMeasure,
    OrderedPartition,
    entropy_le_log_count_check,
    metric_entropy_estimate,
    nz_count,
    partition_entropy,
    refinement_sequence,
)
from .preimage import iterated_large_preimage, large_preimage, small_preimage
from .selections import enumerate_selections, sandwich_report
from . import randgen
from .carriers import singleton_relation


class ScenarioError(ValueError):
    """Malformed scenario document or configuration."""


EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_CAP_EXCEEDED = 3


# ---------------------------------------------------------------------------
# document -> objects
# ---------------------------------------------------------------------------


def _build_map(doc: dict):
    carrier = doc.get("carrier", {"type": "interval"})
    kind = carrier.get("type", "interval")
    mp = doc.get("map")
    if mp is None:
        raise ScenarioError("scenario needs a map section")
    if kind == "interval":
        if "library" in mp:
            builders = {"tent": tent_map, "endpoint-pair": endpoint_pair_map}
            try:
                return builders[mp["library"]]()
            except KeyError:
                raise ScenarioError(f"unknown library map {mp['library']!r}")
        branches = []
        for b in mp.get("branches", []):
            domain = IntervalSet.parse(b["domain"])
            lower = PLFunc([(as_fraction(x), as_fraction(y)) for x, y in b["lower"]])
            upper = None
            if "upper" in b:
                upper = PLFunc([(as_fraction(x), as_fraction(y)) for x, y in b["upper"]])
            branches.append(PLBranch(domain, lower, upper))
        if not branches:
            raise ScenarioError("interval map needs branches")
        return PLMultiMap(branches)
    if kind == "finite":
        if "metric" in carrier:
            space = FiniteMetricSpace(
                [[as_fraction(v) for v in row] for row in carrier["metric"]]
            )
        elif "line_points" in carrier:
            space = FiniteMetricSpace.from_line_points(
                [as_fraction(p) for p in carrier["line_points"]]
            )
        elif "uniform" in carrier:
            space = FiniteMetricSpace.uniform(int(carrier["uniform"]))
        else:
            raise ScenarioError("finite carrier needs metric/line_points/uniform")
        return FiniteRelation(space, mp["values"])
    raise ScenarioError(f"unknown carrier type {kind!r}")


def _build_measures(doc: dict, phi) -> dict:
    out = {}
    for name, cfg in (doc.get("measures") or {}).items():
        if cfg == "lebesgue":
            out[name] = IntervalMeasure.lebesgue()
        elif "weights" in cfg:
            out[name] = FiniteMeasure([as_fraction(w) for w in cfg["weights"]])
        elif "density" in cfg or "atoms" in cfg:
            out[name] = IntervalMeasure(
                cells=[
                    (as_fraction(a), as_fraction(b), as_fraction(v))
                    for a, b, v in cfg.get("density", [[0, 1, 1]])
                ],
                atoms=[
                    (as_fraction(p), as_fraction(w)) for p, w in cfg.get("atoms", [])
                ],
            )
        else:
            raise ScenarioError(f"bad measure {name!r}")
    return out


def _build_partitions(doc: dict, phi) -> dict:
    out = {}
    for name, cfg in (doc.get("partitions") or {}).items():
        if isinstance(cfg, dict) and "uniform_blocks" in cfg:
            out[name] = OrderedPartition.uniform_blocks(int(cfg["uniform_blocks"]))
        elif isinstance(cfg, list) and cfg and isinstance(cfg[0], str):
            out[name] = OrderedPartition.from_literals(cfg)
        elif isinstance(cfg, list):
            out[name] = OrderedPartition(
                [sum(1 << i for i in piece) for piece in cfg], phi.universe
            )
        else:
            raise ScenarioError(f"bad partition {name!r}")
    return out


def _build_covers(doc: dict, phi) -> dict:
    out = {}
    for name, cfg in (doc.get("covers") or {}).items():
        if isinstance(cfg, dict) and "balls" in cfg:
            out[name] = interval_ball_cover(as_fraction(cfg["balls"]))
        elif isinstance(cfg, list) and cfg and isinstance(cfg[0], str):
            out[name] = Cover.from_literals(cfg)
        elif isinstance(cfg, list):
            out[name] = Cover(
                [sum(1 << i for i in m) for m in cfg], phi.universe
            )
        else:
            raise ScenarioError(f"bad cover {name!r}")
    return out


def _number(x) -> float:
    """Numbers in expectations: plain floats or {"log": k}."""
    if isinstance(x, dict) and set(x) == {"log"}:
        return math.log(float(x["log"]))
    return float(x)


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------


class _Ctx:
    def __init__(self, doc: dict, out_dir: Optional[Path]):
        self.doc = doc
        self.phi = _build_map(doc)
        self.measures = _build_measures(doc, self.phi)
        self.partitions = _build_partitions(doc, self.phi)
        self.covers = _build_covers(doc, self.phi)
        self.params = dict(doc.get("params") or {})
        self.out_dir = out_dir
        self.name = doc.get("name", "scenario")

    def param(self, key: str, default):
        return self.params.get(key, default)

    def csv(self, stem: str, header: list[str], rows: list[list]) -> None:
        if self.out_dir is None:
            return
        path = self.out_dir / f"{self.name}__{stem}.csv"
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            w.writerows(rows)


def _check_disjointify_equals(ctx: _Ctx, cfg: dict) -> dict:
    part = ctx.partitions[cfg["partition"]]
    from .partitions import disjointify

    got = disjointify(ctx.phi, part, int(cfg["k"]))
    got_lits = [str(p) for p in got.pieces]
    ok = got_lits == list(cfg["expected"])
    return {"ok": ok, "exact": True, "details": {"got": got_lits, "expected": cfg["expected"]}}


def _check_refinement_cards(ctx: _Ctx, cfg: dict) -> dict:
    part = ctx.partitions[cfg["partition"]]
    depth = int(cfg["depth"])
    seq = refinement_sequence(ctx.phi, part, depth)
    cards = [len(p) for p in seq]
    ok = cards == list(cfg["expected"])
    ctx.csv(
        f"refinement_{cfg['partition']}",
        ["n", "card"],
        [[n + 1, c] for n, c in enumerate(cards)],
    )
    return {"ok": ok, "exact": True, "details": {"cards": cards, "expected": cfg["expected"]}}


def _check_cards_compare(ctx: _Ctx, cfg: dict) -> dict:
    left = refinement_sequence(
        ctx.phi, ctx.partitions[cfg["left"]], int(cfg["left_depth"])
    )[-1]
    right = refinement_sequence(
        ctx.phi, ctx.partitions[cfg["right"]], int(cfg["right_depth"])
    )[-1]
    rel = cfg.get("relation", "gt")
    lv, rv = len(left), len(right)
    ok = {"gt": lv > rv, "ge": lv >= rv, "eq": lv == rv}[rel]
    return {"ok": ok, "exact": True, "details": {"left": lv, "relation": rel, "right": rv}}


def _check_strong_invariance(ctx: _Ctx, cfg: dict) -> dict:
    mu = ctx.measures[cfg["measure"]]
    if isinstance(ctx.phi, FiniteRelation):
        family = None
    else:
        family = interval_algebra_family(int(cfg.get("family_grid", 22)))
    rep = strong_invariance_report(mu, ctx.phi, family)
    ok = rep.equality_ok == bool(cfg.get("expect", True))
    if cfg.get("expect_equivalence") is not None:
        ok = ok and rep.equivalence_ok == bool(cfg["expect_equivalence"])
    return {"ok": ok, "exact": True, "details": rep.to_json()}


def _estimate_rows(est: EntropyEstimate) -> list[list]:
    return [
        [n, est.count_at(n) if est.counts else "", v]
        for n, v in est.values
    ]


def _check_orbit_entropy(ctx: _Ctx, cfg: dict) -> dict:
    eps = as_fraction(cfg["eps"])
    depth = int(cfg.get("depth", ctx.param("max_n", 8)))
    cap = int(ctx.param("orbit_cap", 10_000_000))
    est = orbit_entropy_estimates(ctx.phi, [eps], depth, cap=cap)[eps]
    sep, span = est["sep"], est["span"]
    ok = sep.exact and span.exact
    details: dict[str, Any] = {"sep": sep.to_json(), "span": span.to_json()}
    if "expect_sep_counts" in cfg:
        ok = ok and [c for _, c in sep.counts] == list(cfg["expect_sep_counts"])
    if "expect_reported" in cfg:
        tol = float(cfg.get("tol", 1e-9))
        ok = ok and abs(sep.reported - _number(cfg["expect_reported"])) <= tol
    if "expect_growth" in cfg:
        tol = float(cfg.get("tol", 1e-9))
        ok = ok and abs(sep.growth - _number(cfg["expect_growth"])) <= tol
    ok = ok and all(
        span.count_at(n) <= sep.count_at(n) for n in range(1, depth + 1)
    )
    ctx.csv(
        f"orbit_eps_{eps.numerator}_{eps.denominator}",
        ["n", "sep", "span", "sep_value", "span_value", "exact"],
        [
            [n, sep.count_at(n), span.count_at(n), sep.value_at(n), span.value_at(n), sep.exact and span.exact]
            for n in range(1, depth + 1)
        ],
    )
    return {"ok": ok, "exact": sep.exact and span.exact, "details": details}


def _check_bottleneck_entropy(ctx: _Ctx, cfg: dict) -> dict:
    eps = as_fraction(cfg["eps"])
    depth = int(cfg.get("depth", ctx.param("max_n", 8)))
    est = bottleneck_entropy_estimates(ctx.phi, [eps], depth)[eps]
    sep, span = est["sep"], est["span"]
    ok = sep.exact and span.exact
    if "expect_growth" in cfg:
        tol = float(cfg.get("tol", 1e-9))
        ok = ok and abs(sep.growth - _number(cfg["expect_growth"])) <= tol
    ok = ok and all(span.count_at(n) <= sep.count_at(n) for n in range(1, depth + 1))
    return {"ok": ok, "exact": sep.exact and span.exact, "details": {"sep": sep.to_json(), "span": span.to_json()}}


def _check_cover_entropy(ctx: _Ctx, cfg: dict) -> dict:
    depth = int(cfg.get("depth", ctx.param("max_n", 8)))
    if "cover" in cfg:
        est = cover_entropy_estimate(ctx.phi, ctx.covers[cfg["cover"]], depth)
    else:
        eps = as_fraction(cfg["eps"])
        est = cover_entropy_ladder(ctx.phi, [eps], depth)[eps]
    ok = est.exact
    if "expect_growth" in cfg:
        tol = float(cfg.get("tol", 1e-9))
        ok = ok and abs(est.growth - _number(cfg["expect_growth"])) <= tol
    if "expect_counts" in cfg:
        ok = ok and [c for _, c in est.counts] == list(cfg["expect_counts"])
    ctx.csv(
        "cover",
        ["n", "subcover", "value", "exact"],
        [[n, est.count_at(n), v, est.exact] for n, v in est.values],
    )
    return {"ok": ok, "exact": est.exact, "details": est.to_json()}


def _check_entropy_order(ctx: _Ctx, cfg: dict) -> dict:
    """Per-level cover values never above orbit separated values (diagnostic
    ordering of the two topological entropies at matched eps)."""
    eps = as_fraction(cfg["eps"])
    depth = int(cfg.get("depth", ctx.param("max_n", 8)))
    orb = orbit_entropy_estimates(ctx.phi, [eps], depth)[eps]["sep"]
    cov = cover_entropy_ladder(ctx.phi, [eps], depth)[eps]
    tol = float(cfg.get("tol", 1e-12))
    level_ok = all(
        cov.value_at(n) <= orb.value_at(n) + tol for n in range(1, depth + 1)
    )
    rep_ok = cov.reported <= orb.reported + tol
    return {
        "ok": level_ok and rep_ok,
        "exact": orb.exact and cov.exact,
        "details": {"cover_reported": cov.reported, "orbit_sep_reported": orb.reported},
    }


def _check_pullback_openness(ctx: _Ctx, cfg: dict) -> dict:
    cover = ctx.covers[cfg["cover"]]
    j = int(cfg.get("j", 1))
    try:
        pullback_cover(ctx.phi, cover, j)
    except OpennessViolation as exc:
        got = {
            "member": str(exc.member),
            "source": None if exc.source is None else str(exc.source),
        }
        ok = bool(cfg.get("expect_violation", True))
        if "witness_member" in cfg:
            ok = ok and got["member"] == cfg["witness_member"]
        return {"ok": ok, "exact": True, "details": got}
    return {
        "ok": not cfg.get("expect_violation", True),
        "exact": True,
        "details": {"member": None},
    }


def _check_metric_entropy(ctx: _Ctx, cfg: dict) -> dict:
    mu = ctx.measures[cfg["measure"]]
    part = ctx.partitions[cfg["partition"]]
    depth = int(cfg.get("depth", ctx.param("max_n", 8)))
    est = metric_entropy_estimate(mu, ctx.phi, part, depth)
    ok = True
    if "expect_cards" in cfg:
        ok = ok and [c for _, c in est.counts] == list(cfg["expect_cards"])
    if "card_bound_linear" in cfg:
        a, b = cfg["card_bound_linear"]
        ok = ok and all(c <= a + b * n for n, c in est.counts)
    ctx.csv(
        f"metric_{cfg['measure']}_{cfg['partition']}",
        ["n", "card", "H", "H_over_n"],
        [[n, est.count_at(n), v * n, v] for n, v in est.values],
    )
    return {"ok": ok, "exact": True, "details": est.to_json()}


def _check_invariance(ctx: _Ctx, cfg: dict) -> dict:
    mu = ctx.measures[cfg["measure"]]
    method = cfg.get("method", "flow")
    res = (
        verify_invariance_flow(mu, ctx.phi)
        if method == "flow"
        else verify_invariance_bruteforce(mu, ctx.phi)
    )
    ok = res.ok == bool(cfg.get("expect", True))
    return {"ok": ok, "exact": True, "details": res.to_json()}


def _check_sandwich(ctx: _Ctx, cfg: dict) -> dict:
    mus = [ctx.measures[name] for name in cfg.get("measures", [])]
    eps_ladder = [as_fraction(e) for e in cfg.get("eps_ladder", ["1/2", "1/4"])]
    depth = int(cfg.get("depth", 3))
    rep = sandwich_report(
        ctx.phi,
        mus,
        eps_ladder,
        depth,
        selection_cap=int(cfg.get("selection_cap", 64)),
    )
    rows = [
        [r["name"], r["level"], r["lhs"], r["rhs"], r["verdict"], r["exact"]]
        for r in rep["rows"]
    ]
    ctx.csv("sandwich", ["name", "level", "lhs", "rhs", "verdict", "exact"], rows)
    return {"ok": rep["ok"], "exact": True, "details": {"rows": len(rep["rows"]), "selections": rep["selections"]}}


def _check_hyperspace(ctx: _Ctx, cfg: dict) -> dict:
    eps = as_fraction(cfg["eps"])
    depth = int(cfg.get("depth", 4))
    est = hyperspace_entropy_estimate(ctx.phi, [eps], depth, cap=int(cfg.get("cap", 12)))
    sep = est[eps]["sep"]
    ok = sep.exact
    if cfg.get("expect_embeds_base", False):
        base = orbit_entropy_estimates(ctx.phi, [eps], depth)[eps]["sep"]
        ok = ok and all(
            sep.count_at(n) >= base.count_at(n) for n in range(1, depth + 1)
        )
    if "expect_growth" in cfg:
        tol = float(cfg.get("tol", 1e-9))
        ok = ok and abs(sep.growth - _number(cfg["expect_growth"])) <= tol
    return {"ok": ok, "exact": sep.exact, "details": sep.to_json()}


_CHECKS: dict[str, Callable[[_Ctx, dict], dict]] = {
    "disjointify-equals": _check_disjointify_equals,
    "refinement-cards": _check_refinement_cards,
    "cards-compare": _check_cards_compare,
    "strong-invariance": _check_strong_invariance,
    "orbit-entropy": _check_orbit_entropy,
    "bottleneck-entropy": _check_bottleneck_entropy,
    "cover-entropy": _check_cover_entropy,
    "entropy-order": _check_entropy_order,
    "pullback-openness": _check_pullback_openness,
    "metric-entropy": _check_metric_entropy,
    "invariance": _check_invariance,
    "sandwich": _check_sandwich,
    "hyperspace": _check_hyperspace,
}


# ---------------------------------------------------------------------------
# built-in scenarios
# ---------------------------------------------------------------------------

BUILTIN_SCENARIOS: dict[str, dict] = {
    "tent-counterexample": {
        "name": "tent-counterexample",
        "carrier": {"type": "interval"},
        "map": {"library": "tent"},
        "measures": {"lebesgue": "lebesgue"},
        "partitions": {
            "P": ["[0,1/2]", "(1/2,1]"],
            "beta": ["(0,1)", "{0}", "{1}"],
        },
        "checks": [
            {
                "check": "disjointify-equals",
                "partition": "P",
                "k": 1,
                "expected": ["[0,1/4] u [3/4,1]", "(1/4,3/4)"],
            },
            {"check": "refinement-cards", "partition": "P", "depth": 2, "expected": [2, 4]},
            {
                "check": "disjointify-equals",
                "partition": "beta",
                "k": 1,
                "expected": ["[0,1]"],
            },
            {"check": "refinement-cards", "partition": "beta", "depth": 2, "expected": [3, 3]},
            {
                "check": "cards-compare",
                "left": "P",
                "left_depth": 2,
                "right": "beta",
                "right_depth": 2,
                "relation": "gt",
            },
            {"check": "metric-entropy", "measure": "lebesgue", "partition": "P", "depth": 8,
             "card_bound_linear": [0, 4]},
        ],
    },
    "endpoint-pair-strong-invariance": {
        "name": "endpoint-pair-strong-invariance",
        "carrier": {"type": "interval"},
        "map": {"library": "endpoint-pair"},
        "measures": {"lebesgue": "lebesgue"},
        "checks": [
            {
                "check": "strong-invariance",
                "measure": "lebesgue",
                "family_grid": 22,
                "expect": True,
                "expect_equivalence": True,
            },
        ],
    },
    "endpoint-pair-openness": {
        "name": "endpoint-pair-openness",
        "carrier": {"type": "interval"},
        "map": {"library": "endpoint-pair"},
        "covers": {"U": ["[0,5/8)", "(3/8,1]"]},
        "checks": [
            {
                "check": "pullback-openness",
                "cover": "U",
                "j": 1,
                "expect_violation": True,
                "witness_member": "[0,5/8) u {1}",
            },
        ],
    },
    "full-shift-2": {
        "name": "full-shift-2",
        "carrier": {"type": "finite", "uniform": 2},
        "map": {"values": [[0, 1], [0, 1]]},
        "measures": {"uniform": {"weights": ["1/2", "1/2"]}},
        "checks": [
            {
                "check": "orbit-entropy",
                "eps": "1/2",
                "depth": 10,
                "expect_sep_counts": [2, 4, 8, 16, 32, 64, 128, 256, 512, 1024],
                "expect_reported": {"log": 2},
                "tol": 1e-9,
            },
            {"check": "bottleneck-entropy", "eps": "1/2", "depth": 10, "expect_growth": 0.0},
            {"check": "cover-entropy", "eps": "1/2", "depth": 10, "expect_growth": 0.0},
            {"check": "entropy-order", "eps": "1/2", "depth": 10},
            {"check": "invariance", "measure": "uniform", "method": "flow", "expect": True},
        ],
    },
    "sandwich-demo": {
        "name": "sandwich-demo",
        "carrier": {"type": "finite", "line_points": ["0", "1/3", "2/3", "1"]},
        "map": {"values": [[0, 1], [2], [1, 3], [3]]},
        "measures": {"stationary": {"weights": ["0", "0", "0", "1"]}},
        "checks": [
            {
                "check": "sandwich",
                "measures": ["stationary"],
                "eps_ladder": ["1/2", "1/4"],
                "depth": 3,
            },
            {"check": "hyperspace", "eps": "1/4", "depth": 3, "expect_embeds_base": True},
        ],
    },
}


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------


def load_scenario(source) -> dict:
    if isinstance(source, dict):
        return source
    name = str(source)
    if name in BUILTIN_SCENARIOS:
        return BUILTIN_SCENARIOS[name]
    path = Path(name)
    if not path.exists():
        raise ScenarioError(f"no such scenario file or built-in: {name}")
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid scenario JSON: {exc}") from exc


def run_scenario(
    source,
    out_dir: Optional[str] = None,
    overrides: Optional[dict] = None,
) -> tuple[dict, int]:
    try:
        doc = load_scenario(source)
        if overrides:
            doc = dict(doc)
            doc["params"] = {**(doc.get("params") or {}), **overrides}
        out_path = None
        if out_dir is not None:
            out_path = Path(out_dir)
            out_path.mkdir(parents=True, exist_ok=True)
        ctx = _Ctx(doc, out_path)
        checks = doc.get("checks", [])
        records = []
        code = EXIT_OK
        for i, cfg in enumerate(checks):
            kind = cfg.get("check")
            if kind not in _CHECKS:
                raise ScenarioError(f"unknown check kind {kind!r}")
            try:
                rec = _CHECKS[kind](ctx, cfg)
            except OrbitCapError as exc:
                report = _assemble_report(ctx, records, ok=False)
                report["error"] = str(exc)
                _write_report(ctx, report)
                return report, EXIT_CAP_EXCEEDED
            rec["check"] = kind
            rec["index"] = i
            records.append(rec)
            if not rec["ok"]:
                code = EXIT_CHECK_FAILED
        report = _assemble_report(ctx, records, ok=(code == EXIT_OK))
        _write_report(ctx, report)
        return report, code
    except (ScenarioError, KeyError, TypeError) as exc:
        return {"ok": False, "error": f"{type(exc).__name__}: {exc}"}, EXIT_PARSE_ERROR


def _assemble_report(ctx: _Ctx, records: list[dict], ok: bool) -> dict:
    return {
        "scenario": ctx.name,
        "version": _version,
        "params": ctx.params,
        "ok": ok,
        "checks": records,
    }


def _write_report(ctx: _Ctx, report: dict) -> None:
    if ctx.out_dir is None:
        return
    path = ctx.out_dir / f"{ctx.name}__report.json"
    path.write_text(json.dumps(report, indent=2, sort_keys=True, default=str) + "\n")


# ---------------------------------------------------------------------------
# property suites
# ---------------------------------------------------------------------------


def _suite_interval_algebra(seed: int, count: int) -> dict:
    rng = random.Random(seed)
    failures = []
    for case in range(count):
        a = randgen.random_intervalset(rng)
        b = randgen.random_intervalset(rng)
        if a.union(b).lebesgue() + a.intersect(b).lebesgue() != a.lebesgue() + b.lebesgue():
            failures.append({"case": case, "law": "additivity", "a": str(a), "b": str(b)})
        if a.complement().complement() != a:
            failures.append({"case": case, "law": "double-complement", "a": str(a)})
        if IntervalSet.parse(str(a)) != a:
            failures.append({"case": case, "law": "round-trip", "a": str(a)})
        for _ in range(20):
            x = Fraction(rng.randrange(0, 33), 32)
            if a.union(b).contains(x) != (a.contains(x) or b.contains(x)):
                failures.append({"case": case, "law": "union-membership", "x": str(x)})
            if a.intersect(b).contains(x) != (a.contains(x) and b.contains(x)):
                failures.append({"case": case, "law": "intersect-membership", "x": str(x)})
            if a.difference(b).contains(x) != (a.contains(x) and not b.contains(x)):
                failures.append({"case": case, "law": "difference-membership", "x": str(x)})
    return _suite_report("interval-algebra", seed, count, failures)


def _suite_entropy_le_log_count(seed: int, count: int) -> dict:
    rng = random.Random(seed)
    failures = []
    for case in range(count):
        n = rng.randint(2, 8)
        mu = randgen.random_measure(rng, n)
        part = randgen.random_partition_masks(rng, n, rng.randint(1, n))
        if not entropy_le_log_count_check(mu, part):
            failures.append({"case": case, "n": n})
    return _suite_report("entropy-le-log-count", seed, count, failures)


def _suite_span_le_sep(seed: int, count: int) -> dict:
    rng = random.Random(seed)
    failures = []
    for case in range(count):
        n = rng.randint(2, 6)
        phi = randgen.random_relation(rng, n)
        for eps in (Fraction(1, 2), Fraction(1, 4)):
            for depth in (1, 2, 3):
                s = orbit_separated_count(phi, eps, depth)
                r = orbit_spanning_count(phi, eps, depth)
                if not (s.exact and r.exact and r.value <= s.value):
                    failures.append({"case": case, "family": "orbit", "eps": str(eps), "n": depth})
                sb = bottleneck_separated_count(phi, eps, depth)
                rb = bottleneck_spanning_count(phi, eps, depth)
                if not (sb.exact and rb.exact and rb.value <= sb.value):
                    failures.append({"case": case, "family": "bottleneck", "eps": str(eps), "n": depth})
    return _suite_report("span-le-sep", seed, count, failures)


def _suite_iterate_refinement(seed: int, count: int) -> dict:
    rng = random.Random(seed)
    failures = []
    for case in range(count):
        n = rng.randint(2, 6)
        phi = randgen.random_relation(rng, n)
        cover = randgen.random_cover_masks(rng, n, rng.randint(2, 4))
        res = iterate_refinement_check(
            phi, cover, n=rng.randint(1, 3), k=rng.randint(1, 3)
        )
        if not res.ok:
            failures.append({"case": case})
    return _suite_report("iterate-refinement", seed, count, failures)


def _suite_invariance_agreement(seed: int, count: int) -> dict:
    rng = random.Random(seed)
    failures = []
    for case in range(count):
        n = rng.randint(2, 6)
        phi = randgen.random_relation(rng, n)
        mu = randgen.random_measure(rng, n)
        bf = verify_invariance_bruteforce(mu, phi)
        fl = verify_invariance_flow(mu, phi)
        if bf.ok != fl.ok:
            failures.append({"case": case, "bruteforce": bf.ok, "flow": fl.ok})
    return _suite_report("invariance-agreement", seed, count, failures)


def _suite_find_invariant(seed: int, count: int) -> dict:
    rng = random.Random(seed)
    failures = []
    for case in range(count):
        n = rng.randint(2, 7)
        phi = randgen.random_relation(rng, n)
        mu = find_invariant_measure(phi)
        if not verify_invariance_flow(mu, phi).ok:
            failures.append({"case": case})
    return _suite_report("find-invariant", seed, count, failures)


def _suite_selection_order(seed: int, count: int) -> dict:
    rng = random.Random(seed)
    failures = []
    for case in range(count):
        n = rng.randint(2, 5)
        phi = randgen.random_selectable_relation(rng, n, 64)
        fam = enumerate_selections(phi, 64)
        for f in fam:
            rel = singleton_relation(phi.space, f)
            for eps in (Fraction(1, 2),):
                for depth in (1, 2, 3):
                    if (
                        orbit_separated_count(rel, eps, depth).value
                        > orbit_separated_count(phi, eps, depth).value
                    ):
                        failures.append({"case": case, "law": "orbit", "f": list(f)})
                    if (
                        bottleneck_separated_count(phi, eps, depth).value
                        > bottleneck_separated_count(rel, eps, depth).value
                    ):
                        failures.append({"case": case, "law": "bottleneck", "f": list(f)})
    return _suite_report("selection-order", seed, count, failures)


def _suite_preimage_laws(seed: int, count: int) -> dict:
    rng = random.Random(seed)
    failures = []
    for case in range(count):
        n = rng.randint(2, 6)
        phi = randgen.random_relation(rng, n)
        u = phi.universe
        a = rng.randrange(1, u + 1)
        b = rng.randrange(1, u + 1)
        if large_preimage(phi, a | b) != large_preimage(phi, a) | large_preimage(phi, b):
            failures.append({"case": case, "law": "union"})
        if large_preimage(phi, a & b) & ~(large_preimage(phi, a) & large_preimage(phi, b)):
            failures.append({"case": case, "law": "intersection-containment"})
        if small_preimage(phi, a) != (u & ~large_preimage(phi, u & ~a)):
            failures.append({"case": case, "law": "duality"})
    return _suite_report("preimage-laws", seed, count, failures)


def _suite_bottleneck_metric(seed: int, count: int) -> dict:
    rng = random.Random(seed)
    failures = []
    for case in range(count):
        n = rng.randint(2, 5)
        phi = randgen.random_relation(rng, n)
        for depth in (1, 2, 3):
            mat = bottleneck_distance_matrix(phi, depth)
            for i in range(n):
                for j in range(n):
                    if mat[i][j] != mat[j][i]:
                        failures.append({"case": case, "law": "symmetry"})
            if depth > 1:
                prev = bottleneck_distance_matrix(phi, depth - 1)
                for i in range(n):
                    for j in range(n):
                        if mat[i][j] < prev[i][j]:
                            failures.append({"case": case, "law": "monotone"})
    return _suite_report("bottleneck-metric", seed, count, failures)


def _suite_report(name: str, seed: int, count: int, failures: list) -> dict:
    return {
        "suite": name,
        "seed": seed,
        "count": count,
        "failures": failures[:20],
        "failure_count": len(failures),
        "ok": not failures,
    }


PROPERTY_SUITES: dict[str, Callable[[int, int], dict]] = {
    "interval-algebra": _suite_interval_algebra,
    "entropy-le-log-count": _suite_entropy_le_log_count,
    "span-le-sep": _suite_span_le_sep,
    "iterate-refinement": _suite_iterate_refinement,
    "invariance-agreement": _suite_invariance_agreement,
    "find-invariant": _suite_find_invariant,
    "selection-order": _suite_selection_order,
    "preimage-laws": _suite_preimage_laws,
    "bottleneck-metric": _suite_bottleneck_metric,
}


def run_property_suite(name: str, seed: int = 0, count: int = 100) -> dict:
    if name not in PROPERTY_SUITES:
        raise ScenarioError(f"unknown suite {name!r}")
    return PROPERTY_SUITES[name](seed, count)
