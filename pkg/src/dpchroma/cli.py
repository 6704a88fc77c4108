"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 capacity or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .cache import resolve_cache
from .chrompoly import (
    MAX_SUBSET_EDGES, classify_spanning_subgraphs, coefficient_report,
    deletion_contraction, whitney_expansion,
)
from .corpus import builtin_corpus
from .counter import (
    brute_force_count, count_colorings, inclusion_exclusion_count,
    verify_lemma_formulas2, verify_lemma_three,
)
from .cover import DEFAULT_BUDGET, canonical_cover, normalize_on_star, random_cover
from .dpfunction import cone_scan, dp_color_function, gap_table, verify_lemma_lower
from .chrompoly import chromatic_polynomial, evaluate
from .errors import CapacityError, PreconditionError
from .graphcore import Graph, GraphError, INF, cone, from_spec, girth
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

SUITES = ("coefficients", "lemma-formulas2", "lemma-three", "lemma-lower", "oracle")


@dataclass
class RunConfig:
    command: str
    graph: str | None
    m_lo: int
    m_hi: int
    budget: int
    jobs: int
    out: str | None
    fmt: str
    cache: str | None
    covers: int
    seed: int
    m_explicit: bool = False

    def __post_init__(self):
        if self.m_lo > self.m_hi:
            raise ValueError(f"empty m range {self.m_lo}..{self.m_hi}")
        if self.budget < 1 or self.jobs < 1:
            raise ValueError("--budget and --jobs must be >= 1")


def parse_m_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    k = int(text)
    return k, k


def _emit(cfg: RunConfig, result: dict, csv_rows=None) -> None:
    if cfg.fmt == "csv" and csv_rows is not None:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(csv_rows)
        text = buf.getvalue()
    else:
        doc = {
            "meta": {
                "command": cfg.command,
                "graph": cfg.graph,
                "version": __version__,
                "argv": sys.argv[1:],
                "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            },
            "result": result,
        }
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _graph(cfg: RunConfig) -> Graph:
    if not cfg.graph:
        raise GraphError("--graph is required")
    return from_spec(cfg.graph)


def _graph_meta(g: Graph) -> dict:
    out = {"n": g.n, "edges": [list(e) for e in g.edges]}
    if g.labels is not None:
        out["labels"] = list(g.labels)
    return out


# --- commands ---------------------------------------------------------------

def cmd_chrompoly(cfg: RunConfig) -> int:
    g = _graph(cfg)
    if g.s > MAX_SUBSET_EDGES:
        raise CapacityError(f"{g.s} edges exceeds MAX_SUBSET_EDGES={MAX_SUBSET_EDGES}",
                            required=g.s, limit=MAX_SUBSET_EDGES)
    w = whitney_expansion(g)
    d = deletion_contraction(g)
    result = {
        "graph": _graph_meta(g),
        "whitney": w.to_json(),
        "deletion_contraction": d.to_json(),
        "agree": w == d,
    }
    ok = w == d
    if g.is_connected():
        rep = coefficient_report(g, w)
        result["coefficient_report"] = rep.to_json()
        ok = ok and rep.passed
    _emit(cfg, result)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_dpmin(cfg: RunConfig) -> int:
    g = _graph(cfg)
    cache = resolve_cache(cfg.cache)
    p = chromatic_polynomial(g)
    rows = []
    for m in range(cfg.m_lo, cfg.m_hi + 1):
        dv = dp_color_function(g, m, cfg.budget, jobs=cfg.jobs, cache=cache)
        rows.append({"P": evaluate(p, m), **dv.to_json()})
    result = {"graph": _graph_meta(g), "rows": rows}
    csv_rows = [["m", "P", "P_DP"]] + [[r["m"], r["P"], r["value"]] for r in rows]
    _emit(cfg, result, csv_rows)
    return EXIT_OK


def cmd_gap(cfg: RunConfig) -> int:
    g = _graph(cfg)
    rep = gap_table(g, cfg.m_lo, cfg.m_hi, cfg.budget, jobs=cfg.jobs, cache=resolve_cache(cfg.cache))
    _emit(cfg, {"graph": _graph_meta(g), **rep.to_json()}, rep.csv_rows())
    ok = all(r.gap is None or r.gap >= 0 for r in rep.rows)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_cone(cfg: RunConfig) -> int:
    g = _graph(cfg)
    rep = cone_scan(g, cfg.m_lo, cfg.m_hi, cfg.budget, jobs=cfg.jobs, cache=resolve_cache(cfg.cache))
    _emit(cfg, {"graph": _graph_meta(g), **rep.to_json()}, rep.csv_rows())
    ok = all(r.P_DP is None or r.P_DP <= r.P for r in rep.rows)
    return EXIT_OK if ok else EXIT_FAIL


def _targets(cfg: RunConfig, corpus: str | None) -> list[tuple[str, Graph]]:
    if cfg.graph:
        return [(cfg.graph, from_spec(cfg.graph))]
    return builtin_corpus(corpus or "small")


def _suite_coefficients(name, g, cfg, rng) -> Report:
    rep = Report(f"coefficients[{name}]")
    if g.s > MAX_SUBSET_EDGES:
        rep.add("whitney == deletion-contraction", None, None, None, note="not checked: too many edges")
        return rep
    w, d = whitney_expansion(g), deletion_contraction(g)
    rep.add("whitney == deletion-contraction", str(d), str(w), w == d)
    if g.is_connected():
        rep.extend(coefficient_report(g, w))
    return rep


def _suite_formulas2(name, g, cfg, rng) -> Report:
    rep = Report(f"lemma-formulas2[{name}]")
    if girth(g) == INF or not g.is_connected():
        rep.add("applicable", "connected with a cycle", "acyclic or disconnected", None)
        return rep
    for m in range(cfg.m_lo, cfg.m_hi + 1):
        covers = [("canonical", canonical_cover(g, m))]
        covers += [(f"random{k}", random_cover(g, m, rng)) for k in range(cfg.covers)]
        for label, c in covers:
            rep.extend(verify_lemma_formulas2(c), prefix=f"m={m} {label}: ")
    return rep


def _suite_three(name, g, cfg, rng) -> Report:
    rep = Report(f"lemma-three[{name}]")
    w = g.n - 1
    if g.n < 4 or g.degree(w) != g.n - 1:
        rep.add("applicable", "cone with apex n-1", "not a cone", None)
        return rep
    star = {i for i, (u, v) in enumerate(g.edges) if v == w}
    g_edges = [i for i in range(g.s) if i not in star]
    for m in range(cfg.m_lo, cfg.m_hi + 1):
        covers = [("canonical", canonical_cover(g, m))]
        covers += [(f"random{k}", normalize_on_star(random_cover(g, m, rng)))
                   for k in range(cfg.covers)]
        for label, c in covers:
            rep.extend(verify_lemma_three(c), prefix=f"m={m} {label}: ")
    rep.info["g_edges"] = g_edges
    return rep


def _suite_lower(name, g, cfg, rng) -> Report:
    cls = classify_spanning_subgraphs(cone(g))
    threshold = 2 * (cls.p4 + cls.p6)
    m = cfg.m_lo if cfg.m_explicit else max(threshold, 2)
    rep = verify_lemma_lower(g, m, cfg.covers, seed=cfg.seed)
    rep.name = f"lemma-lower[{name}]"
    return rep


def _suite_oracle(name, g, cfg, rng) -> Report:
    rep = Report(f"oracle[{name}]")
    for m in range(cfg.m_lo, cfg.m_hi + 1):
        if m ** g.n > 10**6:
            rep.add(f"m={m}", None, None, None, note="not checked: m^n > 10^6")
            continue
        for k in range(cfg.covers):
            c = random_cover(g, m, rng)
            a, b = count_colorings(c), brute_force_count(c)
            rep.add(f"m={m} cover {k}: backtracking == brute force", b, a, a == b)
            if g.s <= 12:
                ie = inclusion_exclusion_count(c)
                rep.add(f"m={m} cover {k}: inclusion-exclusion == backtracking", a, ie, ie == a)
    return rep


_SUITE_FUNCS = {
    "coefficients": _suite_coefficients,
    "lemma-formulas2": _suite_formulas2,
    "lemma-three": _suite_three,
    "lemma-lower": _suite_lower,
    "oracle": _suite_oracle,
}


def cmd_verify(cfg: RunConfig, suite: str, corpus: str | None) -> int:
    rng = random.Random(cfg.seed)
    reports = []
    for name, g in _targets(cfg, corpus):
        reports.append(_SUITE_FUNCS[suite](name, g, cfg, rng))
    ok = all(r.passed for r in reports)
    summary = {
        "suite": suite,
        "pass": ok,
        "graphs": len(reports),
        "checks": sum(len(r.checks) for r in reports),
        "checked": sum(r.checked for r in reports),
        "failed": sum(len(r.failures) for r in reports),
    }
    _emit(cfg, {"summary": summary, "reports": [r.to_json() for r in reports]})
    return EXIT_OK if ok else EXIT_FAIL


# --- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="generator spec (C4, K5, P6, W4, cone:C4, glue:3) or edge-list path")
    common.add_argument("--m", default=None, help="fold k or range lo..hi")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max orbits per minimization")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--out", default=None)
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    common.add_argument("--cache", default=None, help="results cache directory (DPCHROMA_CACHE overrides)")
    common.add_argument("--covers", type=int, default=None, help="random covers per graph/m")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="dpchroma", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("chrompoly", parents=[common], help="chromatic polynomial by two methods")
    sub.add_parser("dpmin", parents=[common], help="exact P_DP(G, m) with witness covers")
    sub.add_parser("gap", parents=[common], help="P - P_DP over an m range")
    sub.add_parser("cone", parents=[common], help="P vs P_DP for the cone of G")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--corpus", default=None, help="small (default), named, connected6")
    return p


_DEFAULT_M = {"chrompoly": "3", "dpmin": "2..4", "gap": "2..5", "cone": "2..4"}
_DEFAULT_SUITE_M = {"lemma-formulas2": "3", "lemma-three": "3..4", "lemma-lower": "2", "oracle": "2..3",
                    "coefficients": "3"}
_DEFAULT_COVERS = {"lemma-formulas2": 20, "lemma-three": 50, "lemma-lower": 50, "oracle": 5}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    key = args.suite if args.command == "verify" else args.command
    m_text = args.m or (_DEFAULT_SUITE_M if args.command == "verify" else _DEFAULT_M)[key]
    try:
        lo, hi = parse_m_range(m_text)
        cfg = RunConfig(args.command, args.graph, lo, hi, args.budget, args.jobs, args.out,
                        args.fmt, args.cache,
                        args.covers if args.covers is not None else _DEFAULT_COVERS.get(key, 5),
                        args.seed, m_explicit=args.m is not None)
        if args.command == "chrompoly":
            return cmd_chrompoly(cfg)
        if args.command == "dpmin":
            return cmd_dpmin(cfg)
        if args.command == "gap":
            return cmd_gap(cfg)
        if args.command == "cone":
            return cmd_cone(cfg)
        return cmd_verify(cfg, args.suite, args.corpus)
    except (CapacityError, GraphError, PreconditionError, ValueError, OSError) as exc:
        print(f"dpchroma: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
