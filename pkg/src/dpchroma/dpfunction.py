"""The DP color function by exhaustive minimization, plus gap and cone analyses."""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice
from math import comb

from .chrompoly import chromatic_polynomial, classify_spanning_subgraphs, evaluate
from .counter import TransversalCounter, count_colorings, inclusion_exclusion_count
from .cover import (
    DEFAULT_BUDGET, DPCover, assemble, check_budget, cotree_edges, holonomy_tuples,
    identity, random_cover, twist_stats,
)
from .errors import CapacityError, PreconditionError
from .graphcore import Graph, GraphError, cone, cone_vertex_edges, girth, INF
from .report import Report

CHUNK = 256


@dataclass
class DPValue:
    m: int
    value: int
    witness: DPCover
    covers_examined: int
    reduced: bool

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "value": self.value,
            "witness": self.witness.to_json(),
            "covers_examined": self.covers_examined,
            "reduced": self.reduced,
        }

    @classmethod
    def from_json(cls, g: Graph, data: dict) -> "DPValue":
        return cls(int(data["m"]), int(data["value"]), DPCover.from_json(g, data["witness"]),
                   int(data["covers_examined"]), bool(data["reduced"]))


def _scan_chunk(args):
    """Minimum over one rank range; stops at the first zero."""
    g, m, cot, start, hols = args
    counter = TransversalCounter(g)
    sigma = [identity(m)] * g.s
    best, best_rank, seen = None, None, 0
    for offset, hol in enumerate(hols):
        for i, p in zip(cot, hol):
            sigma[i] = p
        val = counter.count(sigma, m)
        seen += 1
        if best is None or val < best:
            best, best_rank = val, start + offset
            if val == 0:
                break
    return best, best_rank, seen


def _chunks(it, size):
    start = 0
    while True:
        block = list(islice(it, size))
        if not block:
            return
        yield start, block
        start += len(block)


def dp_color_function(g: Graph, m: int, budget: int = DEFAULT_BUDGET, reduced: bool = True,
                      jobs: int = 1, cache=None) -> DPValue:
    """Exact P_DP(G, m): minimum H-coloring count over all normalized m-fold covers.

    The witness is the lowest-rank cover attaining the minimum. Chunks are
    scanned independently (each stopping at its first zero) and merged by
    (value, rank). ``covers_examined`` counts ranks up to the first zero, or
    all of them, so neither it nor the witness depends on ``jobs``.
    """
    if m < 1:
        raise PreconditionError("m must be >= 1")
    if not g.is_connected():
        raise GraphError("P_DP needs a connected graph; compute per component and multiply")
    if cache is not None:
        hit = cache.get(g, m, reduced)
        if hit is not None:
            return hit
    total = check_budget(g, m, reduced, budget)
    cot = cotree_edges(g)
    tuples = holonomy_tuples(m, len(cot), reduced)
    results = []
    if jobs <= 1:
        for start, block in _chunks(tuples, CHUNK):
            res = _scan_chunk((g, m, cot, start, block))
            results.append(res)
            if res[0] == 0:
                break
    else:
        size = max(1, min(CHUNK, -(-total // jobs)))
        tasks = [(g, m, cot, start, block) for start, block in _chunks(tuples, size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_chunk, tasks))
        # chunks after the first zero would not have been scanned sequentially
        first_zero = next((i for i, r in enumerate(results) if r[0] == 0), None)
        if first_zero is not None:
            results = results[:first_zero + 1]
    best, rank = min((r[0], r[1]) for r in results)
    examined = sum(r[2] for r in results)
    hol = _tuple_at(m, len(cot), reduced, rank)
    value = DPValue(m, best, assemble(g, m, cot, hol), examined, reduced)
    if cache is not None:
        cache.put(g, value)
    return value


def _tuple_at(m, k, reduced, rank):
    return next(islice(holonomy_tuples(m, k, reduced), rank, None))


def dp_color_function_any(g: Graph, m: int, **kw) -> int:
    """P_DP for possibly disconnected graphs: product over components."""
    total = 1
    for comp in g.components():
        total *= dp_color_function(g.induced(comp), m, **kw).value
    return total


def probe(g: Graph, m: int, samples: int, seed: int = 0) -> tuple[int, DPCover]:
    """Best count over random covers. An upper bound on P_DP, never the exact value."""
    rng = random.Random(seed)
    cot = cotree_edges(g)
    best = None
    for _ in range(samples):
        c = random_cover(g, m, rng, cot)
        val = count_colorings(c)
        if best is None or val < best[0]:
            best = (val, c)
    return best


# --- gap analysis -----------------------------------------------------------

@dataclass
class GapRow:
    m: int
    P: int
    P_DP: int | None
    skipped: str = ""

    @property
    def gap(self) -> int | None:
        return None if self.P_DP is None else self.P - self.P_DP


@dataclass
class GapReport:
    n: int
    girth: float
    rows: list[GapRow] = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)

    @property
    def fitted_exponent(self) -> float | None:
        return fit_exponent([(r.m, r.gap) for r in self.rows if r.gap is not None])

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "girth": None if self.girth == INF else int(self.girth),
            "fitted_exponent": self.fitted_exponent,
            "rows": [{"m": r.m, "P": r.P, "P_DP": r.P_DP, "gap": r.gap,
                      **({"skipped": r.skipped} if r.skipped else {})} for r in self.rows],
            "witnesses": {str(k): v.to_json() for k, v in self.witnesses.items()},
        }

    def csv_rows(self):
        yield ["m", "P", "P_DP", "gap"]
        for r in self.rows:
            yield [r.m, r.P, "" if r.P_DP is None else r.P_DP, "" if r.gap is None else r.gap]


def fit_exponent(points) -> float | None:
    """OLS slope of log(gap) on log(m) over the upper half of the positive-gap rows."""
    pos = sorted((m, gap) for m, gap in points if gap is not None and gap > 0 and m > 1)
    if len(pos) < 3:
        return None
    top = pos[len(pos) - math.ceil(len(pos) / 2):]
    xs = [math.log(m) for m, _ in top]
    ys = [math.log(gap) for _, gap in top]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        return None
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx


def gap_table(g: Graph, m_lo: int, m_hi: int, budget: int = DEFAULT_BUDGET,
              jobs: int = 1, cache=None) -> GapReport:
    p = chromatic_polynomial(g)
    rep = GapReport(g.n, girth(g))
    for m in range(m_lo, m_hi + 1):
        P = evaluate(p, m)
        try:
            dv = dp_color_function(g, m, budget, jobs=jobs, cache=cache)
        except CapacityError as exc:
            rep.rows.append(GapRow(m, P, None, skipped=str(exc)))
            continue
        rep.rows.append(GapRow(m, P, dv.value))
        rep.witnesses[m] = dv.witness
    return rep


# --- cones ------------------------------------------------------------------

@dataclass
class ConeRow:
    m: int
    P: int
    P_DP: int | None
    skipped: str = ""

    @property
    def equal(self) -> bool | None:
        return None if self.P_DP is None else self.P == self.P_DP


@dataclass
class ConeReport:
    rows: list[ConeRow] = field(default_factory=list)

    @property
    def first_equal_onset(self) -> int | None:
        done = [r for r in sorted(self.rows, key=lambda r: r.m) if r.P_DP is not None]
        onset = None
        for r in reversed(done):
            if not r.equal:
                break
            onset = r.m
        return onset

    def to_json(self) -> dict:
        onset = self.first_equal_onset
        return {
            "rows": [{"m": r.m, "P": r.P, "P_DP": r.P_DP, "equal": r.equal,
                      **({"skipped": r.skipped} if r.skipped else {})} for r in self.rows],
            "first_equal_onset": "none in range" if onset is None else onset,
        }

    def csv_rows(self):
        yield ["m", "P", "P_DP", "equal"]
        for r in self.rows:
            yield [r.m, r.P, "" if r.P_DP is None else r.P_DP,
                   "" if r.equal is None else str(r.equal).lower()]


def cone_scan(g: Graph, m_lo: int, m_hi: int, budget: int = DEFAULT_BUDGET,
              jobs: int = 1, cache=None) -> ConeReport:
    M = cone(g)
    p = chromatic_polynomial(M)
    rep = ConeReport()
    for m in range(m_lo, m_hi + 1):
        P = evaluate(p, m)
        try:
            dv = dp_color_function(M, m, budget, jobs=jobs, cache=cache)
        except CapacityError as exc:
            rep.rows.append(ConeRow(m, P, None, skipped=str(exc)))
            continue
        rep.rows.append(ConeRow(m, P, dv.value))
    return rep


def lower_bound_value(M: Graph, m: int, cls=None) -> int:
    """The twisted-cover lower bound for P_DP(M, H), with n = |V(M)|.

    The "n + s" of the bound is the edge count of M; the ``2^(s-1)`` term uses
    s = |E(G)| for the base graph G = M - w.
    """
    if cls is None:
        cls = classify_spanning_subgraphs(M)
    n = M.n
    e = M.s
    s = e - (n - 1)
    return (m**n - e * m ** (n - 1) + (comb(e, 2) - cls.t) * m ** (n - 2)
            - cls.a3 * m ** (n - 3) + m ** (n - 3)
            - 2 * (cls.p4 + cls.p6 + 2 ** (s - 1)) * m ** (n - 4))


def verify_lemma_lower(g: Graph, m: int, sample: int, seed: int = 0,
                       count=inclusion_exclusion_count) -> Report:
    """Evaluate the twisted-cover lower bound on ``sample`` random covers of cone(G).

    Covers carry the identity on the star at w and random permutations on
    the edges of G; covers with x_H = 0 are redrawn. Counts are exact; the
    default counter is the inclusion-exclusion sum, which stays fast at the
    large m the hypothesis asks for.
    """
    M = cone(g)
    cls = classify_spanning_subgraphs(M)
    threshold = 2 * (cls.p4 + cls.p6)
    bound = lower_bound_value(M, m, cls)
    rep = Report("lemma-lower", info={
        "m": m, "threshold": threshold, "hypothesis_met": m >= threshold,
        "bound": bound, "P": evaluate(chromatic_polynomial(M), m), **cls.to_json()})
    rng = random.Random(seed)
    star = set(cone_vertex_edges(M))
    g_edges = [i for i in range(M.s) if i not in star]
    if not g_edges:
        rep.info["note"] = "G has no edges; no cover has x_H > 0"
        return rep
    note = "" if m >= threshold else "hypothesis not met (informational)"
    for k in range(sample):
        while True:
            c = random_cover(M, m, rng, g_edges)
            x = twist_stats(c).total
            if x > 0:
                break
        val = count(c)
        passed = val >= bound
        rep.add(f"cover {k} (x_H={x}) P_DP(M,H) >= bound", bound, val,
                passed if m >= threshold else None, note=note)
    return rep


def upper_bound_sanity(g: Graph, ms, budget: int = DEFAULT_BUDGET, cache=None) -> Report:
    p = chromatic_polynomial(g)
    rep = Report("upper-bound")
    for m in ms:
        P = evaluate(p, m)
        try:
            val = dp_color_function_any(g, m, budget=budget, cache=cache)
        except CapacityError as exc:
            rep.add(f"m={m}: P_DP <= P", P, None, None, note=f"skipped: {exc}")
            continue
        rep.add(f"m={m}: P_DP <= P", P, val, val <= P)
    return rep
