"""Exact counts of H-colorings (independent transversals) of a cover.

A transversal picks one color per vertex. It is an H-coloring when no edge
``(u, v)`` has ``color(v) == sigma_uv(color(u))``. The "bad set" of edge ``i``
is the set of transversals that do hit edge ``i``'s matching.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations, product
from math import comb
from typing import Sequence

from .cover import DPCover, Perm, inverse, normalize_on_star, twist_stats, is_canonically_labeled
from .chrompoly import classify_spanning_subgraphs
from .errors import CapacityError, PreconditionError
from .graphcore import Graph, bfs_order, component_count, girth, INF
from .report import Report

BRUTE_FORCE_LIMIT = 10**8
INCLUSION_EXCLUSION_MAX_EDGES = 20
LEMMA_THREE_MAX_EDGES = 14


class TransversalCounter:
    """Backtracking counter specialised to one graph.

    Vertices are visited per component in BFS order; each vertex keeps the
    list of already-placed neighbors, and the colors they forbid are OR-ed
    into a bitmask. The last vertex of a component is counted by popcount.
    Python ints are unbounded, so the same path serves every ``m``.
    """

    def __init__(self, g: Graph):
        self.graph = g
        self.plan = []
        for comp in g.components():
            order = bfs_order(g.induced(comp), 0)
            order = [comp[i] for i in order]
            pos = {v: i for i, v in enumerate(order)}
            steps = []
            for i, v in enumerate(order):
                back = []
                for y in g.adjacency[v]:
                    if y in pos and pos[y] < i:
                        back.append((pos[y], g.edge_index(y, v), y < v))
                steps.append(tuple(sorted(back)))
            self.plan.append((order, steps))

    def count(self, sigma: Sequence[Perm], m: int) -> int:
        total = 1
        for order, steps in self.plan:
            total *= self._count_component(steps, sigma, m)
            if total == 0:
                return 0
        return total

    def _count_component(self, steps, sigma, m):
        full = (1 << m) - 1
        k = len(steps)
        tables = []
        for back in steps:
            row = []
            for j, e, forward in back:
                p = sigma[e] if forward else inverse(sigma[e])
                row.append((j, tuple(1 << p[c] for c in range(m))))
            tables.append(row)
        cols = [0] * k
        last = k - 1

        def rec(i):
            mask = 0
            for j, bits in tables[i]:
                mask |= bits[cols[j]]
            free = full & ~mask
            if i == last:
                return bin(free).count("1")
            total = 0
            while free:
                low = free & -free
                cols[i] = low.bit_length() - 1
                total += rec(i + 1)
                free ^= low
            return total

        return rec(0)


def count_colorings(c: DPCover) -> int:
    return TransversalCounter(c.graph).count(c.sigma, c.m)


def is_coloring(c: DPCover, colors: Sequence[int]) -> bool:
    return all(colors[v] != p[colors[u]] for (u, v), p in zip(c.graph.edges, c.sigma))


def brute_force_count(c: DPCover) -> int:
    """Enumerate all m^n transversals."""
    g, m = c.graph, c.m
    if m**g.n > BRUTE_FORCE_LIMIT:
        raise CapacityError(f"m^n = {m**g.n} exceeds BRUTE_FORCE_LIMIT={BRUTE_FORCE_LIMIT}",
                            required=m**g.n, limit=BRUTE_FORCE_LIMIT)
    edges = list(zip(g.edges, c.sigma))
    return sum(1 for colors in product(range(m), repeat=g.n)
               if all(colors[v] != p[colors[u]] for (u, v), p in edges))


def _subset_of(edges: Sequence[int] | int) -> list[int]:
    if isinstance(edges, int):
        out, i = [], 0
        while edges:
            if edges & 1:
                out.append(i)
            edges >>= 1
            i += 1
        return out
    return list(edges)


def bad_intersection_count(c: DPCover, edges: Sequence[int] | int) -> int:
    """Transversals hitting the matching of every listed edge.

    Each component of the spanning subgraph on the listed edges is fixed by
    the color of its least vertex; count the root colors whose propagation is
    consistent and multiply over components (isolated vertices give ``m``).
    """
    g, m = c.graph, c.m
    idx = _subset_of(edges)
    if any(not 0 <= i < g.s for i in idx):
        raise PreconditionError("edge index out of range")
    adj = {}
    for i in idx:
        u, v = g.edges[i]
        p = c.sigma[i]
        adj.setdefault(u, []).append((v, p))
        adj.setdefault(v, []).append((u, inverse(p)))
    total = m ** (g.n - len({x for i in idx for x in g.edges[i]}))
    seen = set()
    for r in sorted(adj):
        if r in seen:
            continue
        comp = [r]
        seen.add(r)
        queue = deque([r])
        while queue:
            x = queue.popleft()
            for y, _ in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        good = 0
        for x0 in range(m):
            col = {r: x0}
            queue = deque([r])
            ok = True
            while queue and ok:
                x = queue.popleft()
                for y, p in adj[x]:
                    want = p[col[x]]
                    if y in col:
                        if col[y] != want:
                            ok = False
                            break
                    else:
                        col[y] = want
                        queue.append(y)
            good += ok
        total *= good
        if total == 0:
            return 0
    return total


def bad_set_sums(c: DPCover, max_edges: int = INCLUSION_EXCLUSION_MAX_EDGES) -> list[int]:
    """``sums[k]`` = sum of |S_i1 ∩ ... ∩ S_ik| over all k-subsets (``sums[0] = m^n``)."""
    s = c.graph.s
    if s > max_edges:
        raise CapacityError(f"{s} edges exceeds limit {max_edges} (2^{s} subsets)",
                            required=s, limit=max_edges)
    sums = [0] * (s + 1)
    for mask in range(1 << s):
        sums[bin(mask).count("1")] += bad_intersection_count(c, mask)
    return sums


def inclusion_exclusion_count(c: DPCover) -> int:
    sums = bad_set_sums(c)
    return sum((-1) ** k * x for k, x in enumerate(sums))


def _is_cycle_edge_set(g: Graph, idx: Sequence[int]) -> bool:
    deg = {}
    for i in idx:
        for x in g.edges[i]:
            deg[x] = deg.get(x, 0) + 1
    if any(d != 2 for d in deg.values()):
        return False
    mask = sum(1 << i for i in idx)
    # connected on its own vertex set
    return component_count(g, mask) == g.n - len(deg) + 1


def verify_lemma_formulas2(c: DPCover) -> Report:
    """Exhaustively check the three bad-set intersection statements for a full cover.

    (i)   k <= g-1: every k-intersection has exactly m^(n-k) elements
    (ii)  k == g:   at most m^(n-g+1), and exactly m^(n-g) unless the edges form a g-cycle
    (iii) k >= g+1: at most m^(n-g)
    """
    g, m, n, s = c.graph, c.m, c.graph.n, c.graph.s
    gl = girth(g)
    if gl == INF:
        raise PreconditionError("graph is acyclic; the statements need a finite girth")
    if not g.is_connected():
        raise PreconditionError("graph must be connected")
    gl = int(gl)
    rep = Report("lemma-formulas2", info={"n": n, "s": s, "m": m, "girth": gl})
    for k in range(1, s + 1):
        values = []
        cycle_values = []
        for sub in combinations(range(s), k):
            val = bad_intersection_count(c, sub)
            if k == gl and _is_cycle_edge_set(g, sub):
                cycle_values.append(val)
            else:
                values.append(val)
        if k <= gl - 1:
            want = m ** (n - k)
            rep.add(f"(i) k={k}: |∩S| == m^(n-k)", want, sorted(set(values)),
                    all(v == want for v in values))
        elif k == gl:
            cap = m ** (n - gl + 1)
            allv = values + cycle_values
            rep.add(f"(ii) k={k}: |∩S| <= m^(n-g+1)", cap, max(allv), max(allv) <= cap)
            want = m ** (n - gl)
            rep.add(f"(ii) k={k}: |∩S| == m^(n-g) off g-cycles", want, sorted(set(values)),
                    all(v == want for v in values))
        else:
            cap = m ** (n - gl)
            rep.add(f"(iii) k={k}: |∩S| <= m^(n-g)", cap, max(values), max(values) <= cap)
    return rep


def verify_lemma_three(c: DPCover, max_edges: int = LEMMA_THREE_MAX_EDGES) -> Report:
    """Check the five size-k bad-set sum bounds for a cover of a cone M.

    ``c`` must be normalized on the star at the apex ``w = n - 1``. Here n is
    |V(M)| and the edge count of M (written n+s in the bounds) is ``M.s``.
    """
    M, m = c.graph, c.m
    n = M.n
    stats = twist_stats(c)  # raises unless star-normalized
    cls = classify_spanning_subgraphs(M)
    edges_m = M.s
    s_g = edges_m - (n - 1)
    x = stats.total
    rep = Report("lemma-three", info={
        "n": n, "s": s_g, "edges_M": edges_m, "m": m, "x_H": x, **cls.to_json()})
    if edges_m > max_edges:
        for label in ("(i)", "(ii)", "(iii)", "(iv)", "(v)"):
            rep.add(label, None, None, None, note=f"not checked: |E(M)|={edges_m} > {max_edges}")
        return rep
    sums = bad_set_sums(c, max_edges)
    get = lambda k: sums[k] if k < len(sums) else 0  # noqa: E731
    b1 = cls.t * m ** (n - 2) - x * m ** (n - 3) + cls.p3 * m ** (n - 3)
    rep.add("(i) sum_3 <= t m^(n-2) - x_H m^(n-3) + |P3| m^(n-3)", b1, get(3), get(3) <= b1)
    b2 = cls.p4 * m ** (n - 3) - 2 * cls.p4 * x * m ** (n - 4)
    rep.add("(ii) sum_4 >= |P4| m^(n-3) - 2|P4| x_H m^(n-4)", b2, get(4), get(4) >= b2)
    b3 = cls.p5 * m ** (n - 3) + (comb(edges_m, 5) - cls.p5) * m ** (n - 4)
    rep.add("(iii) sum_5 <= |P5| m^(n-3) + (C(E,5) - |P5|) m^(n-4)", b3, get(5), get(5) <= b3)
    b4 = cls.p6 * m ** (n - 3) - 2 * cls.p6 * x * m ** (n - 4)
    rep.add("(iv) sum_6 >= |P6| m^(n-3) - 2|P6| x_H m^(n-4)", b4, get(6), get(6) >= b4)
    for k in range(7, edges_m + 1):
        b5 = comb(edges_m, k) * m ** (n - 4)
        rep.add(f"(v) k={k}: sum_k <= C(E,k) m^(n-4)", b5, get(k), get(k) <= b5)
    return rep


def count_full_transversals(c: DPCover) -> int:
    """Transversals that use a matching edge on every edge of G."""
    if not c.graph.is_connected():
        raise PreconditionError("graph must be connected")
    if not is_canonically_labeled(c):
        raise PreconditionError("cover is not canonically labeled")
    return bad_intersection_count(c, range(c.graph.s))


__all__ = [
    "TransversalCounter", "count_colorings", "brute_force_count", "bad_intersection_count",
    "bad_set_sums", "inclusion_exclusion_count", "verify_lemma_formulas2",
    "verify_lemma_three", "count_full_transversals", "is_coloring", "normalize_on_star",
]
