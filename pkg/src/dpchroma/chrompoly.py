"""Chromatic polynomials: subset expansion, deletion-contraction, coefficient checks."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import CapacityError, PreconditionError
from .graphcore import Graph, component_count, count_cycles_of_length, girth, INF
from .poly import IntPolynomial, evaluate  # noqa: F401  (re-export)
from .report import Report

MAX_SUBSET_EDGES = 24


def _check_subset_capacity(s: int, what: str) -> None:
    if s > MAX_SUBSET_EDGES:
        raise CapacityError(
            f"{what}: {s} edges exceeds MAX_SUBSET_EDGES={MAX_SUBSET_EDGES} "
            f"(2^{s} subsets)", required=s, limit=MAX_SUBSET_EDGES)


def whitney_expansion(g: Graph) -> IntPolynomial:
    """Sum of (-1)^|A| m^(k_A) over every edge subset A.

    Subsets are walked by include/exclude recursion over the edge list with a
    rollback union-find, so each leaf costs O(1) beyond the recursion itself.
    """
    _check_subset_capacity(g.s, "whitney_expansion")
    n, edges = g.n, g.edges
    s = len(edges)
    parent = list(range(n))
    size = [1] * n
    # acc[k][parity] = number of subsets with k components and |A| of that parity
    acc = [[0, 0] for _ in range(n + 1)]

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(i, comps, parity):
        if i == s:
            acc[comps][parity] += 1
            return
        rec(i + 1, comps, parity)
        u, v = edges[i]
        ru, rv = find(u), find(v)
        if ru == rv:
            rec(i + 1, comps, parity ^ 1)
            return
        if size[ru] > size[rv]:
            ru, rv = rv, ru
        parent[ru] = rv
        size[rv] += size[ru]
        rec(i + 1, comps - 1, parity ^ 1)
        size[rv] -= size[ru]
        parent[ru] = ru

    rec(0, n, 0)
    return IntPolynomial(even - odd for even, odd in acc)


def _canonical_key(n: int, edges: frozenset) -> tuple:
    """Relabel by (degree, sorted neighbor degrees); the key keeps the exact edge set."""
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    deg = [len(a) for a in adj]
    sig = [(deg[v], tuple(sorted(deg[y] for y in adj[v])), v) for v in range(n)]
    order = sorted(range(n), key=lambda v: sig[v])
    relabel = {v: i for i, v in enumerate(order)}
    return n, tuple(sorted(tuple(sorted((relabel[u], relabel[v]))) for u, v in edges))


def _forest_components(n: int, edges) -> int | None:
    """Component count if the graph is a forest, else None."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return None
        parent[ru] = rv
        comps -= 1
    return comps


def deletion_contraction(g: Graph, memo: dict | None = None) -> IntPolynomial:
    """P(G) = P(G - e) - P(G / e) with parallel edges merged on contraction."""
    if memo is None:
        memo = {}
    return _dc(g.n, frozenset(g.edges), memo)


def _dc(n: int, edges: frozenset, memo: dict) -> IntPolynomial:
    if not edges:
        return IntPolynomial.monomial(n)
    key = _canonical_key(n, edges)
    hit = memo.get(key)
    if hit is not None:
        return hit
    c = _forest_components(n, edges)
    if c is not None:
        # forest: m^c (m-1)^(n-c)
        result = IntPolynomial.monomial(c) * IntPolynomial([-1, 1]) ** (n - c)
    else:
        n2, es = key
        u, v = es[-1]
        rest = frozenset(es[:-1])
        deleted = _dc(n2, rest, memo)
        # contract v into u, then close the gap left by v
        merged = set()
        for a, b in rest:
            a = u if a == v else a
            b = u if b == v else b
            a = a - 1 if a > v else a
            b = b - 1 if b > v else b
            merged.add((a, b) if a < b else (b, a))
        contracted = _dc(n2 - 1, frozenset(merged), memo)
        result = deleted - contracted
    memo[key] = result
    return result


def chromatic_polynomial(g: Graph) -> IntPolynomial:
    if g.s <= 16:
        return whitney_expansion(g)
    return deletion_contraction(g)


def signed_coefficients(p: IntPolynomial, n: int) -> list[int]:
    """a_0..a_n with P = sum (-1)^i a_i m^(n-i)."""
    return [(-1) ** i * p.coeff(n - i) for i in range(n + 1)]


def coefficient_report(g: Graph, p: IntPolynomial | None = None) -> Report:
    """Check sign alternation, positivity and the girth-determined leading coefficients."""
    if not g.is_connected():
        raise PreconditionError("coefficient_report needs a connected graph")
    if p is None:
        p = whitney_expansion(g)
    n, s = g.n, g.s
    a = signed_coefficients(p, n)
    rep = Report("coefficients", info={"n": n, "s": s, "a": a})
    rep.add("degree == n", n, p.degree, p.degree == n)
    rep.add("a_i >= 0 (alternating signs)", ">=0", a, all(x >= 0 for x in a))
    rep.add("a_0..a_{n-1} > 0", ">0", a[:n], all(x > 0 for x in a[:n]))
    rep.add("a_n == 0", 0, a[n], a[n] == 0)
    g_len = girth(g)
    rep.info["girth"] = None if g_len == INF else int(g_len)
    if g_len == INF:
        for i in range(n):
            rep.add(f"a_{i} == C(s,{i}) (forest)", comb(s, i), a[i], a[i] == comb(s, i))
        return rep
    g_len = int(g_len)
    t = count_cycles_of_length(g, g_len)
    rep.info["t"] = t
    for i in range(g_len - 1):
        if i <= n:
            rep.add(f"a_{i} == C(s,{i})", comb(s, i), a[i], a[i] == comb(s, i))
    want = comb(s, g_len - 1) - t
    rep.add(f"a_{g_len - 1} == C(s,{g_len - 1}) - t", want, a[g_len - 1], a[g_len - 1] == want)
    return rep


@dataclass(frozen=True)
class SubgraphClassification:
    p3: int
    p4: int
    p5: int
    p6: int
    a3: int
    t: int

    def to_json(self) -> dict:
        return dict(p3=self.p3, p4=self.p4, p5=self.p5, p6=self.p6, a3=self.a3, t=self.t)


def _has_universal_vertex(g: Graph) -> bool:
    return any(g.degree(v) == g.n - 1 for v in range(g.n))


def classify_spanning_subgraphs(m_graph: Graph) -> SubgraphClassification:
    """Count edge sets of size 3..6 spanning exactly n-3 components, n = |V(M)|."""
    n = m_graph.n
    if n < 4:
        raise PreconditionError(f"need |V(M)| >= 4 for (n-3)-component subgraphs, got {n}")
    if not _has_universal_vertex(m_graph):
        raise PreconditionError("M must be a cone (some vertex adjacent to all others)")
    _check_subset_capacity(m_graph.s, "classify_spanning_subgraphs")
    counts = {}
    for k in range(3, 7):
        counts[k] = sum(
            1 for sub in combinations(range(m_graph.s), k)
            if component_count(m_graph, sum(1 << i for i in sub)) == n - 3)
    a3 = counts[3] - counts[4] + counts[5] - counts[6]
    t = count_cycles_of_length(m_graph, 3)
    return SubgraphClassification(counts[3], counts[4], counts[5], counts[6], a3, t)
