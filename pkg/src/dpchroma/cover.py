"""m-fold covers with full matchings, stored as one permutation per edge.

Permutations are tuples in one-line notation: ``p[x]`` is the image of ``x``.
``compose(p, q)`` applies ``p`` first and then ``q``; this is the only
composition helper in the package.

For edge ``i = (u, v)`` with ``u < v``, ``sigma[i]`` sends a color ``c`` at
``u`` to the color ``sigma[i][c]`` at ``v`` that it is matched with, i.e. the
cross-edge ``(u, c)(v, sigma[i][c])`` is in H. The reverse orientation uses
the inverse permutation.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Iterator, Sequence

from .errors import CapacityError, PreconditionError
from .graphcore import Graph, GraphError, spanning_tree

Perm = tuple[int, ...]

DEFAULT_BUDGET = 10**7


# --- permutations -----------------------------------------------------------

def identity(m: int) -> Perm:
    return tuple(range(m))


def compose(p: Perm, q: Perm) -> Perm:
    """Apply ``p`` then ``q``: ``x -> q[p[x]]``."""
    return tuple(q[x] for x in p)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def conjugate(pi: Perm, sigma: Perm, pi_inv: Perm | None = None) -> Perm:
    """``pi sigma pi^-1`` as a map: ``x -> pi[sigma[pi^-1[x]]]``."""
    if pi_inv is None:
        pi_inv = inverse(pi)
    return tuple(pi[sigma[y]] for y in pi_inv)


def fixed_points(p: Perm) -> int:
    return sum(1 for i, x in enumerate(p) if i == x)


def cycle_type(p: Perm) -> tuple[int, ...]:
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                k += 1
            lengths.append(k)
    return tuple(sorted(lengths, reverse=True))


def is_permutation(p: Sequence[int], m: int) -> bool:
    return len(p) == m and sorted(p) == list(range(m))


# --- covers -----------------------------------------------------------------

@dataclass(frozen=True)
class DPCover:
    graph: Graph
    m: int
    sigma: tuple[Perm, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("fold m must be >= 1")
        if len(self.sigma) != self.graph.s:
            raise ValueError(f"expected {self.graph.s} permutations, got {len(self.sigma)}")
        for i, p in enumerate(self.sigma):
            if not is_permutation(p, self.m):
                raise ValueError(f"sigma[{i}] = {p} is not a permutation of range({self.m})")

    def oriented(self, u: int, v: int) -> Perm:
        """Permutation carrying colors at ``u`` to their matched colors at ``v``."""
        p = self.sigma[self.graph.edge_index(u, v)]
        return p if u < v else inverse(p)

    def with_sigma(self, sigma: Sequence[Perm]) -> "DPCover":
        return DPCover(self.graph, self.m, tuple(tuple(p) for p in sigma))

    def to_json(self) -> dict:
        idm = identity(self.m)
        return {
            "m": self.m,
            "sigma": {str(i): list(p) for i, p in enumerate(self.sigma) if p != idm},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, graph: Graph, data: dict) -> "DPCover":
        m = int(data["m"])
        sigma = [identity(m)] * graph.s
        for k, p in data.get("sigma", {}).items():
            i = int(k)
            if not 0 <= i < graph.s:
                raise ValueError(f"edge index {i} out of range")
            sigma[i] = tuple(int(x) for x in p)
        return cls(graph, m, tuple(sigma))


def canonical_cover(g: Graph, m: int) -> DPCover:
    if m < 1:
        raise PreconditionError("m must be >= 1")
    return DPCover(g, m, tuple(identity(m) for _ in range(g.s)))


def relabel(c: DPCover, pis: Sequence[Perm]) -> DPCover:
    """Rename fiber ``L(v)`` by ``pis[v]`` (old color ``x`` becomes ``pis[v][x]``)."""
    g = c.graph
    sigma = []
    for (u, v), p in zip(g.edges, c.sigma):
        # new edge (u, pi_u(x)) -- (v, pi_v(p(x)))
        sigma.append(compose(compose(inverse(pis[u]), p), pis[v]))
    return c.with_sigma(sigma)


def _gauge_to_tree(c: DPCover, tree_mask: int, roots: Sequence[int]) -> DPCover:
    g = c.graph
    tree_adj = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        if tree_mask >> i & 1:
            tree_adj[u].append(v)
            tree_adj[v].append(u)
    pis: list[Perm | None] = [None] * g.n
    for r in roots:
        if pis[r] is not None:
            continue
        pis[r] = identity(c.m)
        queue = deque([r])
        while queue:
            x = queue.popleft()
            for y in sorted(tree_adj[x]):
                if pis[y] is None:
                    # choose pi_y so the edge x -> y becomes the identity
                    pis[y] = compose(inverse(c.oriented(x, y)), pis[x])
                    queue.append(y)
    if any(p is None for p in pis):
        raise GraphError("tree does not span the graph")
    return relabel(c, pis)


def star_tree(g: Graph, center: int) -> int:
    mask = 0
    for i, (u, v) in enumerate(g.edges):
        if center in (u, v):
            mask |= 1 << i
    return mask


def normalize(c: DPCover, tree: int | None = None, root: int = 0) -> DPCover:
    """Gauge-fix ``c`` so every edge of the spanning tree carries the identity.

    ``tree`` defaults to the BFS tree from vertex 0; pass ``star_tree(M, w)``
    with ``root=w`` to normalize a cone on the star at its apex.
    """
    g = c.graph
    if not g.is_connected():
        raise GraphError("normalize needs a connected graph")
    if tree is None:
        tree, root = spanning_tree(g), 0
    return _gauge_to_tree(c, tree, [root])


def normalize_on_star(c: DPCover) -> DPCover:
    """Normalize a cone's cover on the star at its apex ``w = n - 1``."""
    w = c.graph.n - 1
    if c.graph.degree(w) != c.graph.n - 1:
        raise PreconditionError("last vertex is not adjacent to every other vertex")
    return normalize(c, star_tree(c.graph, w), w)


def _spanning_forest(g: Graph) -> tuple[int, list[int]]:
    mask, roots = 0, []
    seen = [False] * g.n
    for r in range(g.n):
        if seen[r]:
            continue
        roots.append(r)
        seen[r] = True
        queue = deque([r])
        while queue:
            x = queue.popleft()
            for y in sorted(g.adjacency[x]):
                if not seen[y]:
                    seen[y] = True
                    mask |= 1 << g.edge_index(x, y)
                    queue.append(y)
    return mask, roots


def is_canonically_labeled(c: DPCover) -> bool:
    mask, roots = _spanning_forest(c.graph)
    fixed = _gauge_to_tree(c, mask, roots)
    idm = identity(c.m)
    return all(p == idm for p in fixed.sigma)


@dataclass(frozen=True)
class TwistStats:
    per_edge: tuple[int, ...]
    total: int


def twist_stats(c: DPCover) -> TwistStats:
    """Per-G-edge count of cross-edges joining differing coordinates in a cone's cover."""
    g = c.graph
    w = g.n - 1
    if g.degree(w) != g.n - 1:
        raise PreconditionError("cover graph is not a cone with apex n-1")
    idm = identity(c.m)
    per_edge = []
    for (u, v), p in zip(g.edges, c.sigma):
        if v == w:
            if p != idm:
                raise PreconditionError(f"w-edge ({u}, {v}) is not the identity; normalize on the star first")
            continue
        per_edge.append(c.m - fixed_points(p))
    return TwistStats(tuple(per_edge), sum(per_edge))


# --- enumeration ------------------------------------------------------------

def cotree_edges(g: Graph, tree: int | None = None) -> list[int]:
    if tree is None:
        tree = spanning_tree(g)
    return [i for i in range(g.s) if not tree >> i & 1]


@lru_cache(maxsize=None)
def all_perms(m: int) -> tuple[Perm, ...]:
    return tuple(permutations(range(m)))


@lru_cache(maxsize=None)
def _centralizer_sizes(m: int) -> tuple[int, ...]:
    """|C(p)| for one representative of every conjugacy class of S_m."""
    sizes = []
    for lam in _partitions(m):
        denom = 1
        for part in set(lam):
            k = lam.count(part)
            denom *= part**k * factorial(k)
        sizes.append(denom)
    return tuple(sizes)


def _partitions(m: int, largest: int | None = None) -> list[tuple[int, ...]]:
    if largest is None:
        largest = m
    if m == 0:
        return [()]
    out = []
    for first in range(min(m, largest), 0, -1):
        for rest in _partitions(m - first, first):
            out.append((first,) + rest)
    return out


def orbit_count(m: int, k: int) -> int:
    """Orbits of S_m acting on S_m^k by simultaneous conjugation (Burnside)."""
    if k == 0:
        return 1
    return sum(c ** (k - 1) for c in _centralizer_sizes(m))


def cover_count(m: int, k: int, reduced: bool) -> int:
    return orbit_count(m, k) if reduced else factorial(m) ** k


def _is_orbit_min(sigma: Perm, group: Sequence[tuple[Perm, Perm]]) -> bool:
    for pi, pi_inv in group:
        img = tuple(pi[sigma[y]] for y in pi_inv)
        if img < sigma:
            return False
    return True


@lru_cache(maxsize=None)
def _class_minima(m: int) -> tuple[Perm, ...]:
    group = [(p, inverse(p)) for p in all_perms(m)]
    return tuple(s for s in all_perms(m) if _is_orbit_min(s, group))


def orbit_representatives(m: int, k: int) -> Iterator[tuple[Perm, ...]]:
    """Lexicographically least tuple of every simultaneous-conjugation orbit, in lex order.

    A tuple is least in its orbit iff each entry is least in its orbit under
    the joint centralizer of the entries before it.
    """
    perms = all_perms(m)
    full = [(p, inverse(p)) for p in perms]

    def rec(level, group, prefix):
        if level == k:
            yield prefix
            return
        candidates = _class_minima(m) if level == 0 else perms
        for s in candidates:
            if level and not _is_orbit_min(s, group):
                continue
            stab = [(p, q) for p, q in group if tuple(p[s[y]] for y in q) == s]
            yield from rec(level + 1, stab, prefix + (s,))

    yield from rec(0, full, ())


def check_budget(g: Graph, m: int, reduced: bool, budget: int) -> int:
    k = len(cotree_edges(g))
    total = cover_count(m, k, reduced)
    if total > budget:
        raw = factorial(m) ** k
        kind = "orbits" if reduced else "covers"
        raise CapacityError(
            f"{total} {kind} to examine at m={m} (cotree rank {k}, (m!)^{k} = {raw}) "
            f"exceeds budget {budget}", required=total, limit=budget)
    return total


def holonomy_tuples(m: int, k: int, reduced: bool) -> Iterator[tuple[Perm, ...]]:
    """Cotree permutation tuples in rank order."""
    if reduced:
        return orbit_representatives(m, k)
    return product(all_perms(m), repeat=k)


def unreduced_at_rank(m: int, k: int, rank: int) -> tuple[Perm, ...]:
    """Mixed-radix addressing of the unreduced enumeration."""
    perms = all_perms(m)
    base = len(perms)
    digits = []
    for _ in range(k):
        rank, d = divmod(rank, base)
        digits.append(perms[d])
    return tuple(reversed(digits))


def assemble(g: Graph, m: int, cotree: Sequence[int], holonomy: Sequence[Perm]) -> DPCover:
    sigma = [identity(m)] * g.s
    for i, p in zip(cotree, holonomy):
        sigma[i] = p
    return DPCover(g, m, tuple(sigma))


def enumerate_covers(g: Graph, m: int, reduce_by_conjugation: bool = True,
                     budget: int = DEFAULT_BUDGET) -> Iterator[DPCover]:
    """Normalized covers: BFS-tree edges identity, cotree edges free."""
    if not g.is_connected():
        raise GraphError("enumerate_covers needs a connected graph")
    check_budget(g, m, reduce_by_conjugation, budget)
    cot = cotree_edges(g)
    for hol in holonomy_tuples(m, len(cot), reduce_by_conjugation):
        yield assemble(g, m, cot, hol)


def random_cover(g: Graph, m: int, rng: random.Random, edges: Sequence[int] | None = None) -> DPCover:
    """Independent uniform permutations on ``edges`` (default all), identity elsewhere."""
    chosen = range(g.s) if edges is None else edges
    sigma = [identity(m)] * g.s
    for i in chosen:
        p = list(range(m))
        rng.shuffle(p)
        sigma[i] = tuple(p)
    return DPCover(g, m, tuple(sigma))
