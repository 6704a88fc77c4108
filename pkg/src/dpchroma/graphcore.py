"""Simple undirected graphs on dense vertex labels 0..n-1.

Edges are kept as a sorted tuple of ``(u, v)`` pairs with ``u < v``; an edge
subset is an ``int`` bitmask over that tuple (bit ``i`` selects ``edges[i]``).
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

INF = math.inf


class GraphError(ValueError):
    """Malformed graph input or a violated graph precondition."""


class ParseError(GraphError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[frozenset[int], ...] = field(repr=False, compare=False)
    labels: tuple[int, ...] | None = field(default=None, repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]],
                   labels: Sequence[int] | None = None) -> "Graph":
        if n < 1:
            raise GraphError("graph needs at least one vertex")
        seen = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
        ordered = tuple(sorted(seen))
        adj = [set() for _ in range(n)]
        for u, v in ordered:
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, ordered, tuple(frozenset(a) for a in adj),
                   tuple(labels) if labels is not None else None)

    @property
    def s(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edge_index(self, u: int, v: int) -> int:
        e = (u, v) if u < v else (v, u)
        return self.edges.index(e)

    def key(self) -> str:
        """Exact, label-sensitive identity string (used for caching)."""
        return f"n={self.n};" + ",".join(f"{u}-{v}" for u, v in self.edges)

    def is_connected(self) -> bool:
        return component_count(self, (1 << self.s) - 1) == 1

    def components(self) -> list[list[int]]:
        """Vertex lists of the connected components, ordered by smallest vertex."""
        seen = [False] * self.n
        out = []
        for r in range(self.n):
            if seen[r]:
                continue
            comp, queue = [], deque([r])
            seen[r] = True
            while queue:
                x = queue.popleft()
                comp.append(x)
                for y in sorted(self.adjacency[x]):
                    if not seen[y]:
                        seen[y] = True
                        queue.append(y)
            out.append(sorted(comp))
        return out

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        es = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(vertices), es)

    def to_text(self) -> str:
        lines = [f"n={self.n}"]
        lines += [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"


def parse_edge_list(text: str, remap: bool = False) -> Graph:
    """Parse ``u v`` lines; ``#`` starts a comment, ``n=<k>`` fixes the vertex count.

    Without ``remap`` the labels are used verbatim and ``n`` defaults to one
    more than the largest label. With ``remap`` the used labels are mapped in
    increasing order onto 0..k-1 and recorded on ``Graph.labels``.
    """
    declared_n = None
    pairs: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"n\s*=\s*(\d+)", line)
        if m:
            if declared_n is not None:
                raise ParseError(lineno, "repeated n= header")
            declared_n = int(m.group(1))
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(lineno, f"expected 'u v' with nonnegative integers, got {raw!r}")
        u, v = int(parts[0]), int(parts[1])
        if u == v:
            raise ParseError(lineno, f"loop at vertex {u}")
        pairs.append((lineno, u, v))

    used = sorted({x for _, u, v in pairs for x in (u, v)})
    labels = None
    if remap:
        mapping = {x: i for i, x in enumerate(used)}
        n = max(len(used), declared_n or 0, 1)
        labels = tuple(used)
    else:
        mapping = {x: x for x in used}
        n = used[-1] + 1 if used else 1
        if declared_n is not None:
            if declared_n < n:
                raise GraphError(f"n={declared_n} but label {used[-1]} is used")
            n = declared_n

    seen: dict[tuple[int, int], int] = {}
    edges = []
    for lineno, u, v in pairs:
        a, b = mapping[u], mapping[v]
        e = (min(a, b), max(a, b))
        if e in seen:
            raise ParseError(lineno, f"duplicate edge {u} {v} (first at line {seen[e]})")
        seen[e] = lineno
        edges.append(e)
    return Graph.from_edges(n, edges, labels)


def component_count(g: Graph, subset: int) -> int:
    """Components of the spanning subgraph (V, A) for the edge bitmask ``subset``."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = g.n
    i = 0
    while subset:
        if subset & 1:
            u, v = g.edges[i]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                count -= 1
        subset >>= 1
        i += 1
    return count


def girth(g: Graph) -> float:
    """Length of a shortest cycle, or ``INF`` for forests."""
    best = INF
    for r in range(g.n):
        dist = {r: 0}
        parent = {r: -1}
        queue = deque([r])
        while queue:
            x = queue.popleft()
            for y in g.adjacency[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def spanning_tree(g: Graph) -> int:
    """BFS tree from vertex 0 (neighbors in ascending order) as an edge bitmask."""
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    mask = 0
    while queue:
        x = queue.popleft()
        for y in sorted(g.adjacency[x]):
            if not seen[y]:
                seen[y] = True
                mask |= 1 << g.edge_index(x, y)
                queue.append(y)
    if not all(seen):
        raise GraphError("spanning_tree needs a connected graph")
    return mask


def bfs_order(g: Graph, root: int = 0) -> list[int]:
    """Vertices in BFS order from ``root``; other components follow, each from its least vertex."""
    seen = [False] * g.n
    order = []
    for r in [root] + list(range(g.n)):
        if seen[r]:
            continue
        seen[r] = True
        queue = deque([r])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in sorted(g.adjacency[x]):
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
    return order


def count_cycles_of_length(g: Graph, length: int) -> int:
    """Number of distinct cycles on exactly ``length`` vertices.

    Each cycle is walked from its least vertex, and of the two directions only
    the one whose second vertex is smaller than its last is counted.
    """
    if length < 3:
        raise GraphError("cycle length must be at least 3")
    count = 0
    adj = [sorted(a) for a in g.adjacency]

    def extend(start, path, on_path):
        nonlocal count
        last = path[-1]
        if len(path) == length:
            if start in g.adjacency[last] and path[1] < last:
                count += 1
            return
        for y in adj[last]:
            if y > start and not on_path[y]:
                on_path[y] = True
                path.append(y)
                extend(start, path, on_path)
                path.pop()
                on_path[y] = False

    for start in range(g.n):
        on_path = [False] * g.n
        on_path[start] = True
        extend(start, [start], on_path)
    return count


def cone(g: Graph) -> Graph:
    """Join a new vertex ``w = n`` to every vertex.

    The edge tuple stays lexicographically sorted, so the ``w`` edges ``(v, n)``
    are interleaved with the original ones; ``cone_vertex_edges`` finds them.
    The original edges keep their relative order.
    """
    w = g.n
    return Graph.from_edges(g.n + 1, list(g.edges) + [(v, w) for v in range(g.n)])


def cone_vertex_edges(m_graph: Graph) -> list[int]:
    """Edge indices incident to the apex ``w = n - 1`` of a cone."""
    w = m_graph.n - 1
    return [i for i, (u, v) in enumerate(m_graph.edges) if v == w]


# --- generators -------------------------------------------------------------

def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise GraphError("cycle needs k >= 3")
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def complete_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def path_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def glue_cycles(g: int) -> Graph:
    """A ``g``-cycle and a ``(g+1)``-cycle sharing exactly vertex 0."""
    if g < 3:
        raise GraphError("glue-cycles needs g >= 3")
    edges = [(i, (i + 1) % g) for i in range(g)]
    second = [0] + list(range(g, 2 * g))
    edges += [(second[i], second[(i + 1) % len(second)]) for i in range(len(second))]
    return Graph.from_edges(2 * g, edges)


def wheel_graph(k: int) -> Graph:
    return cone(cycle_graph(k))


_SPEC_RE = re.compile(r"^(Cn|Kn|Pn|Wn|C|K|P|W)\s*(\d+)$")


def from_spec(spec: str) -> Graph:
    """Build a graph from a generator spec or read it from an edge-list file.

    Accepted: ``C4``, ``K5``, ``P6``, ``W4``, ``Cn 4`` (and ``Kn``/``Pn``/``Wn``),
    ``cone:<spec>``, ``cone <spec>``, ``glue:3``, ``glue-cycles 3``, or a path.
    """
    spec = spec.strip()
    for prefix in ("cone:", "cone "):
        if spec.startswith(prefix):
            return cone(from_spec(spec[len(prefix):]))
    m = re.fullmatch(r"(?:glue:|glue-cycles\s+)(\d+)", spec)
    if m:
        return glue_cycles(int(m.group(1)))
    m = _SPEC_RE.fullmatch(spec)
    if m:
        kind, k = m.group(1)[0], int(m.group(2))
        return {"C": cycle_graph, "K": complete_graph, "P": path_graph, "W": wheel_graph}[kind](k)
    path = Path(spec)
    if path.is_file():
        return parse_edge_list(path.read_text())
    raise GraphError(f"unknown graph spec or missing file: {spec!r}")
