"""Built-in graph collections used by the verification suites."""

from __future__ import annotations

import random
from functools import lru_cache

import networkx as nx

from .graphcore import Graph, complete_graph, cone, cycle_graph, glue_cycles


def from_networkx(h: nx.Graph) -> Graph:
    nodes = sorted(h.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return Graph.from_edges(len(nodes), [(index[u], index[v]) for u, v in h.edges()])


@lru_cache(maxsize=None)
def connected_graphs(max_n: int, min_n: int = 1) -> tuple[Graph, ...]:
    """Every connected graph with min_n..max_n vertices, one per isomorphism class (max_n <= 7)."""
    if max_n > 7:
        raise ValueError("the graph atlas only covers up to 7 vertices")
    out = []
    for h in nx.graph_atlas_g():
        k = h.number_of_nodes()
        if min_n <= k <= max_n and k > 0 and nx.is_connected(h):
            out.append(from_networkx(h))
    return tuple(out)


def random_tree(n: int, rng: random.Random) -> Graph:
    if n == 1:
        return Graph.from_edges(1, [])
    if n == 2:
        return Graph.from_edges(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return from_networkx(nx.from_prufer_sequence(seq))


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    """A random spanning tree plus each remaining pair with probability p."""
    t = random_tree(n, rng)
    edges = set(t.edges)
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < p:
                edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


def named_corpus() -> list[tuple[str, Graph]]:
    out = [(f"C{k}", cycle_graph(k)) for k in range(3, 9)]
    out += [(f"K{k}", complete_graph(k)) for k in range(2, 6)]
    out += [(f"cone:C{k}", cone(cycle_graph(k))) for k in range(3, 6)]
    out += [("glue:3", glue_cycles(3)), ("glue:5", glue_cycles(5))]
    return out


def builtin_corpus(name: str = "small") -> list[tuple[str, Graph]]:
    """``small``: connected graphs with n <= 5 plus the named families."""
    if name == "small":
        atlas = [(f"atlas:{i}", g) for i, g in enumerate(connected_graphs(5))]
        return atlas + named_corpus()
    if name == "named":
        return named_corpus()
    if name == "connected6":
        return [(f"atlas6:{i}", g) for i, g in enumerate(connected_graphs(6))]
    raise ValueError(f"unknown corpus {name!r} (choose small, named, connected6)")
