import random
from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from dpchroma.chrompoly import whitney_expansion
from dpchroma.corpus import builtin_corpus, random_connected_graph
from dpchroma.counter import (
    bad_intersection_count, bad_set_sums, brute_force_count, count_colorings,
    count_full_transversals, inclusion_exclusion_count, verify_lemma_formulas2,
    verify_lemma_three,
)
from dpchroma.cover import (
    DPCover, canonical_cover, identity, normalize_on_star, random_cover, twist_stats,
)
from dpchroma.errors import CapacityError, PreconditionError
from dpchroma.graphcore import Graph, complete_graph, cone, cycle_graph, from_spec
from dpchroma.poly import evaluate


def brute_bad(c, idx):
    g = c.graph
    return sum(1 for col in product(range(c.m), repeat=g.n)
               if all(col[g.edges[i][1]] == c.sigma[i][col[g.edges[i][0]]] for i in idx))


def random_small_cover(rng):
    n = rng.randint(2, 6)
    g = random_connected_graph(n, rng.choice([0.2, 0.5, 0.9]), rng)
    m = rng.randint(1, 4)
    c = random_cover(g, m, rng) if rng.random() < 0.8 else canonical_cover(g, m)
    return c


def test_count_examples():
    assert count_colorings(canonical_cover(cycle_graph(4), 3)) == 18
    assert count_colorings(canonical_cover(from_spec("K2"), 3)) == 6
    twisted = DPCover(cycle_graph(4), 2, ((0, 1), (0, 1), (0, 1), (1, 0)))
    assert brute_force_count(twisted) == 0
    assert count_colorings(twisted) == 0


def test_brute_force_examples():
    assert brute_force_count(canonical_cover(Graph.from_edges(3, []), 3)) == 27
    assert brute_force_count(canonical_cover(complete_graph(3), 2)) == 0
    with pytest.raises(CapacityError):
        brute_force_count(canonical_cover(cycle_graph(9), 10))


def test_disconnected_counts_multiply():
    g = Graph.from_edges(5, [(0, 1), (2, 3), (3, 4), (2, 4)])
    rng = random.Random(2)
    for _ in range(10):
        c = random_cover(g, 3, rng)
        assert count_colorings(c) == brute_force_count(c)


def test_oracle_equivalence_randomized():
    rng = random.Random(20240601)
    for _ in range(300):
        c = random_small_cover(rng)
        assert count_colorings(c) == brute_force_count(c)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_inclusion_exclusion_identity(seed):
    c = random_small_cover(random.Random(seed))
    if c.graph.s <= 10:
        assert inclusion_exclusion_count(c) == count_colorings(c)


def test_inclusion_exclusion_examples():
    assert inclusion_exclusion_count(canonical_cover(cycle_graph(4), 2)) == 2
    assert inclusion_exclusion_count(canonical_cover(from_spec("K2"), 3)) == 6
    rng = random.Random(9)
    c = random_cover(cycle_graph(5), 3, rng)
    assert inclusion_exclusion_count(c) == count_colorings(c)


def test_canonical_count_is_chromatic_polynomial():
    for name, g in builtin_corpus("small"):
        if g.n > 8:
            continue
        p = whitney_expansion(g)
        for m in range(0, 5 if g.n <= 6 else 4):
            if m == 0:
                continue
            assert count_colorings(canonical_cover(g, m)) == evaluate(p, m), (name, m)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_bad_intersection_matches_brute_force(seed):
    rng = random.Random(seed)
    c = random_small_cover(rng)
    s = c.graph.s
    k = rng.randint(0, s)
    idx = sorted(rng.sample(range(s), k))
    assert bad_intersection_count(c, idx) == brute_bad(c, idx)


def test_bad_intersection_examples():
    rng = random.Random(1)
    for spec in ["C4", "K4", "W4"]:
        g = from_spec(spec)
        c = random_cover(g, 3, rng)
        for i in range(g.s):
            assert bad_intersection_count(c, [i]) == 3 ** (g.n - 1)
    for gl in (3, 4, 5):
        c = canonical_cover(cycle_graph(gl), 4)
        assert bad_intersection_count(c, range(gl)) == 4
    c4 = canonical_cover(cycle_graph(4), 3)
    # (0,1) and (1,2) share vertex 1
    assert bad_intersection_count(c4, [0, 2]) == 9
    assert bad_intersection_count(c4, 0b101) == 9


def test_bad_set_sums_size_zero():
    c = canonical_cover(cycle_graph(4), 3)
    assert bad_set_sums(c)[0] == 81


@pytest.mark.parametrize("spec", ["C4", "C5", "glue:3"])
def test_lemma_formulas2_holds(spec):
    g = from_spec(spec)
    rng = random.Random(len(spec))
    covers = [canonical_cover(g, 3)] + [random_cover(g, 3, rng) for _ in range(5)]
    for c in covers:
        rep = verify_lemma_formulas2(c)
        assert rep.passed, rep.failures
        assert rep.checked >= 3


def test_lemma_formulas2_equality_is_sharp_on_cycles():
    rep = verify_lemma_formulas2(canonical_cover(cycle_graph(4), 3))
    cap = next(c for c in rep.checks if c.statement.startswith("(ii) k=4: |∩S| <= "))
    # canonical C4: all four constraints hold exactly on the m constant layers
    assert cap.actual_value == 3 and cap.bound_value == 3


def test_lemma_formulas2_precondition():
    with pytest.raises(PreconditionError):
        verify_lemma_formulas2(canonical_cover(from_spec("P4"), 3))


def test_lemma_three_examples():
    W4 = from_spec("W4")
    rep = verify_lemma_three(canonical_cover(W4, 4))
    assert rep.passed and rep.info["x_H"] == 0
    sigma = [identity(4)] * W4.s
    sigma[W4.edges.index((0, 1))] = (1, 0, 2, 3)
    rep = verify_lemma_three(DPCover(W4, 4, tuple(sigma)))
    assert rep.passed and rep.info["x_H"] == 2
    rng = random.Random(4)
    for _ in range(5):
        c = normalize_on_star(random_cover(W4, 3, rng))
        assert verify_lemma_three(c).passed


def test_lemma_three_checks_each_k_separately():
    rep = verify_lemma_three(canonical_cover(from_spec("W4"), 3))
    heads = [c.statement.split(" ")[0] for c in rep.checks]
    assert heads == ["(i)", "(ii)", "(iii)", "(iv)", "(v)", "(v)"]
    assert [c.statement.split(":")[0] for c in rep.checks[4:]] == ["(v) k=7", "(v) k=8"]


def test_lemma_three_skips_when_too_large():
    M = cone(cycle_graph(8))  # 16 edges
    rep = verify_lemma_three(canonical_cover(M, 2), max_edges=14)
    assert rep.checked == 0 and rep.passed


def test_lemma_three_needs_star_normalization():
    W4 = from_spec("W4")
    sigma = [identity(3)] * W4.s
    sigma[W4.edges.index((0, 4))] = (1, 0, 2)
    with pytest.raises(PreconditionError):
        verify_lemma_three(DPCover(W4, 3, tuple(sigma)))


def test_full_transversals():
    assert count_full_transversals(canonical_cover(cycle_graph(5), 3)) == 3
    assert count_full_transversals(canonical_cover(from_spec("K2"), 5)) == 5
    assert count_full_transversals(canonical_cover(complete_graph(4), 2)) == 2
    twisted = DPCover(cycle_graph(4), 2, ((0, 1), (0, 1), (0, 1), (1, 0)))
    with pytest.raises(PreconditionError):
        count_full_transversals(twisted)
