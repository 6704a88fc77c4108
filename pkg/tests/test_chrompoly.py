import random
from fractions import Fraction
from itertools import product

import pytest

from dpchroma.chrompoly import (
    MAX_SUBSET_EDGES, classify_spanning_subgraphs, coefficient_report, deletion_contraction,
    signed_coefficients, whitney_expansion,
)
from dpchroma.corpus import builtin_corpus, connected_graphs, random_connected_graph
from dpchroma.errors import CapacityError, PreconditionError
from dpchroma.graphcore import Graph, complete_graph, cone, cycle_graph, from_spec, path_graph
from dpchroma.poly import IntPolynomial, evaluate


def proper_colorings(g, m):
    return sum(1 for col in product(range(m), repeat=g.n)
               if all(col[u] != col[v] for u, v in g.edges))


def interpolate(g):
    """Chromatic polynomial from brute-force counts at m = 0..n (Lagrange, exact)."""
    xs = list(range(g.n + 1))
    ys = [proper_colorings(g, m) for m in xs]
    coeffs = [Fraction(0)] * (g.n + 1)
    for i, xi in enumerate(xs):
        basis = [Fraction(1)]
        denom = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += ys[i] * b / denom
    assert all(c.denominator == 1 for c in coeffs)
    return IntPolynomial(int(c) for c in coeffs)


def test_whitney_examples():
    assert whitney_expansion(cycle_graph(4)).coeffs == (0, -3, 6, -4, 1)
    assert whitney_expansion(complete_graph(2)).coeffs == (0, -1, 1)
    # m (m-1)^2
    assert whitney_expansion(path_graph(3)) == IntPolynomial([0, 1, -2, 1])


def test_deletion_contraction_examples():
    assert deletion_contraction(complete_graph(3)) == IntPolynomial.falling_factorial(3)
    assert deletion_contraction(Graph.from_edges(4, [])) == IntPolynomial.monomial(4)
    assert deletion_contraction(complete_graph(4)).coeffs == (0, -6, 11, -6, 1)


@pytest.mark.parametrize("spec", ["C4", "K4", "P5", "W4", "glue:3", "K1", "C5"])
def test_both_methods_match_interpolation_oracle(spec):
    g = from_spec(spec)
    want = interpolate(g)
    assert whitney_expansion(g) == want
    assert deletion_contraction(g) == want


def test_methods_agree_on_all_connected_graphs_up_to_6():
    for g in connected_graphs(6):
        assert whitney_expansion(g) == deletion_contraction(g), g.edges


def test_methods_agree_on_random_graphs_up_to_8():
    rng = random.Random(7)
    for _ in range(30):
        g = random_connected_graph(rng.randint(6, 8), 0.3, rng)
        assert whitney_expansion(g) == deletion_contraction(g)


def test_shared_memo_gives_same_results():
    memo = {}
    fresh = [deletion_contraction(g) for g in connected_graphs(5)]
    shared = [deletion_contraction(g, memo) for g in connected_graphs(5)]
    assert fresh == shared and memo


def test_capacity_limit_named():
    g = complete_graph(8)  # 28 edges
    with pytest.raises(CapacityError, match="MAX_SUBSET_EDGES=24"):
        whitney_expansion(g)
    assert MAX_SUBSET_EDGES == 24


def test_nonnegative_and_vanishing_below_chromatic_number():
    for name, g in builtin_corpus("named")[:10]:
        p = deletion_contraction(g)
        chi = next(k for k in range(g.n + 1) if proper_colorings(g, k) > 0) if g.n <= 6 else None
        for m in range(0, 8):
            assert evaluate(p, m) >= 0
            if chi is not None and m < chi:
                assert evaluate(p, m) == 0


def test_cone_identity():
    for name, g in builtin_corpus("small"):
        pc = deletion_contraction(cone(g))
        pg = deletion_contraction(g)
        for m in range(11):
            assert evaluate(pc, m) == m * evaluate(pg, m - 1), name


@pytest.mark.parametrize("spec,a", [
    ("C4", [1, 4, 6, 3, 0]),
    ("K4", [1, 6, 11, 6, 0]),
    ("P5", [1, 4, 6, 4, 1, 0]),
])
def test_coefficient_report_examples(spec, a):
    g = from_spec(spec)
    rep = coefficient_report(g)
    assert rep.passed
    assert signed_coefficients(whitney_expansion(g), g.n) == a


def test_coefficient_report_detects_wrong_polynomial():
    g = cycle_graph(4)
    bogus = IntPolynomial([0, -4, 6, -4, 1])
    assert not coefficient_report(g, bogus).passed


def test_coefficient_report_needs_connected():
    with pytest.raises(PreconditionError):
        coefficient_report(Graph.from_edges(3, [(0, 1)]))


def test_classify_k4():
    cls = classify_spanning_subgraphs(complete_graph(4))
    assert (cls.p3, cls.p4, cls.p5, cls.p6, cls.a3, cls.t) == (16, 15, 6, 1, 6, 4)
    assert cls.a3 == -deletion_contraction(complete_graph(4)).coeff(1)


def test_classify_rejects_tiny():
    with pytest.raises(PreconditionError):
        classify_spanning_subgraphs(complete_graph(2))


@pytest.mark.parametrize("spec", ["C3", "C4", "C5", "P4", "K4", "glue:3"])
def test_classify_a3_matches_whitney(spec):
    M = cone(from_spec(spec))
    cls = classify_spanning_subgraphs(M)
    assert cls.a3 == signed_coefficients(whitney_expansion(M), M.n)[3]
    assert cls.a3 == cls.p3 - cls.p4 + cls.p5 - cls.p6
