from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regularity.errors import DomainError, HypothesisFailed
from regularity.graph import complete_graph, edge_density, complete_tripartite, make_graph, random_graph
from regularity.oracles import brute_triangles
from regularity.triangles import (
    census,
    clean_graph,
    counting_lemma_bound,
    neighbor_bound_defect,
    neighborhood_edges_bound,
    triangle_in_graph,
    triangle_removal,
    triangle_set,
    triangle_triples,
)

Q = Fraction(1, 4)


def test_triangle_examples():
    k3 = complete_graph(3)
    path = make_graph(range(3), [(0, 1), (1, 2)])
    assert triangle_in_graph(0, 1, 2, k3)
    assert not triangle_in_graph(0, 0, 1, k3)
    assert not triangle_in_graph(0, 1, 2, path)
    V = range(3)
    assert len(triangle_triples(V, V, V, k3)) == 6
    assert len(triangle_triples([0], [1], [2], k3)) == 1
    assert triangle_triples(V, V, V, path) == set()
    assert len(triangle_set(k3)) == 1 and len(triangle_set(complete_graph(4))) == 4
    assert triangle_set(make_graph(range(4), [(0, 2), (0, 3), (1, 2), (1, 3)])) == set()
    assert census(k3).ordered_count == 6


@given(st.integers(0, 11), st.integers(1, 9), st.integers(0, 1000))
@settings(max_examples=60)
def test_triangle_set_matches_oracle(n, k, seed):
    G = random_graph(n, Fraction(k, 10), seed)
    assert triangle_set(G) == brute_triangles(G)
    assert len(triangle_triples(G.vertices, G.vertices, G.vertices, G)) == 6 * len(triangle_set(G))


def test_counting_lemma_examples():
    cert = counting_lemma_bound([0], [1], [2], complete_tripartite(1, 1, 1), Q)
    assert cert.hypotheses_ok and cert.bound == Fraction(27, 128) and cert.actual == 1 and cert.holds
    sparse = make_graph(range(6), [(0, 2)])
    low = counting_lemma_bound([0, 1], [2, 3], [4, 5], sparse, Q)
    assert not low.hypotheses_ok and low.holds
    empty = counting_lemma_bound([0], [1], [2], make_graph(range(3), []), Q)
    assert not empty.hypotheses_ok


def test_neighbor_bounds():
    kb = complete_tripartite(3, 3, 3)
    X, Y, Z = range(3), range(3, 6), range(6, 9)
    low, limit = neighbor_bound_defect(X, Y, kb, Q)
    assert low == 0 and low < limit
    lhs, rhs = neighborhood_edges_bound(0, X, Y, Z, kb, Q)
    assert lhs == 9 and lhs >= rhs
    lhs, rhs = neighborhood_edges_bound(0, [0], [1, 2], [3, 4], make_graph(range(5), []), Q, check_hypotheses=False)
    assert lhs == 0 == rhs
    with pytest.raises(HypothesisFailed):
        neighborhood_edges_bound(0, [0], [1], [2], make_graph(range(3), []), Q)


def test_neighborhood_bound_on_dense_tripartite():
    checked = 0
    full = complete_tripartite(8, 8, 8)
    X, Y, Z = range(8), range(8, 16), range(16, 24)
    eps = Fraction(1, 3)
    for seed in range(40):
        G = full.with_edges(e for e in random_graph(24, Fraction(9, 10), seed).edges if e in full.edges)
        if not counting_lemma_bound(X, Y, Z, G, eps).hypotheses_ok:
            continue
        for x in X:
            try:
                lhs, rhs = neighborhood_edges_bound(x, X, Y, Z, G, eps)
            except HypothesisFailed:
                continue
            assert lhs >= rhs
            checked += 1
    assert checked > 0


def test_clean_edgeless_and_complete():
    res = clean_graph(make_graph(range(6), []), Fraction(1, 2))
    assert res.removed == frozenset() and res.cleaned.m == 0
    k6 = complete_graph(6)
    res = clean_graph(k6, Fraction(1, 2))
    assert len(res.removed) <= Fraction(1, 2) * 36
    assert not res.removed_sparse


def test_clean_classes_match_their_rules():
    for seed in range(12):
        G = random_graph(12, Fraction(1, 5), seed)
        res = clean_graph(G, Fraction(1, 2))
        owner = res.partition_used.part_of()
        for e in res.removed_sparse:
            u, v = tuple(e)
            assert edge_density(owner[u], owner[v], G) < res.density_floor
        for e in res.removed_small:
            u, v = tuple(e)
            assert min(len(owner[u]), len(owner[v])) < res.size_floor
        assert res.cleaned.edges == G.edges - res.removed


def test_clean_sparse_pair_removed():
    # a perfect matching on 22 vertices is regular at eps/4 but far below the eps/2 floor
    G = make_graph(range(22), [(i, i + 11) for i in range(11)])
    res = clean_graph(G, Fraction(9, 10))
    assert len(res.partition_used) == 1
    assert res.removed_sparse == G.edges and not res.removed_irregular and res.cleaned.m == 0


def test_removal_branches():
    G = random_graph(9, Fraction(1, 2), 0)
    res = triangle_removal(G, 2)
    assert res.cleaned.m == 0 and res.removed == G.m <= 2 * 81
    bip = make_graph(range(6), [(u, v) for u in range(3) for v in range(3, 6)])
    res = triangle_removal(bip, Fraction(1, 2))
    assert res.triangle_free and res.removed <= Fraction(1, 2) * 36
    sparse = random_graph(12, Fraction(1, 6), 11)
    res = triangle_removal(sparse, Fraction(1, 2))
    assert res.removed <= 72
    assert res.triangle_free or res.certificate.actual >= res.certificate.bound > 0
    with pytest.raises(DomainError):
        triangle_removal(G, 0)
