from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from erdos_sos import Graph, GraphError
from erdos_sos.constructions import complete_bipartite, complete_graph, disjoint_union
from erdos_sos.cutdensity import (cut_dense_decomposition, cut_ratio, dominated_decomposition,
                                  extension_delta, extension_kappa_bound, find_cut_dense_subgraph,
                                  is_cut_dense, kappa_exact, sparse_cut_search, union_kappa_bound)

from strategies import graphs


def bridged_k5():
    edges = list(combinations(range(5), 2)) + list(combinations(range(5, 10), 2)) + [(4, 5)]
    return Graph(10, edges)


def brute_kappa(g):
    best = None
    for r in range(1, g.n):
        for a in combinations(range(g.n), r):
            val = cut_ratio(g, a)
            best = val if best is None else min(best, val)
    return best


# κ


def test_kappa_clique():
    rep = kappa_exact(complete_graph(6))
    assert rep.kappa == 1 and rep.exact


def test_kappa_c4():
    c4 = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    rep = kappa_exact(c4)
    assert rep.kappa == Fraction(1, 2)
    assert len(rep.side_a) == 2 and c4.has_edge(*rep.side_a)


def test_kappa_disconnected():
    g = Graph(5, [(0, 1), (2, 3), (3, 4)])
    rep = kappa_exact(g)
    assert rep.kappa == 0 and set(rep.side_a) in ({0, 1}, {2, 3, 4})


def test_kappa_cap():
    with pytest.raises(GraphError):
        kappa_exact(Graph(21))


@given(graphs(min_n=2, max_n=9))
def test_kappa_matches_brute_force(g):
    rep = kappa_exact(g)
    assert rep.kappa == brute_kappa(g) == cut_ratio(g, rep.side_a)


@given(graphs(min_n=2, max_n=12), st.integers(0, 1000))
def test_search_is_upper_bound(g, seed):
    rep = sparse_cut_search(g, 16, seed)
    assert rep.kappa == cut_ratio(g, rep.side_a) >= kappa_exact(g).kappa


@given(graphs(min_n=2, max_n=14))
def test_minimum_degree_and_edges(g):
    p = kappa_exact(g).kappa
    assert g.min_degree() >= p * (g.n - 1)
    assert g.m >= p * g.n * g.n / 4


def test_search_clique():
    assert sparse_cut_search(complete_graph(6), 8, 3).kappa == 1


def test_search_bridge():
    assert sparse_cut_search(bridged_k5(), 64, 0).kappa == Fraction(1, 25)


def test_search_c4():
    c4 = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert sparse_cut_search(c4, 64, 0).kappa == Fraction(1, 2)


# decomposition


def test_decompose_bridge():
    dec = cut_dense_decomposition(bridged_k5(), Fraction(1, 10))
    assert dec.deleted_edges == [(4, 5)]
    assert sorted(c.n for c in dec.components) == [5, 5]
    assert len(dec.deleted_edges) <= Fraction(1, 10) * 121


def test_decompose_clique_untouched():
    dec = cut_dense_decomposition(complete_graph(6), Fraction(1, 2))
    assert dec.deleted_edges == [] and dec.t == 1


def test_decompose_empty():
    dec = cut_dense_decomposition(Graph(5), Fraction(3, 10))
    assert dec.t == 0 and dec.deleted_edges == []


@given(graphs(min_n=1, max_n=12), st.fractions(Fraction(1, 20), 1))
def test_decomposition_contract(g, q):
    dec = cut_dense_decomposition(g, q)
    kept = set()
    seen = set()
    for comp in dec.components:
        vs = set(comp.origin)
        assert not vs & seen
        seen |= vs
        kept |= {tuple(sorted((comp.origin[u], comp.origin[v]))) for u, v in comp.edges}
        if comp.n >= 2:
            assert is_cut_dense(comp, q)
    deleted = set(dec.deleted_edges)
    assert not kept & deleted and kept | deleted == set(g.edges)
    assert len(deleted) <= q * g.n * g.n


# cut-dense subgraph


def test_find_in_clique():
    # e(K10) = 45 < 2qn² = 50 at q = 1/4, so the precondition rejects it there
    with pytest.raises(GraphError, match="precondition"):
        find_cut_dense_subgraph(complete_graph(10), Fraction(1, 4))
    h = find_cut_dense_subgraph(complete_graph(10), Fraction(1, 5))
    assert h.n == 10 and h.m == 45


def test_find_in_bridged():
    h = find_cut_dense_subgraph(bridged_k5(), Fraction(1, 20))
    assert h.n == 5 and h.m == 10


def test_find_precondition():
    g = Graph(20, [(2 * i, 2 * i + 1) for i in range(10)])
    with pytest.raises(GraphError):
        find_cut_dense_subgraph(g, Fraction(1, 5))


# dominated decomposition


def test_dominated_single_core():
    g = complete_bipartite(5, 50)
    dec = dominated_decomposition(g, range(5), range(5, 55), Fraction(1, 1000), 10)
    assert dec.t == 1 and set(range(5)) <= set(dec.cores[0].origin) and not dec.deleted_edges


def test_dominated_empty():
    dec = dominated_decomposition(Graph(20), range(5), range(5, 20), Fraction(1, 1000), 10)
    assert dec.t == 0 and not dec.deleted_edges


def test_dominated_two_copies():
    g = disjoint_union(complete_bipartite(5, 50), complete_bipartite(5, 50))
    xs = list(range(5)) + list(range(55, 60))
    ys = [v for v in range(110) if v not in xs]
    dec = dominated_decomposition(g, xs, ys, Fraction(1, 1000), 10)
    assert dec.t == 2 and not dec.deleted_edges
    a, b = (set(c.origin) for c in dec.components)
    assert not a & b
    for comp, core in zip(dec.components, dec.cores):
        assert set(comp.origin) & set(xs) <= set(core.origin) <= set(comp.origin)


# union and extension bounds


def test_union_bound_value():
    assert union_kappa_bound(Fraction(1, 2), {0, 1, 2}, {2, 3}) == Fraction(1, 2) * 1 / (4 * 4)


@given(st.integers(2, 6), st.integers(2, 6), st.integers(1, 4))
def test_union_of_cliques(a, b, overlap):
    overlap = min(overlap, a, b)
    v1 = list(range(a))
    v2 = list(range(a - overlap, a - overlap + b))
    edges = set(combinations(v1, 2)) | set(combinations(v2, 2))
    n = max(v2) + 1
    g = Graph(n, edges)
    assert kappa_exact(g).kappa >= union_kappa_bound(1, v1, v2)


def test_extension_bound():
    h = Graph(6, list(combinations(range(4), 2)) + [(0, 4), (1, 4), (2, 5), (3, 5)])
    delta = extension_delta(h, range(4))
    assert delta == Fraction(1, 2)
    bound = extension_kappa_bound(1, delta, 4, 6)
    assert bound == Fraction(1, 2) * 16 / (4 * 36)
    assert kappa_exact(h).kappa >= bound
