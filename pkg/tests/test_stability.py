from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from erdos_sos import Graph, GraphError
from erdos_sos.constructions import (complete_bipartite, complete_graph, disjoint_cliques, disjoint_union,
                                     near_extremal_bipartite, random_graph)
from erdos_sos.stability import bipartite_filter, detect_bipartite_core, detect_dense_core, peel

from strategies import bipartite_graphs, graphs


def test_clique_among_noise():
    g = disjoint_union(complete_graph(32), random_graph(40, Fraction(1, 10), 1))
    s = detect_dense_core(g, 32, Fraction(1, 10))
    h = set(s.H)
    assert len(h) == 32 and min(len(g.neighbors(v) & h) for v in h) == 31
    assert s.verify(g)


def test_no_dense_core():
    assert detect_dense_core(Graph(50), 32, Fraction(1, 10)) is None
    # K40 survives the peel but is too big
    assert detect_dense_core(complete_graph(40), 32, Fraction(1, 10)) is None


def test_disjoint_cliques_give_a_core():
    s = detect_dense_core(disjoint_cliques(60, 20), 20, Fraction(1, 10))
    assert s is not None and s.H == tuple(range(20))


def test_bad_alpha():
    with pytest.raises(GraphError):
        detect_dense_core(complete_graph(5), 4, 0)


@given(graphs(min_n=1, max_n=25), st.integers(2, 10), st.sampled_from([Fraction(1, 10), Fraction(1, 4)]))
def test_dense_core_bounds(g, k, alpha):
    s = detect_dense_core(g, k, alpha)
    if s is not None:
        assert s.verify(g)
        assert len(s.H) <= (1 + alpha) * k


@given(graphs(min_n=1, max_n=20), st.integers(1, 6))
def test_peel_is_order_free(g, floor):
    a = peel(g, floor)
    b = peel(g, floor, highest_first=True)
    assert a == b
    assert all(len(g.neighbors(v) & a) >= floor for v in a)


def test_near_extremal_found():
    g, xs, ys = near_extremal_bipartite(30, Fraction(1, 50), 200)
    s = detect_bipartite_core(g, xs, ys, 30, Fraction(1, 10), 180)
    assert s is not None and s.verify(g)
    assert len(s.X) == 15 and len(s.Y) == 200


def test_bipartite_edgeless():
    assert detect_bipartite_core(Graph(30), range(10), range(10, 30), 10, Fraction(1, 10), 5) is None


def test_bipartite_halved_rows_dropped():
    g = complete_bipartite(16, 200)
    g = Graph(216, [e for e in g.edges if not (e[0] < 3 and e[1] % 2)])
    s = detect_bipartite_core(g, range(16), range(16, 216), 26, Fraction(1, 20), 150)
    assert s.X == tuple(range(3, 16)) and s.verify(g)


def test_bipartite_rejects_inner_edge():
    g = Graph(4, [(0, 1), (0, 2)])
    with pytest.raises(GraphError):
        detect_bipartite_core(g, [0, 1], [2, 3], 2, Fraction(1, 10), 1)


@settings(max_examples=40)
@given(bipartite_graphs(max_a=6, max_b=12), st.integers(2, 10), st.sampled_from([Fraction(1, 10), Fraction(1, 3)]))
def test_filter_order_independent(data, k, alpha):
    g, xs, ys = data
    a = bipartite_filter(g, xs, ys, k, alpha, x_first=True)
    b = bipartite_filter(g, xs, ys, k, alpha, x_first=False)
    assert a[:2] == b[:2]
    fx, fy = a[:2]
    if fx and fy:
        assert all(len(g.neighbors(x) & fy) >= (1 - alpha) * len(fy) for x in fx)
        assert all(len(g.neighbors(y) & fx) >= (1 - alpha) * k / 2 for y in fy)
