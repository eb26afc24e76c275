from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from erdos_sos import GraphError
from erdos_sos.constructions import (ConstructionSpec, circulant_regular, disjoint_cliques,
                                     dominating_construction, dominating_edge_count,
                                     near_extremal_bipartite, random_tree, regular_graph)
from erdos_sos.oracles import contains_tree_bruteforce
from erdos_sos.constructions import star_tree


def test_disjoint_triangles():
    g = disjoint_cliques(6, 3)
    assert g.m == 6 == (3 - 1) * 6 // 2
    assert sorted(map(len, g.components())) == [3, 3]


def test_disjoint_cliques_d1():
    g = disjoint_cliques(4, 1)
    assert g.n == 4 and g.m == 0


def test_two_k4():
    assert disjoint_cliques(8, 4).m == 12


def test_disjoint_cliques_divisibility():
    with pytest.raises(GraphError):
        disjoint_cliques(7, 3)


def test_regular_k4():
    g = regular_graph(4, 3, seed=1)
    assert g.m == 6


def test_regular_cycles():
    g = regular_graph(6, 2, seed=5)
    assert set(g.degrees()) == {2}


def test_regular_parity():
    with pytest.raises(GraphError):
        regular_graph(5, 3)


@given(st.integers(2, 30), st.integers(0, 6), st.integers(0, 2**32 - 1))
def test_regular_degrees(n, r, seed):
    if r >= n or (n * r) % 2:
        with pytest.raises(GraphError):
            regular_graph(n, r, seed)
        return
    g = regular_graph(n, r, seed)
    assert set(g.degrees()) <= {r} and g.m == n * r // 2
    assert regular_graph(n, r, seed) == g


@pytest.mark.parametrize("n,r", [(10, 3), (7, 4), (12, 11)])
def test_circulant(n, r):
    assert set(circulant_regular(n, r).degrees()) == {r}


def test_dominating_star():
    g = dominating_construction(5, 3)
    assert g.m == 4 and g.degree(0) == 4


def test_dominating_empty():
    assert dominating_construction(3, 1).m == 0


def test_dominating_two_dominators():
    g = dominating_construction(7, 5)
    assert g.m == 11 == dominating_edge_count(7, 5)


@given(st.integers(1, 30), st.integers(0, 6))
def test_dominating_count(n, h):
    d = 2 * h + 1
    if h > n:
        return
    g = dominating_construction(n, d)
    assert g.m == dominating_edge_count(n, d)


def test_near_extremal_complete():
    g, x, y = near_extremal_bipartite(20, 0, 120)
    assert len(x) == 10 and len(y) == 120 and g.m == 1200


def test_near_extremal_degrees():
    g, x, y = near_extremal_bipartite(20, Fraction(1, 10), 120, seed=4)
    ys, xs = set(y), set(x)
    assert min(len(g.neighbors(v) & ys) for v in x) >= 108
    assert min(len(g.neighbors(v) & xs) for v in y) >= 9
    assert len(x) <= Fraction(11, 10) * 20 / 2


def test_near_extremal_small_y():
    with pytest.raises(GraphError):
        near_extremal_bipartite(20, Fraction(1, 10), 100)


@given(st.integers(2, 20).map(lambda h: 2 * h), st.fractions(0, Fraction(1, 5)), st.integers(0, 10))
def test_near_extremal_hypotheses(k, eps, seed):
    g, x, y = near_extremal_bipartite(k, eps, 6 * k, seed)
    xs, ys = set(x), set(y)
    assert len(x) <= (1 + eps) * k / 2 and len(y) >= 6 * k
    assert min(len(g.neighbors(v) & ys) for v in x) >= (1 - eps) * len(y)
    assert min(len(g.neighbors(v) & xs) for v in y) >= (1 - eps) * k / 2
    assert all((u in xs) != (v in xs) for u, v in g.edges)


def test_tree_single_edge():
    t = random_tree(1, 2)
    assert t.order == 2 and t.k == 1


def test_tree_path_forced():
    t = random_tree(5, 2, seed=3)
    assert t.order == 6 and sorted(t.graph.degrees()) == [1, 1, 2, 2, 2, 2]


def test_tree_degree_cap():
    t = random_tree(10, 3, seed=8)
    assert t.order == 11 and t.max_degree <= 3


def test_tree_cap_too_small():
    with pytest.raises(GraphError):
        random_tree(4, 1)


@given(st.integers(0, 60), st.integers(2, 6), st.integers(0, 2**32 - 1))
def test_tree_deterministic(k, delta, seed):
    t = random_tree(k, delta, seed)
    assert t.k == k and t.max_degree <= delta
    assert random_tree(k, delta, seed).graph == t.graph


@pytest.mark.parametrize("d", range(2, 7))
def test_regular_misses_star(d):
    for n in range(d, 21):
        if (n * (d - 1)) % 2 == 0:
            assert contains_tree_bruteforce(regular_graph(n, d - 1, n), star_tree(d)).contained is False


def test_spec_build_kinds():
    assert ConstructionSpec("disjoint-cliques", n=12, d=4).build().m == 18
    g, x, y = ConstructionSpec("near-extremal-bipartite", k=10, eps=Fraction(0), y_size=60).build()
    assert g.m == 5 * 60
    assert ConstructionSpec("random-tree", k=7, max_degree=3, seed=1).build().k == 7
    with pytest.raises(GraphError):
        ConstructionSpec("petersen").build()
