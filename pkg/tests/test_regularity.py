from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from erdos_sos import Graph, GraphError
from erdos_sos.constructions import complete_bipartite, random_graph
from erdos_sos.cutdensity import kappa_exact
from erdos_sos.regularity import (RegularityPartition, halve_partition, is_regular_pair, pair_density,
                                  partition_energy, reduced_graph, regularity_cover, regularity_refine)

from strategies import bipartite_graphs

EPS, ETA = Fraction(1, 4), Fraction(1, 8)


def brute_regular(g, a, b, eps):
    """Direct definition over every A' ⊆ A, B' ⊆ B above the size floors."""
    d = pair_density(g, a, b)
    for ra in range(1, len(a) + 1):
        if ra < eps * len(a):
            continue
        for sa in combinations(a, ra):
            for rb in range(1, len(b) + 1):
                if rb < eps * len(b):
                    continue
                for sb in combinations(b, rb):
                    if abs(pair_density(g, sa, sb) - d) > eps * d:
                        return False
    return True


def test_complete_pair_regular():
    g = complete_bipartite(5, 5)
    assert is_regular_pair(g, range(5), range(5, 10), Fraction(1, 10)).regular


def test_empty_pair_regular():
    assert is_regular_pair(Graph(8), range(4), range(4, 8), Fraction(1, 10)).regular


def test_half_graph_irregular():
    g = Graph(12, [(i, 6 + j) for i in range(6) for j in range(6) if i <= j])
    chk = is_regular_pair(g, range(6), range(6, 12), Fraction(1, 3))
    assert not chk.regular and chk.density == Fraction(7, 12)
    sa, sb = chk.witness
    assert len(sa) >= 2 and len(sb) >= 2
    assert abs(pair_density(g, sa, sb) - Fraction(7, 12)) > Fraction(1, 3) * Fraction(7, 12)


@settings(max_examples=25)
@given(st.integers(2, 4), st.integers(2, 4), st.data())
def test_checker_matches_definition(na, nb, data):
    cross = [(i, na + j) for i in range(na) for j in range(nb)]
    keep = data.draw(st.lists(st.booleans(), min_size=len(cross), max_size=len(cross)))
    g = Graph(na + nb, [e for e, k in zip(cross, keep) if k])
    eps = data.draw(st.sampled_from([Fraction(1, 4), Fraction(1, 3), Fraction(1, 2)]))
    a, b = list(range(na)), list(range(na, na + nb))
    assert is_regular_pair(g, a, b, eps).regular == brute_regular(g, a, b, eps)


def test_refine_complete_bipartite():
    g = complete_bipartite(8, 8)
    res = regularity_refine(g, EPS, ETA, init_partition=[range(8), range(8, 16)])
    assert res.resolved and res.rounds == 1 and len(res.partition.parts) == 2
    assert pair_density(res.graph, *res.partition.parts) == 1


def test_refine_edgeless():
    res = regularity_refine(Graph(16), EPS, ETA)
    assert res.resolved and res.rounds == 1 and res.graph.m == 0


def test_refine_random_48():
    g = random_graph(48, Fraction(1, 2), 1)
    res = regularity_refine(g, EPS, ETA, seed=1)
    assert res.resolved and not res.sampled
    parts = res.partition.parts
    for a, b in combinations(parts, 2):
        assert is_regular_pair(res.graph, a, b, EPS).regular
    assert res.edge_loss <= (2 * EPS + ETA) * 48 * 48


@settings(max_examples=20)
@given(st.integers(4, 30), st.floats(0.1, 0.9), st.integers(0, 1000))
def test_refine_contract(n, p, seed):
    g = random_graph(n, p, seed)
    res = regularity_refine(g, EPS, ETA, seed=seed)
    assert all(x <= y for x, y in zip(res.energies, res.energies[1:]))
    assert res.partition.covers(n)
    assert len(res.partition.exceptional) <= EPS * n
    if res.resolved:
        h = res.graph
        assert g.m - h.m <= (2 * EPS + ETA) * n * n
        assert set(h.edges) <= set(g.edges)
        for p_ in res.partition.parts:
            assert not any(h.has_edge(u, v) for u, v in combinations(p_, 2))
        for a, b in combinations(res.partition.parts, 2):
            d = pair_density(h, a, b)
            assert d == 0 or d >= ETA


def test_refine_bad_partition():
    with pytest.raises(GraphError):
        regularity_refine(Graph(4), EPS, ETA, init_partition=[[0, 1], [1, 2, 3]])


def test_energy_bounds():
    g = random_graph(12, Fraction(1, 2), 3)
    e = partition_energy(g, [(0, 1, 2, 3), (4, 5, 6, 7), (8, 9, 10, 11)], ())
    assert 0 <= e <= 1


def test_reduced_full_pair():
    g = complete_bipartite(3, 3)
    part = RegularityPartition(((0, 1, 2), (3, 4, 5)), (), EPS, Fraction(1, 2))
    red = reduced_graph(g, part, Fraction(1, 2))
    assert red.edges == frozenset({(0, 1)}) and red.densities[(0, 1)] == 1


def test_reduced_empty_pair():
    part = RegularityPartition(((0, 1, 2), (3, 4, 5)), (), EPS, ETA)
    assert not reduced_graph(Graph(6), part, ETA).edges


def test_reduced_threshold():
    parts = ((0, 1, 2, 3), (4, 5, 6, 7), (8, 9, 10, 11))
    edges = [(a, b) for a in (0, 1) for b in parts[1]] + [(0, b) for b in parts[2]]
    g = Graph(12, edges)
    eta = Fraction(1, 3)
    red = reduced_graph(g, RegularityPartition(parts, (), EPS, eta), eta)
    assert red.densities[(0, 1)] == Fraction(1, 2) and red.densities[(0, 2)] == Fraction(1, 4)
    assert red.edges == frozenset({(0, 1)})


def test_reduced_connected_when_cut_dense():
    # κ > η on a graph whose partition is regular: the reduced graph is connected
    g = random_graph(16, Fraction(4, 5), 11)
    assert kappa_exact(g).kappa > ETA
    res = regularity_refine(g, EPS, ETA, seed=2)
    assert res.resolved
    assert reduced_graph(g, res.partition, ETA).underlying().is_connected()


def test_halve():
    part = RegularityPartition(((0, 1, 2, 3), (4, 5, 6, 7)), (), EPS, ETA)
    halved = halve_partition(part)
    assert len(halved.parts) == 4 and halved.part_size == 2


def test_halve_odd():
    with pytest.raises(GraphError):
        halve_partition(RegularityPartition(((0, 1, 2),), (), EPS, ETA))


def test_cover_star_side():
    cover, residual = regularity_cover(complete_bipartite(5, 50), range(5), range(5, 55), 10)
    assert cover == [0, 1, 2, 3, 4] and residual == 0


def test_cover_edgeless():
    assert regularity_cover(Graph(20), range(10), range(10, 20), 10) == ([], 0)


def test_cover_matching():
    g = Graph(20, [(i, 10 + i) for i in range(10)])
    cover, residual = regularity_cover(g, range(10), range(10, 20), 10)
    assert len(cover) <= 10 and residual == 0


@settings(max_examples=20)
@given(bipartite_graphs(max_a=6, max_b=10))
def test_cover_touches_reported_edges(data):
    g, xs, ys = data
    cover, residual = regularity_cover(g, xs, ys, max(1, len(xs)))
    cs = set(cover)
    assert residual == sum(1 for u, v in g.edges if u not in cs and v not in cs)
