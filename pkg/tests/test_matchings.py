from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from erdos_sos import Graph, GraphError
from erdos_sos.constructions import complete_bipartite, complete_graph, path_graph, random_bipartite
from erdos_sos.matchings import (StarForest, fractional_matching, konig_cover, matching_from_fractional,
                                 stars_or_matching)
from erdos_sos.oracles import max_matching_bruteforce, min_cover_bruteforce
from erdos_sos.regularity import RegularityPartition, reduced_graph

from strategies import bipartite_graphs, graphs


def reduced(l, pairs, size=2):
    parts = tuple(tuple(range(i * size, (i + 1) * size)) for i in range(l))
    g = Graph(l * size, [(u, v) for a, b in pairs for u in parts[a] for v in parts[b]])
    eta = Fraction(1, 8)
    return reduced_graph(g, RegularityPartition(parts, (), Fraction(1, 4), eta), eta)


def test_single_edge():
    fm, fc = fractional_matching(Graph(2, [(0, 1)]))
    assert fm.weights[(0, 1)] == 1 and fm.total == fc.total == 1


def test_triangle_halves():
    fm, fc = fractional_matching(complete_graph(3))
    assert set(fm.weights.values()) == {Fraction(1, 2)} and fm.total == Fraction(3, 2)
    assert set(fc.weights.values()) == {Fraction(1, 2)} and fc.total == Fraction(3, 2)


def test_path_end_edges():
    fm, _ = fractional_matching(path_graph(4))
    assert fm.total == 2 and fm.weights[(0, 1)] == 1 and fm.weights[(2, 3)] == 1


@given(graphs(max_n=10))
def test_duality_and_half_integrality(g):
    fm, fc = fractional_matching(g)
    assert fm.is_valid(g) and fc.is_valid(g)
    assert fm.total == fc.total
    assert set(fm.weights.values()) <= {0, Fraction(1, 2), 1}
    assert set(fc.weights.values()) <= {0, Fraction(1, 2), 1}


def test_doubling_triangle():
    r = reduced(3, [(0, 1), (1, 2), (0, 2)])
    fm, _ = fractional_matching(r.underlying())
    doubled, m = matching_from_fractional(r, fm)
    assert len(doubled.base.parts) == 6 and len(m) == 3 == 2 * fm.total


def test_doubling_edge():
    r = reduced(2, [(0, 1)])
    fm, _ = fractional_matching(r.underlying())
    doubled, m = matching_from_fractional(r, fm)
    assert len(doubled.base.parts) == 4 and len(m) == 2


def test_doubling_empty():
    r = reduced(3, [])
    fm, _ = fractional_matching(r.underlying())
    assert matching_from_fractional(r, fm)[1] == []


def test_doubling_odd_parts():
    r = reduced(2, [(0, 1)], size=3)
    fm, _ = fractional_matching(r.underlying())
    with pytest.raises(GraphError):
        matching_from_fractional(r, fm)


@given(st.integers(1, 6), st.sampled_from([2, 4]), st.data())
def test_doubling_contract(l, size, data):
    pairs = [e for e in combinations(range(l), 2) if data.draw(st.booleans())]
    r = reduced(l, pairs, size)
    fm, _ = fractional_matching(r.underlying())
    doubled, m = matching_from_fractional(r, fm)
    used = [v for e in m for v in e]
    assert len(m) == 2 * fm.total and len(used) == len(set(used))
    assert all(tuple(sorted(e)) in doubled.edges for e in m)


def test_konig_c4():
    m, c = konig_cover(Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]), [0, 2], [1, 3])
    assert len(m) == len(c) == 2


def test_konig_k33():
    m, c = konig_cover(complete_bipartite(3, 3), range(3), range(3, 6))
    assert len(m) == 3 and sorted(c) in ([0, 1, 2], [3, 4, 5])


def test_konig_random_8_8():
    g = random_bipartite(8, 8, Fraction(1, 3), 5)
    m, c = konig_cover(g, range(8), range(8, 16))
    cs = set(c)
    assert len(m) == len(c) == max_matching_bruteforce(g) == min_cover_bruteforce(g)
    assert all(u in cs or v in cs for u, v in g.edges)


@given(bipartite_graphs())
def test_konig_exhaustive(data):
    g, xs, ys = data
    m, c = konig_cover(g, xs, ys)
    assert len(m) == len(c) == max_matching_bruteforce(g) == min_cover_bruteforce(g)


def test_konig_rejects_non_crossing():
    with pytest.raises(GraphError):
        konig_cover(Graph(3, [(0, 1), (1, 2)]), [0, 1], [2])


def test_stars_disjoint_edges():
    out = stars_or_matching(Graph(20, [(2 * i, 2 * i + 1) for i in range(10)]), 1, 2)
    assert isinstance(out, list) and len(out) == 5


def test_stars_low_degree():
    with pytest.raises(GraphError):
        stars_or_matching(Graph(20, [(2 * i, 2 * i + 1) for i in range(9)]), 1, 2)


def test_stars_from_hubs():
    # two hubs joined to everything: Δ-stars exist
    n = 60
    edges = {tuple(sorted((h, v))) for h in (0, 1) for v in range(n) if v != h}
    out = stars_or_matching(Graph(n, edges), 2, 3)
    assert isinstance(out, StarForest) and len(out.stars) == 2
    assert all(len(leaves) == 3 for _, leaves in out.stars)


@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 1000))
def test_stars_or_matching_contract(d, delta, seed):
    import numpy as np
    rng = np.random.default_rng(seed)
    n = 10 * delta * d + int(rng.integers(0, 10))
    p = rng.uniform(0, 0.2)
    edges = {(u, v) for u, v in combinations(range(n), 2) if rng.random() < p}
    edges |= {tuple(sorted((v, (v + 1) % n))) for v in range(n)}  # a Hamilton cycle keeps δ ≥ 2
    g = Graph(n, edges)
    if g.min_degree() < d:
        return
    out = stars_or_matching(g, d, delta)
    if isinstance(out, StarForest):
        assert len(out.stars) == d
        seen = set()
        for c, leaves in out.stars:
            assert len(leaves) == delta and all(g.has_edge(c, x) for x in leaves)
            assert not seen & ({c} | set(leaves))
            seen |= {c} | set(leaves)
    else:
        used = [v for e in out for v in e]
        assert len(out) == 5 * d and len(used) == len(set(used))
        assert all(g.has_edge(u, v) for u, v in out)
