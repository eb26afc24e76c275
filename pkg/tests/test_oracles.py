from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from erdos_sos import Graph, GraphError, validate_embedding
from erdos_sos.constructions import complete_graph, disjoint_cliques, random_tree, regular_graph, star_tree
from erdos_sos.matchings import fractional_matching
from erdos_sos.oracles import (contains_tree_bruteforce, erdos_sos_sample, fractional_matching_bruteforce,
                               max_matching_bruteforce, min_cover_bruteforce)

from strategies import graphs, trees


def all_trees(k):
    """Every labelled tree with k edges via parent arrays (k ≤ 6)."""
    from itertools import product
    from erdos_sos import tree_from_edges
    for parents in product(*[range(v) for v in range(1, k + 1)]):
        yield tree_from_edges(k + 1, [(p, v) for v, p in enumerate(parents, start=1)])


@pytest.mark.parametrize("d", range(2, 8))
def test_clique_contains_all_trees(d):
    g = complete_graph(d)
    rng = np.random.default_rng(d)
    for _ in range(20):
        t = random_tree(d - 1, d - 1, rng)
        res = contains_tree_bruteforce(g, t)
        assert res.contained and validate_embedding(t, g, res.witness).valid


@pytest.mark.parametrize("d", range(2, 6))
def test_disjoint_cliques_miss_every_tree(d):
    g = disjoint_cliques(3 * d, d)
    for t in all_trees(d):
        assert contains_tree_bruteforce(g, t).contained is False


@pytest.mark.parametrize("n,d", [(6, 3), (8, 4), (10, 5), (9, 3)])
def test_regular_misses_star(n, d):
    assert contains_tree_bruteforce(regular_graph(n, d - 1, 2), star_tree(d)).contained is False


@given(graphs(min_n=1, max_n=8), st.integers(1, 5), st.integers(0, 100))
def test_witness_validates(g, k, seed):
    t = random_tree(k, 3, seed)
    res = contains_tree_bruteforce(g, t)
    if res.contained:
        assert validate_embedding(t, g, res.witness).valid
    assert res.contained is not None


@given(graphs(min_n=1, max_n=8), st.integers(1, 5), st.integers(0, 100), st.data())
def test_containment_monotone(g, k, seed, data):
    t = random_tree(k, 3, seed)
    missing = [e for e in combinations(range(g.n), 2) if not g.has_edge(*e)]
    extra = data.draw(st.lists(st.sampled_from(missing), unique=True)) if missing else []
    bigger = Graph(g.n, list(g.edges) + extra)
    if contains_tree_bruteforce(g, t).contained:
        assert contains_tree_bruteforce(bigger, t).contained


def test_budget_gives_indeterminate():
    # the search needs more than one node here
    g = Graph(12, [(i, j) for i, j in combinations(range(12), 2) if j - i >= 2])
    res = contains_tree_bruteforce(g, random_tree(11, 2, 1), budget=1)
    assert res.contained is None and res.indeterminate


def test_nu_f_triangle():
    assert fractional_matching_bruteforce(complete_graph(3)) == Fraction(3, 2)


def test_nu_f_edge():
    assert fractional_matching_bruteforce(Graph(2, [(0, 1)])) == 1


def test_nu_f_c5():
    c5 = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    assert fractional_matching_bruteforce(c5) == Fraction(5, 2)


def test_nu_f_edge_limit():
    with pytest.raises(GraphError):
        fractional_matching_bruteforce(complete_graph(6))


@given(graphs(max_n=8).filter(lambda g: g.m <= 12))
def test_nu_f_agrees(g):
    fm, fc = fractional_matching(g)
    assert fm.total == fc.total == fractional_matching_bruteforce(g)


def test_cover_examples():
    c5 = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    assert min_cover_bruteforce(c5) == 3
    k33 = Graph(6, [(i, j) for i in range(3) for j in range(3, 6)])
    assert min_cover_bruteforce(k33) == 3 == max_matching_bruteforce(k33)


def test_sample_12_4():
    rep = erdos_sos_sample(12, 4, 500, seed=0)
    assert rep.trials == 500 and not rep.violations and rep.indeterminate == 0


def test_sample_near_complete():
    rep = erdos_sos_sample(6, 5, 200, seed=1)
    assert not rep.violations and rep.contained == 200


def test_sample_empty():
    rep = erdos_sos_sample(10, 3, 0)
    assert rep.trials == 0 and rep.records == []


def test_sample_deterministic():
    a = erdos_sos_sample(10, 3, 30, seed=9)
    b = erdos_sos_sample(10, 3, 30, seed=9)
    assert a.records == b.records
