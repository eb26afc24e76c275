from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from erdos_sos import GraphError
from erdos_sos.constructions import binary_tree, path_tree, random_tree, spider_tree, star_tree
from erdos_sos.treetools import (_collect, bare_paths, divide_tree, leaves_or_bare_paths, scattered_set,
                                 split_tree_by_edge)

from strategies import trees


def is_subtree(t, vs):
    vs = set(vs)
    start = min(vs)
    seen, stack = {start}, [start]
    while stack:
        u = stack.pop()
        for w in t.neighbors(u):
            if w in vs and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vs


def check_split(t, sp, m):
    s, r = set(sp.side_S), set(sp.side_R)
    assert m <= len(s) <= 3 * m
    assert s & r == {sp.split_vertex} and s | r == set(range(t.order))
    assert is_subtree(t, s) and is_subtree(t, r)
    assert all(not (u in s - r and v in r - s) and not (v in s - r and u in r - s) for u, v in t.graph.edges)


def test_divide_path():
    t = path_tree(8)
    sp = divide_tree(t, 3)
    check_split(t, sp, 3)


def test_divide_star():
    t = star_tree(9)
    sp = divide_tree(t, 3)
    check_split(t, sp, 3)
    assert sp.split_vertex == 0


def test_divide_m1():
    t = random_tree(20, 3, 1)
    sp = divide_tree(t, 1)
    check_split(t, sp, 1)


@given(trees(min_k=2, max_k=40), st.data())
def test_divide_contract(t, data):
    m = data.draw(st.integers(1, max(1, t.order // 3)))
    check_split(t, divide_tree(t, m), m)


def test_split_path():
    t = path_tree(100)
    sp = split_tree_by_edge(t, Fraction(1, 10))
    assert 10 <= len(sp.side_S) <= 60


def test_split_spider():
    t = spider_tree(3, 33)
    sp = split_tree_by_edge(t, Fraction(1, 20))
    assert 5 <= len(sp.side_S) <= 44


def test_split_alpha_too_big():
    with pytest.raises(GraphError):
        split_tree_by_edge(spider_tree(3, 33), Fraction(1, 12))


@given(st.integers(100, 300), st.integers(2, 5), st.integers(0, 10**6), st.integers(0, 999))
def test_split_contract(k, delta, seed, pos):
    t = random_tree(k, delta, seed)
    dd = t.max_degree
    lo, hi = Fraction(1, k), Fraction(1, 4 * dd)
    alpha = min(lo + (hi - lo) * Fraction(pos, 1000), hi - Fraction(1, 10**6))
    sp = split_tree_by_edge(t, alpha)
    x, y = sp.split_edge
    side = _collect(t, y, x)
    assert side == set(sp.side_S)
    assert alpha * k <= len(side) <= 3 * dd * alpha * k


def test_paths_in_path():
    res = leaves_or_bare_paths(path_tree(49), 2)
    assert res.variant == "bare_paths" and len(res.bare_paths) >= 2 and res.verify(path_tree(49))


def test_leaves_in_star():
    t = star_tree(20)
    res = leaves_or_bare_paths(t, 3)
    assert res.variant == "leaf_matching" and res.leaf_count == 20 and len(res.leaf_matching) >= 1
    assert res.verify(t)


def test_leaves_in_binary_tree():
    t = binary_tree(5)
    res = leaves_or_bare_paths(t, 2)
    assert t.order == 63 and res.leaf_count == 32 >= Fraction(63, 20) and res.verify(t)


@given(trees(min_k=1, max_k=60), st.integers(1, 6))
def test_paths_or_leaves_contract(t, t_len):
    res = leaves_or_bare_paths(t, t_len)
    assert res.verify(t)
    count = res.leaf_count if res.variant == "leaf_matching" else len(res.bare_paths)
    assert count >= Fraction(t.order, 10 * t_len)


@given(trees(min_k=1, max_k=40), st.integers(1, 5))
def test_bare_paths_are_bare(t, t_len):
    for path in bare_paths(t, t_len):
        assert len(path) == t_len + 1
        assert all(t.degree(v) == 2 for v in path[1:-1])


def test_scattered_path():
    t = path_tree(20)
    picks = scattered_set(t, 3, 4, range(21))
    dist = [t.distances_from([v]) for v in picks]
    assert len(picks) == 3
    assert all(dist[i][picks[j]] >= 4 for i in range(3) for j in range(3) if i != j)


def test_scattered_single():
    assert scattered_set(path_tree(20), 1, 4, [5, 7]) in ([5], [7])


def test_scattered_infeasible():
    with pytest.raises(GraphError):
        scattered_set(path_tree(4), 10, 1, range(5))
