"""Tree surgery: balanced vertex splits, edge splits, the leaves-or-bare-paths
dichotomy and scattered vertex selection."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .graph import GraphError, Tree
from .profile import frac


@dataclass(frozen=True)
class TreeSplit:
    side_S: frozenset[int]
    side_R: frozenset[int]
    split_vertex: int | None = None
    split_edge: tuple[int, int] | None = None  # (x, y) with y ∈ side_S, x ∈ side_R


@dataclass
class PathsOrLeaves:
    variant: str  # "bare_paths" or "leaf_matching"
    bare_paths: list[tuple[int, ...]] = field(default_factory=list)
    leaf_matching: list[tuple[int, int]] = field(default_factory=list)
    leaf_count: int = 0
    t_len: int = 1

    def verify(self, t: Tree) -> bool:
        used: set[int] = set()
        if self.variant == "bare_paths":
            for path in self.bare_paths:
                if len(path) != self.t_len + 1 or used & set(path):
                    return False
                used |= set(path)
                if any(not t.graph.has_edge(a, b) for a, b in zip(path, path[1:])):
                    return False
                if any(t.degree(v) != 2 for v in path[1:-1]):
                    return False
            return True
        for parent, leaf in self.leaf_matching:
            if {parent, leaf} & used or not t.graph.has_edge(parent, leaf) or t.degree(leaf) != 1:
                return False
            used |= {parent, leaf}
        return True


def _rooted(t: Tree, root: int = 0) -> tuple[list[int], list[int]]:
    """Parent array and BFS order from ``root``."""
    parent = [-1] * t.order
    order = [root]
    seen = {root}
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for w in sorted(t.neighbors(u)):
            if w not in seen:
                seen.add(w)
                parent[w] = u
                order.append(w)
    return parent, order


def _subtree_sizes(t: Tree, parent: list[int], order: list[int]) -> list[int]:
    size = [1] * t.order
    for v in reversed(order[1:]):
        size[parent[v]] += size[v]
    return size


def _collect(t: Tree, start: int, blocked: int) -> set[int]:
    out = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in t.neighbors(u):
            if w != blocked and w not in out:
                out.add(w)
                stack.append(w)
    return out


def divide_tree(t: Tree, m: int) -> TreeSplit:
    """Split T into subtrees S, R sharing one vertex with |V(S)| ∈ [m, 3m].

    Descends from vertex 0 to the lowest vertex whose subtree has at least m
    vertices, then adds its child subtrees (each smaller than m) until they
    hold at least m - 1 vertices, so in fact |V(S)| ≤ 2m - 1.
    """
    n = t.order
    if not (1 <= m and 3 * m <= n):
        raise GraphError(f"m={m} must satisfy 1 ≤ m ≤ |V(T)|/3 = {Fraction(n, 3)}")
    parent, order = _rooted(t)
    size = _subtree_sizes(t, parent, order)
    floor = max(m, 2)
    v = 0
    while True:
        big = [c for c in sorted(t.neighbors(v)) if c != parent[v] and size[c] >= floor]
        if not big:
            break
        v = big[0]
    need = max(m - 1, 1)
    side_s = {v}
    got = 0
    for c in sorted(t.neighbors(v)):
        if c == parent[v]:
            continue
        side_s |= _collect(t, c, v)
        got += size[c]
        if got >= need:
            break
    side_r = (set(range(n)) - side_s) | {v}
    assert m <= len(side_s) <= 3 * m
    return TreeSplit(frozenset(side_s), frozenset(side_r), split_vertex=v)


def split_tree_by_edge(t: Tree, alpha) -> TreeSplit:
    """An edge xy whose y-side T_y has |T_y| ∈ [αk, 3Δαk].

    Runs :func:`divide_tree` with m = ⌈αΔk⌉ + 1 and keeps the largest child
    subtree of the shared vertex inside S; if that misses the interval (only
    for tiny k) every edge is scanned instead.
    """
    alpha = frac(alpha)
    k, delta = t.k, max(t.max_degree, 1)
    if not (0 < alpha < Fraction(1, 4 * delta)):
        raise GraphError(f"alpha={alpha} must lie in (0, 1/(4Δ)) = (0, {Fraction(1, 4 * delta)})")
    lo, hi = alpha * k, 3 * delta * alpha * k

    def ok(size: int) -> bool:
        return lo <= size <= hi

    m = math.ceil(alpha * delta * k) + 1
    if 3 * m <= t.order:
        split = divide_tree(t, m)
        x = split.split_vertex
        kids = [c for c in sorted(t.neighbors(x)) if c in split.side_S]
        best = max(kids, key=lambda c: (len(_collect(t, c, x)), -c))
        side = _collect(t, best, x)
        if ok(len(side)):
            return TreeSplit(frozenset(side), frozenset(set(range(t.order)) - side),
                             split_edge=(x, best))
    for a, b in t.graph.edges:
        for x, y in ((a, b), (b, a)):
            side = _collect(t, y, x)
            if ok(len(side)):
                return TreeSplit(frozenset(side), frozenset(set(range(t.order)) - side),
                                 split_edge=(x, y))
    raise GraphError(f"no edge with far side in [{lo}, {hi}]")


def leaves(t: Tree) -> list[int]:
    return [v for v in range(t.order) if t.degree(v) == 1]


def leaf_matching(t: Tree) -> list[tuple[int, int]]:
    """One pendant edge per distinct parent, lowest leaf first."""
    out, used = [], set()
    for leaf in leaves(t):
        (parent,) = t.neighbors(leaf)
        if parent in used or leaf in used:
            continue
        used |= {parent, leaf}
        out.append((parent, leaf))
    return out


def _threads(t: Tree) -> list[list[int]]:
    """Maximal paths whose internal vertices have degree 2."""
    out = []
    seen_edges = set()
    ends = [v for v in range(t.order) if t.degree(v) != 2]
    if not ends:  # impossible for a tree, kept for safety
        return out
    for a in ends:
        for w in sorted(t.neighbors(a)):
            if (a, w) in seen_edges:
                continue
            path = [a, w]
            while t.degree(path[-1]) == 2:
                nxt = next(x for x in t.neighbors(path[-1]) if x != path[-2])
                path.append(nxt)
            seen_edges.add((path[-1], path[-2]))
            seen_edges.add((a, w))
            out.append(path)
    return out


def bare_paths(t: Tree, t_len: int) -> list[tuple[int, ...]]:
    """Vertex-disjoint bare paths with t_len edges cut greedily from the threads."""
    used: set[int] = set()
    out = []
    for path in _threads(t):
        i = 0
        while i + t_len < len(path):
            seg = path[i:i + t_len + 1]
            if used & set(seg):
                i += 1
                continue
            out.append(tuple(seg))
            used |= set(seg)
            i += t_len + 1
    return out


def leaves_or_bare_paths(t: Tree, t_len: int, prefer: str | None = None) -> PathsOrLeaves:
    """Many leaves (returned as a leaf matching) or many disjoint bare paths.

    The bound is |V(T)|/(10·t_len) for leaves and for paths; one branch always
    meets it. ``prefer`` picks a branch when both do.
    """
    if t_len < 1:
        raise GraphError("t_len must be at least 1")
    need = Fraction(t.order, 10 * t_len)
    lv = leaves(t)
    paths = bare_paths(t, t_len)
    leaf_ok = len(lv) >= need
    path_ok = len(paths) >= need
    assert leaf_ok or path_ok, "leaves-or-bare-paths dichotomy violated"
    use_leaves = leaf_ok and (prefer != "bare_paths" or not path_ok)
    if prefer == "leaf_matching" and leaf_ok:
        use_leaves = True
    if use_leaves:
        lm = leaf_matching(t)
        assert len(lm) >= Fraction(t.order, 10 * max(t.max_degree, 1) * t_len)
        return PathsOrLeaves("leaf_matching", leaf_matching=lm, leaf_count=len(lv), t_len=t_len)
    return PathsOrLeaves("bare_paths", bare_paths=paths, leaf_count=len(lv), t_len=t_len)


def scattered_bound(t: Tree, count: int, min_dist: int, part: Iterable[int]) -> bool:
    """The greedy feasibility estimate count·Δ^min_dist ≤ |part| (advisory)."""
    return count * max(t.max_degree, 1) ** min_dist <= len(set(part))


def scattered_set(t: Tree, count: int, min_dist: int, part: Iterable[int],
                  forbidden: Iterable[int] = (), forbid_dist: int | None = None) -> list[int]:
    """``count`` vertices of ``part`` at pairwise distance ≥ min_dist, each at
    distance ≥ forbid_dist (default min_dist) from ``forbidden``; lowest index
    first."""
    if count < 0 or min_dist < 1:
        raise GraphError("count must be ≥ 0 and min_dist ≥ 1")
    forbidden = set(forbidden)
    fd = min_dist if forbid_dist is None else forbid_dist
    dist_f = t.distances_from(forbidden) if forbidden else [math.inf] * t.order
    chosen: list[int] = []
    dist_c = [math.inf] * t.order
    for v in sorted(set(part)):
        if len(chosen) == count:
            break
        if v in forbidden or dist_f[v] < fd or dist_c[v] < min_dist:
            continue
        chosen.append(v)
        # local BFS update of distance to the chosen set
        frontier = [v]
        dist_c[v] = 0
        d = 0
        while frontier and d + 1 < min_dist:
            d += 1
            nxt = []
            for u in frontier:
                for w in t.neighbors(u):
                    if dist_c[w] > d:
                        dist_c[w] = d
                        nxt.append(w)
            frontier = nxt
    if len(chosen) < count:
        raise GraphError(f"only {len(chosen)} of {count} scattered vertices available")
    return chosen
