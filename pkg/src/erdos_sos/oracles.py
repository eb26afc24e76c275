"""Brute-force ground truth: tree containment, fractional matching
enumeration, exhaustive matchings and Erdős–Sós sampling."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .constructions import random_graph_m, random_tree
from .graph import Graph, GraphError, Tree, validate_embedding

DEFAULT_BUDGET = 10**7


@dataclass
class ContainmentResult:
    contained: bool | None  # None when the budget ran out
    witness: dict[int, int] | None = None
    nodes_explored: int = 0

    @property
    def indeterminate(self) -> bool:
        return self.contained is None


class _BudgetExhausted(Exception):
    pass


def contains_tree_bruteforce(g: Graph, t: Tree, budget: int = DEFAULT_BUDGET) -> ContainmentResult:
    """Backtracking search for a copy of T in G.

    Tree vertices are placed in BFS order from a maximum-degree root; graph
    candidates must have degree at least the tree vertex's degree and lie in a
    component with at least |T| vertices; candidates are tried lowest degree
    first.
    """
    k1 = t.order
    if k1 > g.n:
        return ContainmentResult(False)
    root = min(range(k1), key=lambda v: (-t.degree(v), v))
    order = [root]
    parent = {root: None}
    for u in order:
        for w in sorted(t.neighbors(u)):
            if w not in parent:
                parent[w] = u
                order.append(w)
    tdeg = [t.degree(v) for v in range(k1)]
    gdeg = g.degrees()
    big = set()
    for comp in g.components():
        if len(comp) >= k1:
            big.update(comp)
    roots = sorted((x for x in big if gdeg[x] >= tdeg[root]), key=lambda x: (gdeg[x], x))
    f: dict[int, int] = {}
    used: set[int] = set()
    nodes = 0

    def place(i: int) -> bool:
        nonlocal nodes
        if i == k1:
            return True
        v = order[i]
        img_p = f[parent[v]]
        cands = sorted((x for x in g.neighbors(img_p) if x not in used and gdeg[x] >= tdeg[v]),
                       key=lambda x: (gdeg[x], x))
        for x in cands:
            nodes += 1
            if nodes > budget:
                raise _BudgetExhausted
            f[v] = x
            used.add(x)
            if place(i + 1):
                return True
            used.discard(x)
            del f[v]
        return False

    try:
        for x in roots:
            nodes += 1
            if nodes > budget:
                raise _BudgetExhausted
            f[root] = x
            used.add(x)
            if place(1):
                assert validate_embedding(t, g, f).valid
                return ContainmentResult(True, dict(f), nodes)
            used.discard(x)
            del f[root]
    except _BudgetExhausted:
        return ContainmentResult(None, None, nodes)
    return ContainmentResult(False, None, nodes)


# ---------------------------------------------------------------------------
# matchings


@lru_cache(maxsize=16)
def _assignments(e: int) -> np.ndarray:
    return np.array(list(product((0, 1, 2), repeat=e)), dtype=np.int8).reshape(-1, e)


def fractional_matching_bruteforce(g: Graph, max_edges: int = 12) -> Fraction:
    """Maximum of Σ f(e) over all f: E → {0, 1/2, 1} with vertex loads ≤ 1."""
    e = g.m
    if e > max_edges:
        raise GraphError(f"{e} edges exceed the enumeration limit {max_edges}")
    if e == 0:
        return Fraction(0)
    w = _assignments(e).astype(np.int32)  # weights in halves
    inc = np.zeros((e, g.n), dtype=np.int32)
    for i, (u, v) in enumerate(g.edges):
        inc[i, u] = inc[i, v] = 1
    ok = ((w @ inc) <= 2).all(axis=1)
    return Fraction(int(w[ok].sum(axis=1).max()), 2)


def max_matching_bruteforce(g: Graph) -> int:
    """Exhaustive maximum matching size (branch on the lowest unmatched vertex)."""
    if g.n > 16:
        raise GraphError("exhaustive matching is limited to 16 vertices")

    @lru_cache(maxsize=None)
    def best(free: frozenset) -> int:
        if not free:
            return 0
        v = min(free)
        rest = free - {v}
        out = best(rest)
        for w in g.neighbors(v):
            if w in rest:
                out = max(out, 1 + best(rest - {w}))
        return out

    return best(frozenset(range(g.n)))


def min_cover_bruteforce(g: Graph) -> int:
    """Exhaustive minimum vertex cover size for n ≤ 16 (all 2^n masks at once)."""
    if g.n > 16:
        raise GraphError("exhaustive cover is limited to 16 vertices")
    masks = np.arange(1 << g.n, dtype=np.int64)
    ok = np.ones(len(masks), dtype=bool)
    for u, v in g.edges:
        ok &= (((masks >> u) & 1) | ((masks >> v) & 1)).astype(bool)
    return int(np.bitwise_count(masks[ok]).min())


# ---------------------------------------------------------------------------
# Erdős–Sós sampling


@dataclass
class SampleReport:
    n: int
    d: int
    trials: int
    contained: int = 0
    violations: list[dict] = field(default_factory=list)
    indeterminate: int = 0
    records: list[dict] = field(default_factory=list)


def erdos_sos_sample(n: int, d: int, trials: int, seed=0, budget: int = DEFAULT_BUDGET) -> SampleReport:
    """Random graphs above (d-1)n/2 edges against random d-edge trees.

    Edge counts are uniform on ⌊(d-1)n/2⌋+1 .. ⌊(d-1)n/2⌋+⌊n/2⌋ (capped at
    C(n,2)); each trial uses its own child seed.
    """
    if d < 1 or n < d + 1:
        raise GraphError(f"need n ≥ d+1 ≥ 2, got n={n}, d={d}")
    report = SampleReport(n, d, trials)
    if trials <= 0:
        return report
    low = (d - 1) * n // 2 + 1
    top = math.comb(n, 2)
    if low > top:
        raise GraphError(f"no graph on {n} vertices has more than (d-1)n/2 edges")
    for i, child in enumerate(np.random.SeedSequence(seed).spawn(trials)):
        rng = np.random.default_rng(child)
        m = min(top, low + int(rng.integers(0, max(1, n // 2))))
        g = random_graph_m(n, m, rng)
        t = random_tree(d, d, rng)
        res = contains_tree_bruteforce(g, t, budget)
        rec = {"trial": i, "m": m, "tree": list(t.graph.edges), "contained": res.contained,
               "nodes": res.nodes_explored}
        report.records.append(rec)
        if res.contained is None:
            report.indeterminate += 1
        elif res.contained:
            report.contained += 1
        else:
            report.violations.append({**rec, "graph": list(g.edges)})
    return report
