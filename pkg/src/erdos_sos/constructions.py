"""Extremal and near-extremal constructions plus seeded random instances."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .graph import Graph, GraphError, Tree, make_tree
from .profile import frac

KINDS = ("disjoint-cliques", "regular", "dominating", "near-extremal-bipartite",
         "random-graph", "random-tree")


def rng_for(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class ConstructionSpec:
    kind: str
    n: int | None = None
    d: int | None = None
    k: int | None = None
    eps: Fraction | None = None
    max_degree: int | None = None
    y_size: int | None = None
    p: Fraction | None = None
    seed: int = 0

    def build(self):
        if self.kind == "disjoint-cliques":
            return disjoint_cliques(self.n, self.d)
        if self.kind == "regular":
            return regular_graph(self.n, self.d, self.seed)
        if self.kind == "dominating":
            return dominating_construction(self.n, self.d)
        if self.kind == "near-extremal-bipartite":
            return near_extremal_bipartite(self.k, self.eps, self.y_size, self.seed)
        if self.kind == "random-graph":
            return random_graph(self.n, self.p if self.p is not None else Fraction(1, 2), self.seed)
        if self.kind == "random-tree":
            return random_tree(self.k, self.max_degree or 3, self.seed)
        raise GraphError(f"unknown construction kind {self.kind!r}")


def disjoint_cliques(n: int, d: int) -> Graph:
    if d < 1 or n < 0 or n % d:
        raise GraphError(f"clique order d={d} must divide n={n}")
    edges = []
    for base in range(0, n, d):
        edges.extend((base + i, base + j) for i, j in combinations(range(d), 2))
    return Graph(n, edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with the a-side on vertices 0..a-1."""
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    off = 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges)
        off += g.n
    return Graph(off, edges)


def regular_graph(n: int, r: int, seed=0, resample_cap: int = 1000) -> Graph:
    """r-regular graph from the pairing model, resampled until simple.

    Past ``resample_cap`` attempts a circulant graph is returned instead.
    """
    if r < 0 or n < 1 or r >= n:
        raise GraphError(f"need 0 ≤ r < n, got r={r}, n={n}")
    if (r * n) % 2:
        raise GraphError(f"r·n = {r * n} must be even")
    if r == 0:
        return Graph(n)
    if r == n - 1:
        return complete_graph(n)
    rng = rng_for(seed)
    points = np.repeat(np.arange(n), r)
    for _ in range(resample_cap):
        perm = rng.permutation(points)
        pairs = perm.reshape(-1, 2)
        seen = set()
        ok = True
        for u, v in pairs.tolist():
            if u == v:
                ok = False
                break
            e = (u, v) if u < v else (v, u)
            if e in seen:
                ok = False
                break
            seen.add(e)
        if ok:
            return Graph(n, seen)
    return circulant_regular(n, r)


def circulant_regular(n: int, r: int) -> Graph:
    edges = set()
    for v in range(n):
        for j in range(1, r // 2 + 1):
            w = (v + j) % n
            edges.add((min(v, w), max(v, w)))
        if r % 2:
            w = (v + n // 2) % n
            edges.add((min(v, w), max(v, w)))
    return Graph(n, edges)


def dominating_construction(n: int, d: int) -> Graph:
    """(d-1)/2 universal vertices (0..h-1), everything else independent."""
    if d % 2 == 0 or d < 1:
        raise GraphError(f"d={d} must be odd")
    h = (d - 1) // 2
    if h > n:
        raise GraphError(f"(d-1)/2 = {h} exceeds n = {n}")
    edges = [(i, j) for i in range(h) for j in range(i + 1, n)]
    return Graph(n, edges)


def dominating_edge_count(n: int, d: int) -> int:
    """Exact edge count of :func:`dominating_construction`: h(n-h) + C(h,2), h=(d-1)/2."""
    h = (d - 1) // 2
    return h * (n - h) + h * (h - 1) // 2


def near_extremal_bipartite(k: int, eps, y_size: int, seed=0) -> tuple[Graph, list[int], list[int]]:
    """Bipartite graph with |X| = ⌊(1+ε)k/2⌋, |Y| = y_size (X on vertices 0..|X|-1).

    Each X-vertex gets ⌈(1-ε)|Y|⌉ random Y-neighbours, then every Y-vertex is
    topped up to ⌈(1-ε)k/2⌉ X-neighbours.
    """
    eps = frac(eps)
    if y_size < 6 * k:
        raise GraphError(f"|Y| = {y_size} must be at least 6k = {6 * k}")
    if not (0 <= eps < 1):
        raise GraphError("eps must lie in [0, 1)")
    xs = math.floor((1 + eps) * k / 2)
    x_deg = math.ceil((1 - eps) * y_size)
    y_deg = math.ceil((1 - eps) * k / 2)
    if y_deg > xs or x_deg > y_size or xs < 1:
        raise GraphError("infeasible degree demands")
    rng = rng_for(seed)
    adj = np.zeros((xs, y_size), dtype=bool)
    for i in range(xs):
        adj[i, rng.choice(y_size, size=x_deg, replace=False)] = True
    for j in range(y_size):
        have = int(adj[:, j].sum())
        if have < y_deg:
            missing = np.flatnonzero(~adj[:, j])
            adj[rng.choice(missing, size=y_deg - have, replace=False), j] = True
    edges = [(int(i), xs + int(j)) for i, j in zip(*np.nonzero(adj))]
    return Graph(xs + y_size, edges), list(range(xs)), list(range(xs, xs + y_size))


def random_graph(n: int, p, seed=0) -> Graph:
    rng = rng_for(seed)
    p = float(p)
    if n < 2:
        return Graph(n)
    iu = np.triu_indices(n, 1)
    mask = rng.random(len(iu[0])) < p
    return Graph(n, zip(iu[0][mask].tolist(), iu[1][mask].tolist()))


def random_graph_m(n: int, m: int, seed=0) -> Graph:
    rng = rng_for(seed)
    total = n * (n - 1) // 2
    if m > total:
        raise GraphError(f"m={m} exceeds C(n,2)={total}")
    iu = np.triu_indices(n, 1)
    pick = rng.choice(total, size=m, replace=False)
    return Graph(n, zip(iu[0][pick].tolist(), iu[1][pick].tolist()))


def random_bipartite(a: int, b: int, p, seed=0) -> Graph:
    """Random bipartite graph, X = 0..a-1, Y = a..a+b-1."""
    rng = rng_for(seed)
    mask = rng.random((a, b)) < float(p)
    return Graph(a + b, [(int(i), a + int(j)) for i, j in zip(*np.nonzero(mask))])


def random_tree(k: int, max_degree: int, seed=0) -> Tree:
    """Random tree with k edges and Δ(T) ≤ max_degree.

    Vertices are attached one at a time to a uniformly random earlier vertex
    that still has spare degree, then the labels are shuffled.
    """
    if k < 0:
        raise GraphError("k must be non-negative")
    if k >= 2 and max_degree < 2:
        raise GraphError(f"max_degree={max_degree} too small for k={k}")
    if k == 1 and max_degree < 1:
        raise GraphError("max_degree must be at least 1")
    rng = rng_for(seed)
    deg = [0] * (k + 1)
    edges = []
    open_slots = [0]
    for v in range(1, k + 1):
        u = open_slots[int(rng.integers(len(open_slots)))]
        edges.append((u, v))
        deg[u] += 1
        deg[v] = 1
        if deg[u] >= max_degree:
            open_slots.remove(u)
        if deg[v] < max_degree:
            open_slots.append(v)
    perm = rng.permutation(k + 1).tolist()
    return make_tree(Graph(k + 1, [(perm[u], perm[v]) for u, v in edges]))


def path_tree(k: int) -> Tree:
    return make_tree(path_graph(k + 1))


def star_tree(k: int) -> Tree:
    return make_tree(star_graph(k))


def spider_tree(legs: int, length: int) -> Tree:
    edges = []
    nxt = 1
    for _ in range(legs):
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return make_tree(Graph(nxt, edges))


def binary_tree(depth: int) -> Tree:
    n = 2 ** (depth + 1) - 1
    return make_tree(Graph(n, [((v - 1) // 2, v) for v in range(1, n)]))
