"""Seeded instance generators for the embedders: graphs carrying an
almost-complete or almost-complete-bipartite witness, built with enough slack
that the desk-scale hypotheses hold."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .constructions import circulant_regular, random_tree, regular_graph, rng_for
from .embedders import ExtremalWitness, case2_prescription
from .graph import Graph, GraphError, Tree

NONBIPARTITE_VARIANTS = ("direct", "attached-large", "attached-small")
BIPARTITE_VARIANTS = ("direct", "case1-y", "case1-x", "case2-matching", "case2-stars", "case2-xprime")


@dataclass
class WitnessInstance:
    graph: Graph
    witness: ExtremalWitness
    tree: Tree
    variant: str

    def to_dict(self) -> dict:
        w = self.witness
        return {"variant": self.variant, "n": self.graph.n, "edges": [list(e) for e in self.graph.edges],
                "tree": [list(e) for e in self.tree.graph.edges], "witness": w.variant,
                "K": list(w.K), "X": list(w.X), "Y": list(w.Y)}


def _relabel(n: int, edges, rng) -> tuple[list[int], list[tuple[int, int]]]:
    perm = rng.permutation(n).tolist()
    return perm, [(perm[u], perm[v]) for u, v in edges]


def _punctured_clique(size: int, holes: int, rng) -> list[tuple[int, int]]:
    """K_size minus a random matching with ``holes`` edges."""
    verts = rng.permutation(size).tolist()
    gone = {tuple(sorted((verts[2 * i], verts[2 * i + 1]))) for i in range(min(holes, size // 2))}
    return [e for e in combinations(range(size), 2) if e not in gone]


def nonbipartite_instance(k: int, variant: str, seed=0, max_degree: int = 3) -> WitnessInstance:
    """Graph with a clique-like K (|K| = k+1..k+3, δ(K) ≥ k-2) plus, per variant,
    nothing else, many vertices attached to K, or a dense blob hanging off K."""
    rng = rng_for(seed)
    t = random_tree(k, max_degree, rng)
    if variant == "direct":
        size = k + 1 + int(rng.integers(0, max(1, min(3, k // 10))))  # stays within (1+1/10)k
        kedges = list(combinations(range(size), 2))
        n, edges = size, kedges
        kset = list(range(size))
    elif variant == "attached-large":
        size = k + 1
        kedges = _punctured_clique(size, int(rng.integers(1, 4)), rng)
        a_count = math.ceil(k / 2) + int(rng.integers(0, 4))
        block = sorted(rng.choice(size, size=math.ceil(2 * k / 3), replace=False).tolist())
        edges = list(kedges)
        for i in range(a_count):
            a = size + i
            extra = rng.choice(size, size=int(rng.integers(0, 4)), replace=False).tolist()
            edges += [(b, a) for b in sorted(set(block) | set(extra))]
        n, kset = size + a_count, list(range(size))
    elif variant == "attached-small":
        size = k + 1
        kedges = _punctured_clique(size, int(rng.integers(1, 4)), rng)
        blob = k // 2 + 5 + int(rng.integers(0, 4))
        edges = list(kedges)
        edges += [(size + i, size + j) for i, j in combinations(range(blob), 2)]
        edges.append((int(rng.integers(0, size)), size + int(rng.integers(0, blob))))
        # a few vertices attached to K, below the attachment-set threshold
        few = int(rng.integers(0, 3))
        for i in range(few):
            a = size + blob + i
            nb = rng.choice(size, size=math.ceil(2 * k / 3), replace=False).tolist()
            edges += [(b, a) for b in sorted(nb)]
        n, kset = size + blob + few, list(range(size))
    else:
        raise GraphError(f"unknown non-bipartite variant {variant!r}")
    perm, edges = _relabel(n, edges, rng)
    g = Graph(n, edges)
    w = ExtremalWitness("almost_complete", K=tuple(sorted(perm[v] for v in kset)))
    return WitnessInstance(g, w, t, variant)


def _tree_for_case2(k: int, max_degree: int, rng, min_small: int) -> Tree:
    """Random tree whose smaller part has ≥ min_small vertices and which offers
    a Case 2.2 prescription for the resulting d (asymptotically automatic,
    not at k ≈ 30)."""
    for _ in range(1000):
        t = random_tree(k, max_degree, rng)
        small = min(t.k1, t.k2)
        if small >= min_small and case2_prescription(t, math.ceil(k / 2) - small + 1):
            return t
    raise GraphError("no tree with a balanced enough bipartition")


def bipartite_instance(k: int, variant: str, seed=0, max_degree: int = 3) -> WitnessInstance:
    """Near-complete X-Y bipartite graph with |Y| = 6k, padded inside Y so every
    vertex has degree ≥ k/2, plus per variant: a dense blob Z hanging off Y or
    X (Case 1), hub vertices in Y (stars), a few X' vertices.

    Case 1 and 2 variants draw trees whose smaller part has at least
    ⌈k/2⌉ - 1 vertices, so d = ⌈k/2⌉ - |X ∪ X'| stays at most 2
    (the X' variant asks for ⌈k/2⌉ so that |X| stays above the δ_B(Y) floor)."""
    rng = rng_for(seed)
    half = math.ceil(k / 2)
    if variant == "direct":
        t = random_tree(k, max_degree, rng)
        xs = half + 1 if 20 * (half + 1) <= 11 * k else half  # |X| ≤ (1+1/10)k/2
    else:
        t = _tree_for_case2(k, max_degree, rng, half if variant == "case2-xprime" else half - 1)
        xs = min(t.k1, t.k2) - 1
    xprime = 0
    if variant == "case2-xprime":  # one X-vertex moves out of X and becomes X'
        xprime, xs = 1, xs - 1
    ny = 6 * k
    X = list(range(xs))
    Y = list(range(xs, xs + ny))
    edges = [(x, y) for x in X for y in Y]
    # knock out at most one X-edge per Y-vertex, while δ_B(Y) ≥ 2k/5 survives
    slack = 5 * (xs - 1) >= 2 * k
    dropped = {y: X[int(rng.integers(0, xs))] for y in Y if slack and rng.random() < 0.1}
    edges = [(x, y) for x, y in edges if dropped.get(y) != x]
    need = max(0, half - (xs - 1))
    if variant == "case2-stars":
        hubs = Y[:max(need, 1)]
        edges += [(h, y) for h in hubs for y in Y if y != h and (y not in hubs or y > h)]
    elif need:
        r = need + (need * ny) % 2
        rg = regular_graph(ny, r, rng)
        edges += [(Y[a], Y[b]) for a, b in rg.edges]
    n = xs + ny
    if xprime:
        xp = n
        nb = rng.choice(ny, size=half + 2, replace=False).tolist()
        edges += [(Y[i], xp) for i in sorted(nb)]
        n += 1
    if variant in ("case1-y", "case1-x"):
        zsize = k - k // 5
        Z = list(range(n, n + zsize))
        edges += list(combinations(Z, 2))
        anchor = Y[int(rng.integers(0, ny))] if variant == "case1-y" else X[int(rng.integers(0, xs))]
        edges.append((anchor, Z[0]))
        n += zsize
    elif variant not in ("direct", "case2-matching", "case2-stars", "case2-xprime"):
        raise GraphError(f"unknown bipartite variant {variant!r}")
    perm, edges = _relabel(n, edges, rng)
    g = Graph(n, edges)
    w = ExtremalWitness("almost_complete_bipartite", X=tuple(sorted(perm[x] for x in X)),
                        Y=tuple(sorted(perm[y] for y in Y)))
    return WitnessInstance(g, w, t, variant)


def greedy_instance(seed=0) -> tuple[Graph, Tree, int]:
    """Random graph with δ(G - v) ≥ e(T) and d(v) ≥ Δ(T) for a random root v."""
    rng = rng_for(seed)
    k = int(rng.integers(1, 13))
    t = random_tree(k, 1 if k == 1 else int(rng.integers(2, 6)), rng)
    n = k + 1 + int(rng.integers(0, 2 * k + 4))
    r = k + 1 + int(rng.integers(0, 3))  # the root's neighbours lose one degree
    n = max(n, r + 1)
    if (r * n) % 2:
        n += 1
    # relabelled circulant (pairing-model rejection is hopeless at these degrees)
    base = circulant_regular(n, r)
    perm = rng.permutation(n).tolist()
    extra = {e for e in combinations(range(n), 2) if rng.random() < 0.05}
    g = Graph(n, sorted({tuple(sorted((perm[u], perm[v]))) for u, v in base.edges} | extra))
    root = int(rng.integers(0, n))
    return g, t, root
