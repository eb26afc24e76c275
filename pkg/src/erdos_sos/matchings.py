"""Half-integral fractional matchings and covers, König covers, and the
star-or-matching exchange procedure."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .graph import Graph, GraphError, is_bipartite_with

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class FractionalMatching:
    weights: Mapping[tuple[int, int], Fraction]

    @property
    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def load(self, v: int) -> Fraction:
        return sum((w for e, w in self.weights.items() if v in e), Fraction(0))

    def is_valid(self, g: Graph) -> bool:
        loads: dict[int, Fraction] = {}
        for (u, v), w in self.weights.items():
            if w not in (0, HALF, 1) or not g.has_edge(u, v):
                return False
            loads[u] = loads.get(u, 0) + w
            loads[v] = loads.get(v, 0) + w
        return all(x <= 1 for x in loads.values())


@dataclass(frozen=True)
class FractionalCover:
    weights: Mapping[int, Fraction]

    @property
    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def is_valid(self, g: Graph) -> bool:
        if any(w not in (0, HALF, 1) for w in self.weights.values()):
            return False
        return all(self.weights.get(u, 0) + self.weights.get(v, 0) >= 1 for u, v in g.edges)


@dataclass
class StarForest:
    stars: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)

    def vertices(self) -> set[int]:
        out = set()
        for c, leaves in self.stars:
            out.add(c)
            out.update(leaves)
        return out


# ---------------------------------------------------------------------------
# bipartite maximum matching


def _max_bipartite_matching(left: list[int], adj: Mapping[int, Iterable[int]]) -> dict[int, int]:
    """Augmenting-path matching; returns mate map on both sides."""
    mate: dict[int, int] = {}
    nbrs = {u: sorted(adj.get(u, ())) for u in left}
    for root in left:
        if root in mate:
            continue
        # iterative DFS for an augmenting path from root
        parent: dict[int, int] = {}
        visited: set[int] = set()
        stack = [(root, iter(nbrs[root]))]
        found = None
        while stack and found is None:
            u, it = stack[-1]
            advanced = False
            for w in it:
                if w in visited:
                    continue
                visited.add(w)
                parent[w] = u
                if w not in mate:
                    found = w
                    break
                stack.append((mate[w], iter(nbrs[mate[w]])))
                advanced = True
                break
            if found is None and not advanced:
                stack.pop()
        if found is None:
            continue
        w = found
        while True:
            u = parent[w]
            prev = mate.get(u)
            mate[u] = w
            mate[w] = u
            if u == root:
                break
            w = prev
    return mate


def _konig_from_matching(left: list[int], right: list[int], adj: Mapping[int, Iterable[int]],
                         mate: Mapping[int, int]) -> set[int]:
    # Z = vertices reachable from unmatched left vertices by alternating paths
    reach_left = {u for u in left if u not in mate}
    reach_right: set[int] = set()
    frontier = list(reach_left)
    while frontier:
        u = frontier.pop()
        for w in adj.get(u, ()):
            if w not in reach_right:
                reach_right.add(w)
                m = mate.get(w)
                if m is not None and m not in reach_left:
                    reach_left.add(m)
                    frontier.append(m)
    return (set(left) - reach_left) | reach_right


def konig_cover(g: Graph, part_x: Iterable[int], part_y: Iterable[int]) -> tuple[list[tuple[int, int]], list[int]]:
    """Maximum matching and a minimum vertex cover of a bipartite graph."""
    xs, ys = sorted(set(part_x)), sorted(set(part_y))
    if not is_bipartite_with(g, xs, ys):
        raise GraphError("konig_cover needs a bipartite graph with the given parts")
    adj = {u: g.neighbors(u) for u in xs}
    mate = _max_bipartite_matching(xs, adj)
    matching = sorted((min(u, mate[u]), max(u, mate[u])) for u in xs if u in mate)
    cover = sorted(_konig_from_matching(xs, ys, adj, mate))
    assert len(cover) == len(matching)
    assert all(u in cover or v in cover for u, v in g.edges)
    return matching, cover


def max_matching_size(g: Graph, part_x: Iterable[int]) -> int:
    xs = sorted(set(part_x))
    mate = _max_bipartite_matching(xs, {u: g.neighbors(u) for u in xs})
    return sum(1 for u in xs if u in mate)


# ---------------------------------------------------------------------------
# fractional matchings


def fractional_matching(g: Graph) -> tuple[FractionalMatching, FractionalCover]:
    """Maximum fractional matching and minimum fractional cover, both half-integral.

    Works on the bipartite double cover G×K2 (vertex v becomes 2v and 2v+1,
    edge uv becomes 2u–2v+1 and 2v–2u+1): ν_f(G) = ν(G×K2)/2.
    """
    left = [2 * v for v in range(g.n)]
    right = [2 * v + 1 for v in range(g.n)]
    adj = {2 * v: [2 * w + 1 for w in g.neighbors(v)] for v in range(g.n)}
    mate = _max_bipartite_matching(left, adj)
    weights: dict[tuple[int, int], Fraction] = {}
    for v in range(g.n):
        w2 = mate.get(2 * v)
        if w2 is not None:
            e = (min(v, w2 // 2), max(v, w2 // 2))
            weights[e] = weights.get(e, Fraction(0)) + HALF
    for e in g.edges:
        weights.setdefault(e, Fraction(0))
    cover2 = _konig_from_matching(left, right, adj, mate)
    cover = {v: Fraction((2 * v in cover2) + (2 * v + 1 in cover2), 2) for v in range(g.n)}
    fm, fc = FractionalMatching(weights), FractionalCover(cover)
    assert fm.total == fc.total
    return fm, fc


def nu_f(g: Graph) -> Fraction:
    return fractional_matching(g)[0].total


def matching_from_fractional(r, fm: FractionalMatching):
    """Double a reduced graph and turn an optimal half-integral fractional
    matching into an integral matching of twice its size.

    Weight-1 edges are used in both directions; the paths and cycles formed by
    weight-1/2 edges are oriented from their lowest-index endpoint (paths) or
    from their lowest vertex towards its lower neighbour (cycles). Part ``i``
    splits into halves ``2i`` (out-copy) and ``2i+1`` (in-copy); each arc i→j
    contributes the pair (2i, 2j+1).
    """
    from .regularity import halve_partition, reduced_graph

    rg = r.underlying()
    if not fm.is_valid(rg):
        raise GraphError("fractional matching is not valid for the reduced graph")
    if any(len(p) % 2 for p in r.base.parts):
        raise GraphError("every part must have even size")
    arcs = _orient(rg, fm)
    halved = halve_partition(r.base)
    doubled = reduced_graph(r.graph, halved, r.eta / 2)
    matching = sorted((2 * i, 2 * j + 1) if 2 * i < 2 * j + 1 else (2 * j + 1, 2 * i)
                      for i, j in arcs)
    if len(matching) != 2 * fm.total:
        raise GraphError(f"fractional matching not optimal: |M|={len(matching)} ≠ 2·{fm.total}")
    return doubled, matching


def _orient(rg: Graph, fm: FractionalMatching) -> list[tuple[int, int]]:
    arcs: list[tuple[int, int]] = []
    half_adj: dict[int, list[int]] = {}
    for (u, v), w in sorted(fm.weights.items()):
        if w == 1:
            arcs.append((u, v))
            arcs.append((v, u))
        elif w == HALF:
            half_adj.setdefault(u, []).append(v)
            half_adj.setdefault(v, []).append(u)
    seen: set[int] = set()
    # paths first, each walked from its lower-index endpoint
    ends = sorted(v for v, ns in half_adj.items() if len(ns) == 1)
    for start in ends:
        if start in seen:
            continue
        prev, cur = None, start
        seen.add(cur)
        while True:
            nxt = [w for w in half_adj[cur] if w != prev]
            if not nxt:
                break
            arcs.append((cur, nxt[0]))
            prev, cur = cur, nxt[0]
            seen.add(cur)
    for start in sorted(half_adj):
        if start in seen:
            continue
        # cycle: start at its lowest vertex, head to the lower neighbour
        prev, cur = None, start
        nxt = min(half_adj[start])
        seen.add(start)
        while True:
            arcs.append((cur, nxt))
            prev, cur = cur, nxt
            if cur == start:
                break
            seen.add(cur)
            nxt = next(w for w in half_adj[cur] if w != prev)
    return arcs


# ---------------------------------------------------------------------------
# stars or matching


def stars_or_matching(g: Graph, d: int, max_degree: int) -> StarForest | list[tuple[int, int]]:
    """Either d vertex-disjoint stars with exactly ``max_degree`` leaves, or a
    matching with 5d edges.

    Maintains disjoint stars with 1..2Δ edges; every move raises the potential
    (number of stars, number of star edges) lexicographically.
    """
    delta = max_degree
    if d < 1 or delta < 1:
        raise GraphError("d and max_degree must be positive")
    if g.min_degree() < d:
        raise GraphError(f"δ(G)={g.min_degree()} < d={d}")
    if g.n < 10 * delta * d:
        raise GraphError(f"|G|={g.n} < 10Δd={10 * delta * d}")
    cap = 2 * delta
    # star id -> [center or None for single edges, leaves]; single-edge star stored as (a, [b])
    centre: dict[int, int] = {}
    leaves: dict[int, list[int]] = {}
    owner: dict[int, int] = {}
    next_id = 0

    def size(i):
        return len(leaves[i])

    def enough():
        return sum(1 for i in leaves if size(i) >= delta) >= d or len(leaves) >= 5 * d

    while not enough():
        moved = False
        full_centres = {centre[i] for i in leaves if size(i) == cap}
        for v in range(g.n):
            if v in owner:
                continue
            for u in sorted(g.neighbors(v)):
                if u in full_centres:
                    continue
                if u not in owner:
                    centre[next_id], leaves[next_id] = u, [v]
                    owner[u] = owner[v] = next_id
                    next_id += 1
                    moved = True
                    break
                i = owner[u]
                if centre[i] != u and size(i) >= 2:
                    # u is a leaf of a larger star: split it off with v
                    leaves[i].remove(u)
                    centre[next_id], leaves[next_id] = u, [v]
                    owner[u] = owner[v] = next_id
                    next_id += 1
                    moved = True
                    break
                if size(i) < cap:
                    if centre[i] != u:
                        # single-edge star: recentre on u
                        leaves[i] = [centre[i]]
                        centre[i] = u
                    leaves[i].append(v)
                    owner[v] = i
                    moved = True
                    break
            if moved:
                break
        if not moved:
            raise GraphError("exchange procedure stalled before reaching either outcome")
    big = sorted((i for i in leaves if size(i) >= delta), key=lambda i: (centre[i], i))
    if len(big) >= d:
        return StarForest([(centre[i], tuple(sorted(leaves[i])[:delta])) for i in big[:d]])
    ids = sorted(leaves, key=lambda i: (centre[i], i))[: 5 * d]
    return sorted((min(centre[i], min(leaves[i])), max(centre[i], min(leaves[i]))) for i in ids)
