"""Cut-density: exact and heuristic κ, decomposition into cut-dense pieces, and
the dominated decompositions of bipartite graphs with a small side."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .constructions import rng_for
from .graph import Graph, GraphError, is_bipartite_with
from .profile import ParamProfile, frac


@dataclass(frozen=True)
class CutDensityReport:
    kappa: Fraction
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]
    exact: bool
    crossing: int = 0


@dataclass
class DominatedDecomposition:
    components: list[Graph]
    cores: list[Graph]
    deleted_edges: list[tuple[int, int]]
    heuristic: bool = False
    info: dict = field(default_factory=dict)

    @property
    def t(self) -> int:
        return len(self.components)


# ---------------------------------------------------------------------------
# κ


def cut_ratio(g: Graph, side_a: Iterable[int]) -> Fraction:
    a = set(side_a)
    b = [v for v in range(g.n) if v not in a]
    if not a or not b:
        raise GraphError("both sides of a cut must be nonempty")
    cross = sum(1 for u, v in g.edges if (u in a) != (v in a))
    return Fraction(cross, len(a) * len(b))


def kappa_exact(g: Graph, cap: int = 20) -> CutDensityReport:
    """Exact κ(G) over all 2^(n-1) - 1 bipartitions.

    Vertex 0 is always on side A. Among minimising cuts the one whose B-side
    bitmask (bit j = vertex j) is numerically smallest is returned.
    """
    n = g.n
    if n < 2:
        raise GraphError("κ needs at least two vertices")
    if n > cap:
        raise GraphError(f"order {n} above the exact-κ cap {cap}; use sparse_cut_search")
    masks = np.arange(1, 1 << (n - 1), dtype=np.uint32)
    bits = [np.zeros(len(masks), dtype=np.uint8)]
    bits += [((masks >> np.uint32(v - 1)) & np.uint32(1)).astype(np.uint8) for v in range(1, n)]
    cross = np.zeros(len(masks), dtype=np.int32)
    for u, v in g.edges:
        cross += bits[u] ^ bits[v]
    size_b = np.bitwise_count(masks).astype(np.int64)
    denom = size_b * (n - size_b)
    ratio = cross / denom
    best = ratio.min()
    cand = np.flatnonzero(ratio <= best + 1e-12)
    idx = min(cand.tolist(), key=lambda i: (Fraction(int(cross[i]), int(denom[i])), i))
    mask = int(masks[idx])
    side_b = tuple(v for v in range(1, n) if (mask >> (v - 1)) & 1)
    side_a = tuple(v for v in range(n) if v not in side_b)
    return CutDensityReport(Fraction(int(cross[idx]), int(denom[idx])), side_a, side_b, True,
                            int(cross[idx]))


def sparse_cut_search(g: Graph, rounds: int = 64, seed=0) -> CutDensityReport:
    """Randomised local search for a sparse cut; the value is an upper bound on κ."""
    n = g.n
    if n < 2:
        raise GraphError("κ needs at least two vertices")
    rng = rng_for(seed)
    nbrs = [sorted(g.neighbors(v)) for v in range(n)]
    best: tuple[int, int, tuple[int, ...]] | None = None  # (cross, denom, side_b)

    def better(c1, d1, c2, d2):
        return c1 * d2 < c2 * d1

    starts = [[v] for v in range(n)] if n <= 64 else []
    for _ in range(rounds):
        size = int(rng.integers(1, n))
        starts.append(rng.choice(n, size=size, replace=False).tolist())
    for start in starts:
        in_b = [False] * n
        for v in start:
            in_b[v] = True
        nb = sum(in_b)
        if nb == 0 or nb == n:
            continue
        cnt_b = [sum(1 for w in nbrs[v] if in_b[w]) for v in range(n)]
        cross = sum(1 for u, v in g.edges if in_b[u] != in_b[v])
        while True:
            cur_den = nb * (n - nb)
            move = None
            for v in range(n):
                if in_b[v]:
                    if nb == 1:
                        continue
                    c = cross - (len(nbrs[v]) - cnt_b[v]) + cnt_b[v]
                    s = nb - 1
                else:
                    if nb == n - 1:
                        continue
                    c = cross - cnt_b[v] + (len(nbrs[v]) - cnt_b[v])
                    s = nb + 1
                den = s * (n - s)
                if better(c, den, cross, cur_den) and (move is None or better(c, den, move[1], move[2])):
                    move = (v, c, den, s)
            if move is None:
                break
            v, cross, _, nb = move
            in_b[v] = not in_b[v]
            delta = 1 if in_b[v] else -1
            for w in nbrs[v]:
                cnt_b[w] += delta
        den = nb * (n - nb)
        side_b = tuple(v for v in range(n) if in_b[v])
        if 0 in side_b:
            side_b = tuple(v for v in range(n) if not in_b[v])
        if best is None or better(cross, den, best[0], best[1]) or (
                cross * best[1] == best[0] * den and side_b < best[2]):
            best = (cross, den, side_b)
    assert best is not None
    cross, den, side_b = best
    side_a = tuple(v for v in range(n) if v not in set(side_b))
    return CutDensityReport(Fraction(cross, den), side_a, side_b, False, cross)


def kappa(g: Graph, profile: ParamProfile | None = None, seed=0) -> CutDensityReport:
    profile = profile or ParamProfile()
    if g.n <= profile.max_exact_kappa:
        return kappa_exact(g, profile.max_exact_kappa)
    return sparse_cut_search(g, profile.search_rounds, seed)


def is_cut_dense(g: Graph, q, cap: int = 20) -> bool:
    if g.n < 2:
        return True
    return kappa_exact(g, cap).kappa >= frac(q)


def union_kappa_bound(q, v1: Iterable[int], v2: Iterable[int]) -> Fraction:
    """Guaranteed κ of G1 ∪ G2 for q-cut-dense G1, G2: q|V1 ∩ V2| / (4|V1 ∪ V2|)."""
    v1, v2 = set(v1), set(v2)
    if not v1 | v2:
        raise GraphError("both vertex sets are empty")
    return frac(q) * len(v1 & v2) / (4 * len(v1 | v2))


def extension_kappa_bound(q, delta, g_order: int, h_order: int) -> Fraction:
    """Guaranteed κ of H ⊇ G when G is q-cut-dense and every vertex of H - G has
    at least δ|G| neighbours in G: qδ|G|² / (4|H|²)."""
    if not (0 < g_order <= h_order):
        raise GraphError("need 0 < |G| ≤ |H|")
    return frac(q) * frac(delta) * g_order ** 2 / (4 * h_order ** 2)


def extension_delta(h: Graph, g_vertices: Iterable[int]) -> Fraction:
    """Largest δ with |N_H(v) ∩ V(G)| ≥ δ|G| for every v ∈ V(H) - V(G) (1 if none)."""
    gv = set(g_vertices)
    rest = [v for v in range(h.n) if v not in gv]
    if not gv:
        raise GraphError("G must be nonempty")
    return min((Fraction(len(h.neighbors(v) & gv), len(gv)) for v in rest), default=Fraction(1))


# ---------------------------------------------------------------------------
# decompositions


def cut_dense_decomposition(g: Graph, q, profile: ParamProfile | None = None,
                            seed=0) -> DominatedDecomposition:
    """Delete the crossing edges of violating cuts until every component is
    q-cut-dense (exactly below the κ cap, heuristically above it).

    Every deletion splits a component, so each vertex pair is separated at
    most once and the total deleted is below q·C(n,2).
    """
    q = frac(q)
    if not (0 < q <= 1):
        raise GraphError("q must lie in (0, 1]")
    profile = profile or ParamProfile()
    rng = rng_for(seed)
    alive = set(g.edges)
    deleted: list[tuple[int, int]] = []
    heuristic = False
    stack = [c for c in Graph(g.n, alive).components() if len(c) >= 2]
    done: list[list[int]] = []
    while stack:
        comp = stack.pop()
        sub = g.edge_subgraph(comp, [(u, v) for u, v in _edges_within(comp, alive)])
        if sub.n <= profile.max_exact_kappa:
            rep = kappa_exact(sub, profile.max_exact_kappa)
        else:
            heuristic = True
            rep = sparse_cut_search(sub, profile.search_rounds, rng)
        if rep.kappa >= q:
            done.append(comp)
            continue
        a = {comp[i] for i in rep.side_a}
        for u, v in sorted(_edges_within(comp, alive)):
            if (u in a) != (v in a):
                alive.discard((u, v))
                deleted.append((u, v))
        rest = Graph(g.n, _edges_within(comp, alive))
        cs = set(comp)
        stack.extend(c for c in rest.components() if len(c) >= 2 and c[0] in cs)
    done.sort()
    comps = [g.edge_subgraph(c, _edges_within(c, alive)) for c in done]
    deleted.sort()
    if not heuristic:
        assert len(deleted) <= q * g.n * g.n
    return DominatedDecomposition(comps, list(comps), deleted, heuristic,
                                  {"q": str(q), "bound": str(q * g.n * g.n)})


def _edges_within(vertices, edges) -> list[tuple[int, int]]:
    vs = set(vertices)
    return [(u, v) for u, v in edges if u in vs and v in vs]


def find_cut_dense_subgraph(g: Graph, q, profile: ParamProfile | None = None, seed=0) -> Graph:
    """A q-cut-dense subgraph of order ≥ qn, given e(G) ≥ 2qn²."""
    q = frac(q)
    n = g.n
    if g.m < 2 * q * n * n or n == 0:
        raise GraphError(f"precondition e(G) ≥ 2qn² violated: {g.m} < {2 * q * n * n}")
    # work on an unlabelled copy so component origins are local indices
    dec = cut_dense_decomposition(Graph(n, g.edges), q, profile, seed)
    deg = [0] * n
    owner: dict[int, Graph] = {}
    for comp in dec.components:
        for i in range(comp.n):
            owner[comp.origin[i]] = comp
            deg[comp.origin[i]] = comp.degree(i)
    for v in range(n):
        if deg[v] >= 2 * q * n:
            comp = owner[v]
            assert comp.n >= q * n
            local = list(comp.origin)
            return g.edge_subgraph(local, [(local[a], local[b]) for a, b in comp.edges])
    raise GraphError("no vertex of degree ≥ 2qn in the residue (heuristic miss)")


def dominated_decomposition(g: Graph, part_x, part_y, p, k: int,
                            profile: ParamProfile | None = None, seed=0) -> DominatedDecomposition:
    """Vertex-disjoint pieces G_i, each with a cut-dense core D_i containing
    every X-vertex of G_i and seeing every vertex of G_i with many edges.

    Working thresholds come from the profile: ``cut_floor`` is the κ floor for
    the initial cores, ``join_slack`` scales the κ needed to merge two cores,
    and ``attach_floor``·k is the attachment degree.
    """
    profile = profile or ParamProfile()
    p = frac(p)
    xs, ys = set(part_x), set(part_y)
    labelled, g = g, Graph(g.n, g.edges)
    if not is_bipartite_with(g, xs, ys):
        raise GraphError("dominated_decomposition needs a bipartite graph with the given parts")
    rng = rng_for(seed)
    q0 = profile.cut_floor
    min_order = max(2, math.ceil(p * p * k))
    attach = profile.attach_floor * k

    def kap(vs) -> Fraction:
        h = g.subgraph(vs)
        if h.n < 2:
            return Fraction(1)
        return kappa(h, profile, rng).kappa

    # maximal collection of vertex-disjoint q0-cut-dense subgraphs
    cores: list[set[int]] = []
    used: set[int] = set()
    while True:
        free = [v for v in range(g.n) if v not in used]
        found = _dense_pieces(g, free, q0, min_order, profile, rng)
        if not found:
            found = _sampled_piece(g, free, xs, ys, q0, min_order, p, k, profile, rng)
        if not found:
            break
        for piece in found:
            cores.append(piece)
            used |= piece
    kappas = [kap(c) for c in cores]
    joins = 0
    merged = True
    while merged:
        merged = False
        for i in range(len(cores)):
            for j in range(i + 1, len(cores)):
                others = set().union(*(c for t, c in enumerate(cores) if t not in (i, j)))
                base = cores[i] | cores[j]
                bridge = sorted(v for v in range(g.n) if v not in others and v not in base
                                and g.neighbors(v) & cores[i] and g.neighbors(v) & cores[j])[:k]
                need = profile.join_slack * min(kappas[i], kappas[j])
                for cand in (base | set(bridge), base):
                    if len(cand) > len(base) + k:
                        continue
                    kc = kap(cand)
                    if kc >= need:
                        cores = [c for t, c in enumerate(cores) if t not in (i, j)] + [cand]
                        kappas = [x for t, x in enumerate(kappas) if t not in (i, j)] + [kc]
                        joins += 1
                        merged = True
                        break
                if merged:
                    break
            if merged:
                break
    order = sorted(range(len(cores)), key=lambda i: min(cores[i]))
    cores = [cores[i] for i in order]
    kappas = [kappas[i] for i in order]
    in_core = set().union(*cores) if cores else set()
    attached = [{v for v in range(g.n) if v not in in_core and len(g.neighbors(v) & c) >= attach}
                for c in cores]
    pieces = []
    for i, c in enumerate(cores):
        clash = set()
        for j, c2 in enumerate(cores):
            if j != i:
                clash |= c2 | attached[j]
        pieces.append((c | attached[i]) - clash)
    components, core_graphs = [], []
    kept: set[tuple[int, int]] = set()
    for c, piece in zip(cores, pieces):
        absorbed = c | {v for v in piece if v in xs}
        components.append(labelled.subgraph(piece))
        core_graphs.append(labelled.subgraph(absorbed))
        kept.update(e for e in g.edges if e[0] in piece and e[1] in piece)
    deleted = [e for e in g.edges if e not in kept]
    info = {
        "joins": joins,
        "core_kappas": [str(x) for x in kappas],
        "edge_bound": str(200 * p * k * g.n),
        "deleted": len(deleted),
        "attach_threshold": str(attach),
    }
    return DominatedDecomposition(components, core_graphs, deleted,
                                  g.n > profile.max_exact_kappa, info)


def _dense_pieces(g, free, q0, min_order, profile, rng) -> list[set[int]]:
    if len(free) < 2:
        return []
    sub = g.subgraph(free)
    dec = cut_dense_decomposition(sub, q0, profile, rng)
    return [set(c.origin) for c in dec.components if c.n >= min_order]


def _sampled_piece(g, free, xs, ys, q0, min_order, p, k, profile, rng) -> list[set[int]]:
    """Resample a small Y-subset of the free part and look for a cut-dense
    subgraph there (the random-subset step of the maximality argument)."""
    fy = [v for v in free if v in ys]
    fx = [v for v in free if v in xs]
    if not fx or not fy:
        return []
    size = max(1, min(len(fy), max(k, math.ceil(99 * p * k))))
    for _ in range(8):
        pick = sorted(rng.choice(fy, size=size, replace=False).tolist())
        sub = g.subgraph(fx + pick)
        n = sub.n
        if sub.m < 2 * q0 * n * n:
            continue
        try:
            piece = find_cut_dense_subgraph(sub, q0, profile, rng)
        except GraphError:
            continue
        if piece.n >= min_order:
            return [set(piece.origin)]
    return []
