"""Constructive tree embeddings: greedy, the bipartite completion engine, and
the almost-complete / almost-complete-bipartite case analyses."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .constructions import rng_for
from .graph import Graph, GraphError, Tree, ceil_half, min_degree_subgraph, validate_embedding
from .matchings import StarForest, stars_or_matching
from .profile import ParamProfile, extremal_constants, frac
from .treetools import _collect, leaf_matching, scattered_set, split_tree_by_edge


class HypothesisError(GraphError):
    """A named hypothesis of an embedding theorem fails on the given input."""

    def __init__(self, bound: str, detail: str):
        super().__init__(f"hypothesis {bound} fails: {detail}")
        self.bound = bound
        self.detail = detail


class EmbeddingStageError(GraphError):
    """A stage ran out of room; carries the partial trace as a certificate."""

    def __init__(self, stage: str, detail: str, trace: "EmbedTrace | None" = None):
        super().__init__(f"stage {stage} failed: {detail}")
        self.stage = stage
        self.detail = detail
        self.trace = trace


@dataclass
class Stage:
    label: str
    tree_vertices: tuple[int, ...]
    targets: frozenset[int] | None  # None: no membership claim beyond adjacency
    feasible: int | None = None  # smallest candidate count seen in the stage
    note: dict = field(default_factory=dict)


@dataclass
class Check:
    name: str
    value: Fraction
    bound: Fraction
    relation: str  # ">=" or "<="

    @property
    def ok(self) -> bool:
        return self.value >= self.bound if self.relation == ">=" else self.value <= self.bound


@dataclass
class EmbedTrace:
    stages: list[Stage] = field(default_factory=list)
    embedding: dict[int, int] = field(default_factory=dict)
    case: str = ""
    checks: list[Check] = field(default_factory=list)
    derived: dict = field(default_factory=dict)

    def verify(self, t: Tree, g: Graph) -> bool:
        if not validate_embedding(t, g, self.embedding).valid:
            return False
        seen: set[int] = set()
        for st in self.stages:
            for v in st.tree_vertices:
                if v not in self.embedding or v in seen:
                    return False
                seen.add(v)
                if st.targets is not None and self.embedding[v] not in st.targets:
                    return False
        return seen == set(self.embedding)

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "embedding": {str(k): v for k, v in sorted(self.embedding.items())},
            "stages": [{"label": s.label, "tree_vertices": list(s.tree_vertices),
                        "targets": None if s.targets is None else sorted(s.targets),
                        "feasible": s.feasible, "note": s.note} for s in self.stages],
            "checks": [{"name": c.name, "value": str(c.value), "bound": str(c.bound),
                        "relation": c.relation, "ok": c.ok} for c in self.checks],
            "derived": self.derived,
        }


@dataclass
class ExtremalWitness:
    variant: str  # "almost_complete" or "almost_complete_bipartite"
    K: tuple[int, ...] = ()
    X: tuple[int, ...] = ()
    Y: tuple[int, ...] = ()


# ---------------------------------------------------------------------------
# shared helpers


def _check(trace: EmbedTrace, name: str, value, bound, relation: str = ">=") -> None:
    c = Check(name, frac(value), frac(bound), relation)
    trace.checks.append(c)
    if not c.ok:
        rel = "≥" if relation == ">=" else "≤"
        raise HypothesisError(name, f"{c.value} {rel} {c.bound} is false")


def _bfs_order(t: Tree, seeds: Iterable[int], allowed: Iterable[int]) -> list[int]:
    """Allowed tree vertices in BFS order from the seeds, lowest index first;
    pieces not reachable through allowed vertices start from their lowest vertex."""
    allowed = set(allowed)
    order: list[int] = []
    seen = set(seeds)
    frontier = sorted(seen)
    pending = set(allowed) - seen
    while pending:
        queue = list(frontier)
        i = 0
        while i < len(queue):
            u = queue[i]
            i += 1
            for w in sorted(t.neighbors(u)):
                if w in pending:
                    pending.discard(w)
                    seen.add(w)
                    order.append(w)
                    queue.append(w)
        if pending:
            start = min(pending)
            pending.discard(start)
            seen.add(start)
            order.append(start)
            frontier = [start]
    return order


def _extend(g: Graph, t: Tree, f: dict[int, int], order: Iterable[int], targets,
            label: str, trace: EmbedTrace, note: dict | None = None) -> Stage:
    """Map each tree vertex (in order) to the lowest unused target adjacent to
    the images of its already-embedded tree neighbours."""
    used = set(f.values())
    order = list(order)
    tset = None if targets is None else frozenset(targets)
    low = None
    for v in order:
        cand = set(tset) if tset is not None else None
        for w in t.neighbors(v):
            if w in f:
                nb = g.neighbors(f[w])
                cand = set(nb) if cand is None else cand & nb
        if cand is None:
            cand = set(range(g.n))
        cand -= used
        low = len(cand) if low is None else min(low, len(cand))
        if not cand:
            stage = Stage(label, tuple(order), tset, 0, dict(note or {}))
            trace.stages.append(stage)
            trace.embedding = dict(f)
            raise EmbeddingStageError(label, f"no free target for tree vertex {v}", trace)
        x = min(cand)
        f[v] = x
        used.add(x)
    stage = Stage(label, tuple(order), tset, low, dict(note or {}))
    trace.stages.append(stage)
    return stage


def _finish(trace: EmbedTrace, t: Tree, g: Graph, f: dict[int, int]) -> EmbedTrace:
    trace.embedding = dict(sorted(f.items()))
    rep = validate_embedding(t, g, trace.embedding)
    assert rep.valid, f"embedding failed validation: {rep}"
    assert trace.verify(t, g)
    return trace


# ---------------------------------------------------------------------------
# greedy


def greedy_embed(g: Graph, t: Tree, root_target: int, d_floor: int | None = None,
                 delta_floor: int | None = None, tree_root: int = 0) -> EmbedTrace:
    """Embed T with ``tree_root`` on ``root_target`` when δ(G - v) ≥ e(T) and
    d(v) ≥ Δ(T); vertices are placed in BFS order on the lowest free neighbour."""
    d_floor = t.k if d_floor is None else d_floor
    delta_floor = t.max_degree if delta_floor is None else delta_floor
    if not (0 <= root_target < g.n):
        raise GraphError(f"root target {root_target} not in G")
    trace = EmbedTrace(case="greedy")
    rest = [v for v in range(g.n) if v != root_target]
    dmin = min((len(g.neighbors(v) - {root_target}) for v in rest), default=math.inf)
    _check(trace, "d_floor ≥ e(T)", d_floor, t.k)
    _check(trace, "δ(G-v)", dmin if dmin != math.inf else t.k, d_floor)
    _check(trace, "delta_floor ≥ Δ(T)", delta_floor, t.max_degree)
    _check(trace, "d(v)", g.degree(root_target), delta_floor)
    f = {tree_root: root_target}
    trace.stages.append(Stage("root", (tree_root,), frozenset({root_target}), 1))
    order = _bfs_order(t, [tree_root], range(t.order))
    try:
        _extend(g, t, f, order, None, "greedy", trace)
    except EmbeddingStageError as exc:  # impossible under the hypotheses
        raise AssertionError(f"greedy embedding failed under its preconditions: {exc}") from exc
    return _finish(trace, t, g, f)


def _greedy_into(g: Graph, t: Tree, f: dict[int, int], vertices: Iterable[int], allowed,
                 label: str, trace: EmbedTrace, seeds: Iterable[int]) -> Stage:
    order = _bfs_order(t, seeds, vertices)
    return _extend(g, t, f, order, allowed, label, trace)


# ---------------------------------------------------------------------------
# almost-complete case


def _core(g: Graph, vertices: Iterable[int], floor: int) -> set[int]:
    """Largest vertex subset of ``vertices`` inducing minimum degree ≥ floor."""
    alive = set(vertices)
    deg = {v: len(g.neighbors(v) & alive) for v in alive}
    stack = [v for v in sorted(alive) if deg[v] < floor]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
                if deg[w] < floor:
                    stack.append(w)
    return alive


def embed_nonbipartite_extremal(g: Graph, w: ExtremalWitness, t: Tree,
                                profile: ParamProfile | None = None) -> EmbedTrace:
    """Embed T given a subgraph K with |K| ≤ (1+c)k and δ(K) ≥ (1-c)k.

    The tree is split along an edge sr (s on the small side S). Vertices
    outside K with many K-neighbours form A. If A is large, S+sr goes into a
    dense subgraph of the (A', K) slice and R into the rest of K; otherwise S
    goes into a dense core of G - (K ∪ A) reached through an edge r's', and R
    into K + r'. When δ(K) ≥ k the tree is embedded into K directly.
    """
    profile = profile or ParamProfile()
    if w.variant != "almost_complete":
        raise GraphError("witness must be of the almost_complete variant")
    k, delta = t.k, max(t.max_degree, 1)
    c = extremal_constants(profile, delta)
    trace = EmbedTrace()
    kset = sorted(set(w.K))
    kg = g.subgraph(kset)
    _check(trace, "|K|", len(kset), (1 + c["nb.k_order"]) * k, "<=")
    _check(trace, "δ(K)", kg.min_degree(), (1 - c["nb.k_degree"]) * k)
    if kg.min_degree() >= k:
        trace.case = "direct"
        f = {0: kset[0]}
        trace.stages.append(Stage("root", (0,), frozenset(kset), len(kset)))
        _greedy_into(g, t, f, [v for v in range(t.order) if v != 0], kset, "tree-into-K", trace, [0])
        return _finish(trace, t, g, f)
    _check(trace, "connected", int(g.is_connected()), 1)
    _check(trace, "|G|", g.n, (1 + c["nb.g_order"]) * k)
    _check(trace, "δ(G)", g.min_degree(), c["nb.g_degree"] * k)

    split = split_tree_by_edge(t, c["nb.split_alpha"])
    r_t, s_t = split.split_edge  # r in R, s in S
    side_s, side_r = set(split.side_S), set(split.side_R)
    kin = set(kset)
    thr = c["nb.attach"] * k
    attached = [v for v in range(g.n) if v not in kin and len(g.neighbors(v) & kin) >= thr]
    trace.derived.update({"S": sorted(side_s), "split_edge": [r_t, s_t], "A": attached,
                          "attach_threshold": str(thr)})
    f: dict[int, int] = {}
    if len(attached) >= thr:
        trace.case = "attached-set-large"
        a_prime = attached[:math.ceil(thr)]
        slice_k = sorted(set().union(*(g.neighbors(a) & kin for a in a_prime)))
        slice_vs = sorted(set(a_prime) | set(slice_k))
        aset = set(a_prime)
        slice_edges = [(u, v) for u, v in g.edges if (u in aset) != (v in aset)
                       and u in set(slice_vs) and v in set(slice_vs)]
        sl = Graph(g.n, slice_edges).subgraph(slice_vs)
        try:
            h = min_degree_subgraph(sl, len(side_s))
        except GraphError as exc:
            raise EmbeddingStageError("dense-slice", str(exc), trace) from exc
        hv = set(h.origin)
        hk = sorted(hv & kin)
        if not hk:
            raise EmbeddingStageError("dense-slice", "dense slice misses K", trace)
        h_graph = Graph(g.n, [(u, v) for u, v in slice_edges if u in hv and v in hv])
        f[r_t] = hk[0]
        trace.stages.append(Stage("r-into-K", (r_t,), frozenset(hk), len(hk)))
        _greedy_into(h_graph, t, f, side_s, hv, "S-into-slice", trace, [r_t])
        free_k = kin - (set(f.values()) - {f[r_t]})
        _greedy_into(g, t, f, side_r - {r_t}, free_k, "R-into-K", trace, [r_t])
        return _finish(trace, t, g, f)

    trace.case = "attached-set-small"
    outside = [v for v in range(g.n) if v not in kin and v not in set(attached)]
    core = _core(g, outside, len(side_s))
    trace.derived["core"] = sorted(core)
    if not core:
        raise EmbeddingStageError("outside-core", f"G - (K ∪ A) has no {len(side_s)}-core", trace)
    link = sorted((s2, r2) for s2 in core for r2 in g.neighbors(s2) if r2 in kin or r2 in set(attached))
    if not link:
        raise EmbeddingStageError("connecting-edge", "no edge from the core to K ∪ A", trace)
    s2, r2 = link[0]
    f[s_t] = s2
    trace.stages.append(Stage("s-into-core", (s_t,), frozenset(core), len(core)))
    _greedy_into(g, t, f, side_s - {s_t}, core, "S-into-core", trace, [s_t])
    f[r_t] = r2
    trace.stages.append(Stage("r-onto-link", (r_t,), frozenset({r2}), 1))
    _greedy_into(g, t, f, side_r - {r_t}, kin, "R-into-K", trace, [r_t])
    return _finish(trace, t, g, f)


# ---------------------------------------------------------------------------
# bipartite completion engine


@dataclass(frozen=True)
class BipartiteCore:
    X_K: frozenset[int]
    Y_K: frozenset[int]
    X_big: frozenset[int]
    Y_big: frozenset[int]


def core_hypotheses(g: Graph, core: BipartiteCore, k: int, consts: Mapping[str, Fraction]) -> list[Check]:
    xk, yk, xb, yb = core.X_K, core.Y_K, core.X_big, core.Y_big
    return [
        Check("|X_K|", Fraction(len(xk)), (1 + consts["l43.xk_order"]) * k / 2, "<="),
        Check("δ_{Y_K}(X_K)", Fraction(min((len(g.neighbors(x) & yk) for x in xk), default=0)),
              consts["l43.xk_ydeg"] * k, ">="),
        Check("δ_{X_K}(Y_K)", Fraction(min((len(g.neighbors(y) & xk) for y in yk), default=0)),
              (1 - consts["l43.yk_xdeg"]) * k / 2, ">="),
        Check("|X_K - X_big|", Fraction(len(xk - xb)), consts["l43.xsmall"] * k, "<="),
        Check("|Y_big|", Fraction(len(yb)), consts["l43.ybig"] * k, ">="),
        Check("δ_{Y_big}(X_big)", Fraction(min((len(g.neighbors(x) & yb) for x in xb), default=0)),
              (1 - consts["l43.xbig_deficit"]) * len(yb), ">="),
    ]


def complete_bipartite_embedding(g: Graph, core: BipartiteCore, t: Tree, S: Iterable[int],
                                 f: Mapping[int, int], x_part: Iterable[int] | None = None,
                                 profile: ParamProfile | None = None,
                                 trace: EmbedTrace | None = None) -> EmbedTrace:
    """Extend an embedding of T[S ∪ N(S)] to all of T through a near-complete
    bipartite core (X_K, Y_K) with big parts X_big, Y_big.

    ``x_part`` is the tree part destined for X_K (default: the smaller part).
    Stages: (a) scattered R ⊆ X_T onto X_small; (b) N(R) into Y_K; (c) second
    neighbourhoods into X_K; (d) the rest of X_T into X_K; (e) the rest of Y_T
    into common neighbourhoods inside Y_big.
    """
    profile = profile or ParamProfile()
    trace = trace if trace is not None else EmbedTrace(case="completion")
    k, delta = t.k, max(t.max_degree, 1)
    consts = extremal_constants(profile, delta)
    s_set = set(S)
    f = dict(f)
    xt = set(x_part) if x_part is not None else set(t.part_X if t.k1 <= t.k2 else t.part_Y)
    yt = set(range(t.order)) - xt
    ns = {w for v in s_set for w in t.neighbors(v)} - s_set
    xk, yk, xb, yb = set(core.X_K), set(core.Y_K), set(core.X_big), set(core.Y_big)
    for chk in core_hypotheses(g, core, k, consts):
        trace.checks.append(chk)
        if not chk.ok:
            raise HypothesisError(chk.name, f"{chk.value} {chk.relation} {chk.bound} is false")
    if set(f) != s_set | ns:
        raise HypothesisError("dom f", "f must be defined exactly on S ∪ N_T(S)")
    part = {v: f[v] for v in f}
    if not validate_embedding(t, g, part, require_total=False).valid:
        raise HypothesisError("f", "prescribed map is not an embedding")
    _check(trace, "condition 1: |S|", len(s_set), consts["l43.s_max"] * k, "<=")
    _check(trace, "condition 2: N_T(S) ⊆ Y_T", int(ns <= yt), 1)
    _check(trace, "condition 3: f(N_T(S)) ⊆ Y_K", int(all(f[v] in yk for v in ns)), 1)
    _check(trace, "condition 4: |X_K - f(S)| ≥ |X_T - S|",
           len(xk - {f[v] for v in s_set}), len(xt - s_set))

    # (a) scattered R onto X_small
    x_small = sorted((xk - xb) - set(f.values()))
    try:
        r_set = scattered_set(t, len(x_small), 4, sorted(xt - s_set - set(f)), s_set, 4) if x_small else []
    except GraphError as exc:
        raise EmbeddingStageError("a:scatter", str(exc), trace) from exc
    for r, x in zip(r_set, x_small):
        f[r] = x
    trace.stages.append(Stage("a:scatter", tuple(r_set), frozenset(xk - xb), len(x_small),
                              {"R": list(r_set)}))
    # (b) N(R) into Y_K
    nr = sorted({w for r in r_set for w in t.neighbors(r)} - set(f))
    _extend(g, t, f, nr, yk, "b:N(R)", trace)
    # (c) second neighbourhoods into X_K
    first = set(nr) | ns
    n2 = [x for x in _bfs_order(t, first, {w for y in first for w in t.neighbors(y)} - set(f))]
    _extend(g, t, f, n2, xk, "c:N2", trace)
    # (d) the rest of X_T into X_K
    rest_x = sorted(xt - set(f))
    free_x = sorted(xk - set(f.values()))
    if len(free_x) < len(rest_x):
        raise EmbeddingStageError("d:X", f"{len(rest_x)} tree vertices, {len(free_x)} free X_K vertices", trace)
    if any(w in f for x in rest_x for w in t.neighbors(x)):
        raise EmbeddingStageError("d:X", "a remaining X_T vertex has an embedded neighbour", trace)
    for x, img in zip(rest_x, free_x):
        f[x] = img
    trace.stages.append(Stage("d:X", tuple(rest_x), frozenset(xk), len(free_x) - len(rest_x) + 1
                              if rest_x else len(free_x)))
    # (e) the rest of Y_T into Y_big
    rest_y = sorted(set(range(t.order)) - set(f))
    used = set(f.values())
    chain_min = None
    low = None
    for y in rest_y:
        nbr_imgs = [f[x] for x in t.neighbors(y)]
        cand = set(yb)
        for img in nbr_imgs:
            cand &= g.neighbors(img)
        cand -= used
        chain = len(yb) - sum(len(yb) - len(g.neighbors(img) & yb) for img in nbr_imgs) \
            - len(used & yb)
        chain_min = chain if chain_min is None else min(chain_min, chain)
        low = len(cand) if low is None else min(low, len(cand))
        if not cand:
            trace.stages.append(Stage("e:Y", tuple(rest_y), frozenset(yb), 0, {"chain_min": chain_min}))
            trace.embedding = dict(f)
            raise EmbeddingStageError("e:Y", f"no common neighbour left for tree vertex {y}", trace)
        f[y] = min(cand)
        used.add(f[y])
    if rest_y:
        assert low is not None and low > 0
    trace.stages.append(Stage("e:Y", tuple(rest_y), frozenset(yb), low, {"chain_min": chain_min}))
    return _finish(trace, t, g, f)


# ---------------------------------------------------------------------------
# almost-complete bipartite case


def derive_bipartite_sets(g: Graph, w: ExtremalWitness, k: int, consts) -> dict:
    xs = set(w.X)
    yprime = sorted(y for y in range(g.n) if y not in xs
                    and len(g.neighbors(y) & xs) >= (1 - consts["bip.yprime"]) * k / 2)
    yp = set(yprime)
    cand = sorted(x for x in range(g.n) if x not in xs and x not in yp
                  and len(g.neighbors(x) & yp) >= consts["bip.xprime_degree"] * k)
    xprime = cand[:min(len(cand), math.floor(consts["bip.xprime_cap"] * k))]
    z = sorted(set(range(g.n)) - xs - set(xprime) - yp)
    return {"X": sorted(xs), "Y": sorted(set(w.Y)), "Y'": yprime, "X'": xprime,
            "X''": cand, "Z": z}


def _bare_windows(t: Tree, count: int, y_part: set[int]) -> list[tuple[int, ...]]:
    """Bare paths a-b-c-d-e (b, c, d of degree 2, a ∈ y_part) at pairwise
    distance ≥ 2, greedy lowest first."""
    from .treetools import _threads

    out: list[tuple[int, ...]] = []
    blocked: set[int] = set()
    for path in _threads(t):
        i = 0
        while i + 4 < len(path) and len(out) < count:
            seg = tuple(path[i:i + 5])
            if seg[0] in y_part and all(t.degree(v) == 2 for v in seg[1:4]) and not blocked & set(seg):
                out.append(seg)
                for v in seg:
                    blocked.add(v)
                    blocked.update(t.neighbors(v))
                i += 5
            else:
                i += 1
    return out


def _scattered_leaves(t: Tree, count: int, part: set[int]) -> list[tuple[int, int]]:
    """(parent, leaf) pairs with leaves in ``part`` at pairwise distance ≥ 4."""
    cand = [leaf for _, leaf in leaf_matching(t) if leaf in part]
    cand += [v for v in range(t.order) if t.degree(v) == 1 and v in part and v not in cand]
    try:
        chosen = scattered_set(t, count, 4, sorted(cand))
    except GraphError:
        return []
    return [(next(iter(t.neighbors(x))), x) for x in chosen]


def case2_prescription(t: Tree, d: int) -> str | None:
    """Which Case 2.2 prescription the tree supports for a given d: "bare-paths"
    (d bare windows ending in the big part), "leaves" (3d scattered leaves in
    one part) or None."""
    small = set(t.part_X if t.k1 <= t.k2 else t.part_Y)
    big = set(range(t.order)) - small
    if len(_bare_windows(t, d, big)) >= d:
        return "bare-paths"
    if any(len(_scattered_leaves(t, 3 * d, part)) >= 3 * d for part in (big, small)):
        return "leaves"
    return None


def embed_bipartite_extremal(g: Graph, w: ExtremalWitness, t: Tree,
                             profile: ParamProfile | None = None) -> EmbedTrace:
    """Embed T given a near-complete bipartite B = G[X, Y] with small X.

    Derives Y', X' and Z = V - (X ∪ X' ∪ Y'). If X ∪ X' already hosts the
    smaller tree part the completion engine runs with nothing prescribed.
    Otherwise Z ≠ ∅ puts a piece of the tree into Z (Case 1) and Z = ∅ uses
    stars or a matching inside Y' (Case 2), each prescribing a small part for
    the completion engine.
    """
    profile = profile or ParamProfile()
    if w.variant != "almost_complete_bipartite":
        raise GraphError("witness must be of the almost_complete_bipartite variant")
    k, delta = t.k, max(t.max_degree, 1)
    c = extremal_constants(profile, delta)
    trace = EmbedTrace()
    xs, ys = set(w.X), set(w.Y)
    if xs & ys:
        raise GraphError("witness parts overlap")
    _check(trace, "connected", int(g.is_connected()), 1)
    _check(trace, "δ(G)", g.min_degree(), Fraction(k, 2))
    _check(trace, "|X|", len(xs), (1 + c["bip.x_order"]) * k / 2, "<=")
    _check(trace, "|Y|", len(ys), c["bip.y_order"] * k)
    _check(trace, "δ_B(X)", min((len(g.neighbors(x) & ys) for x in xs), default=0),
           (1 - c["bip.x_degree"]) * len(ys))
    _check(trace, "δ_B(Y)", min((len(g.neighbors(y) & xs) for y in ys), default=0),
           (1 - c["bip.y_degree"]) * k / 2)
    sets = derive_bipartite_sets(g, w, k, c)
    trace.derived.update(sets)
    xprime, yprime, z = set(sets["X'"]), set(sets["Y'"]), sets["Z"]
    core = BipartiteCore(frozenset(xs | xprime), frozenset(yprime), frozenset(xs), frozenset(ys))
    small_part = set(t.part_X if t.k1 <= t.k2 else t.part_Y)
    big_part = set(range(t.order)) - small_part
    k1, k2 = len(small_part), len(big_part)

    if len(xs | xprime) >= k1:
        trace.case = "direct"
        return complete_bipartite_embedding(g, core, t, (), {}, small_part, profile, trace)

    if z:
        return _bipartite_case1(g, t, core, set(z), xs | xprime, yprime, c, profile, trace)

    d = ceil_half(k) - len(xs | xprime)
    trace.derived["d"] = d
    assert d > 0 and 2 * d > k2 - k1 - 1, "Case 2 requires d > 0 and d > (k2-k1-1)/2"
    yl = sorted(yprime)
    gy = g.subgraph(yl)
    try:
        out = stars_or_matching(gy, d, delta)
    except GraphError as exc:
        raise EmbeddingStageError("2:stars-or-matching", str(exc), trace) from exc
    f: dict[int, int] = {}
    if isinstance(out, StarForest):
        trace.case = "2.1:stars"
        try:
            centres = scattered_set(t, d, 4, sorted(small_part))
        except GraphError as exc:
            raise EmbeddingStageError("2.1:scatter", str(exc), trace) from exc
        for x_t, (cen, leaves) in zip(centres, out.stars):
            f[x_t] = yl[cen]
            for y_t, leaf in zip(sorted(t.neighbors(x_t)), leaves):
                f[y_t] = yl[leaf]
        trace.stages.append(Stage("2.1:stars", tuple(sorted(f)), frozenset(yprime), len(out.stars)))
        return complete_bipartite_embedding(g, core, t, centres, f, small_part, profile, trace)

    matching = [(yl[a], yl[b]) for a, b in out]
    windows = _bare_windows(t, d, big_part)
    if len(windows) >= d and len(matching) >= 2 * d:
        trace.case = "2.2.1:bare-paths"
        used_x: set[int] = set()
        s_set = []
        for i, (a, b, c_, d_, e) in enumerate(windows[:d]):
            (y_minus, x_minus), (x_plus, y_plus) = matching[2 * i], matching[2 * i + 1]
            common = sorted((g.neighbors(x_minus) & g.neighbors(x_plus) & xs) - used_x)
            if not common:
                raise EmbeddingStageError("2.2.1:common-neighbour",
                                          f"no free common X-neighbour for {x_minus}, {x_plus}", trace)
            zc = common[0]
            used_x.add(zc)
            f.update({a: y_minus, b: x_minus, c_: zc, d_: x_plus, e: y_plus})
            s_set += [b, c_, d_]
        trace.stages.append(Stage("2.2.1:paths", tuple(sorted(f)), None, len(windows)))
        return complete_bipartite_embedding(g, core, t, s_set, f, small_part, profile, trace)

    need = 3 * d
    for part, other in ((big_part, small_part), (small_part, big_part)):
        pairs = _scattered_leaves(t, need, part)
        if len(pairs) < need or len(matching) < need:
            continue
        if len(core.X_K) < len(part) - need:
            continue
        trace.case = "2.2.2:leaves"
        for (parent, leaf), (p, q) in zip(pairs, matching):
            f[parent], f[leaf] = p, q
        trace.stages.append(Stage("2.2.2:leaves", tuple(sorted(f)), frozenset(yprime), len(pairs)))
        return complete_bipartite_embedding(g, core, t, [lf for _, lf in pairs], f, part,
                                            profile, trace)
    raise EmbeddingStageError("2.2:prescription",
                              f"neither {d} bare windows nor {need} scattered leaves", trace)


def _case1_split(t: Tree, alpha, land_in_y: bool, x_k: int):
    """Tree edge (v_T, z_T) for Case 1. The canonical edge split is used when
    the completion engine's condition 4 holds for it; otherwise the first
    qualifying edge (far side in [αk, 3Δαk]) with enough slack is taken."""
    split = split_tree_by_edge(t, alpha)
    lo, hi = alpha * t.k, 3 * max(t.max_degree, 1) * alpha * t.k

    def slack(v_t: int, side: set[int]) -> int:
        if land_in_y:
            x_part = set(range(t.order)) - set(t.part_of(v_t))
            return x_k - len(x_part - side)
        x_part = set(t.part_of(v_t))
        return (x_k - 1) - len(x_part - side - {v_t})

    v_t, z_t = split.split_edge
    if slack(v_t, set(split.side_S)) >= 0:
        return v_t, z_t, set(split.side_S)
    for a, b in t.graph.edges:
        for x, y in ((a, b), (b, a)):
            side = _collect(t, y, x)
            if lo <= len(side) <= hi and slack(x, side) >= 0:
                return x, y, side
    return v_t, z_t, set(split.side_S)


def _bipartite_case1(g, t, core, z, xk, yprime, c, profile, trace) -> EmbedTrace:
    z = set(z)
    # pick the link zv first: a vertex of Z in a dense core of G[Z] if possible
    floor = math.ceil(3 * max(t.max_degree, 1) * c["bip.split_alpha"] * t.k)
    zcore = _core(g, z, floor)
    pool = zcore if zcore else z
    links = sorted((zz, v) for zz in pool for v in g.neighbors(zz) if v not in z)
    if not links:
        pool = z
        links = sorted((zz, v) for zz in z for v in g.neighbors(zz) if v not in z)
    if not links:
        raise EmbeddingStageError("1:link", "no edge leaves Z", trace)
    zz, v = links[0]
    v_t, z_t, side_s = _case1_split(t, c["bip.split_alpha"], v in yprime, len(xk))
    trace.derived["S"] = sorted(side_s)
    f = {z_t: zz}
    trace.stages.append(Stage("1:z", (z_t,), frozenset(z), len(links)))
    _greedy_into(g, t, f, side_s - {z_t}, pool, "1:S-into-Z", trace, [z_t])
    f[v_t] = v
    trace.stages.append(Stage("1:v", (v_t,), None, 1))
    part_v = set(t.part_of(v_t))
    if v in yprime:
        trace.case = "1.1"
        x_part = set(range(t.order)) - part_v
        return complete_bipartite_embedding(g, core, t, side_s, f, x_part, profile, trace)
    trace.case = "1.2"
    nbrs = sorted(t.neighbors(v_t) - {z_t})
    _extend(g, t, f, nbrs, yprime, "1.2:N(v)", trace)
    return complete_bipartite_embedding(g, core, t, side_s | {v_t}, f, part_v, profile, trace)


# ---------------------------------------------------------------------------
# good subgraphs


def find_good_subgraph(g: Graph, part_x, part_y, k: int, C, seed=0,
                       resample_cap: int = 1000) -> Graph:
    """Sample Y' ⊆ Y with |Y'| = ⌈C²k⌉ and e(X, Y') ≥ k|Y'|; return
    H = G[X' ∪ Y'] with X' = {x : |N(x) ∩ Y'| ≥ Ck/4}."""
    C = frac(C)
    xs, ys = sorted(set(part_x)), sorted(set(part_y))
    size = math.ceil(C * C * k)
    if len(ys) < size:
        raise GraphError(f"|Y| = {len(ys)} < C²k = {C * C * k}")
    if g.edges_between(xs, ys) < k * len(ys):
        raise GraphError(f"e(X, Y) < k|Y| = {k * len(ys)}")
    rng = rng_for(seed)
    xset = set(xs)
    for _ in range(resample_cap):
        pick = sorted(rng.choice(ys, size=size, replace=False).tolist()) if size < len(ys) else ys
        pset = set(pick)
        e = sum(len(g.neighbors(x) & pset) for x in xs)
        if e >= k * size:
            xp = [x for x in xs if len(g.neighbors(x) & pset) >= C * k / 4]
            h = g.subgraph(xp + pick)
            assert len(xp) >= k - Fraction(len(xs)) / C
            return h
    raise GraphError("resample cap exceeded while looking for a dense Y-sample")
