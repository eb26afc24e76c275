"""ε-regular pair checks, partition refinement, reduced graphs and the cover
extracted from a bipartite reduced graph."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .constructions import rng_for
from .graph import Graph, GraphError, is_bipartite_with
from .profile import ParamProfile, frac


class RegularityUnresolved(GraphError):
    def __init__(self, result: "RefineResult"):
        super().__init__(f"regularity refinement unresolved after {result.rounds} rounds "
                         f"({len(result.partition.parts)} parts)")
        self.result = result


@dataclass(frozen=True)
class RegularityPartition:
    parts: tuple[tuple[int, ...], ...]
    exceptional: tuple[int, ...]
    epsilon: Fraction
    eta: Fraction
    irregular: frozenset = frozenset()

    def __post_init__(self):
        sizes = {len(p) for p in self.parts}
        if len(sizes) > 1:
            raise GraphError(f"parts must have equal sizes, got {sorted(sizes)}")
        seen: set[int] = set()
        for p in list(self.parts) + [self.exceptional]:
            if seen & set(p):
                raise GraphError("parts overlap")
            seen |= set(p)

    @property
    def part_size(self) -> int:
        return len(self.parts[0]) if self.parts else 0

    def owner(self) -> dict[int, int]:
        return {v: i for i, p in enumerate(self.parts) for v in p}

    def covers(self, n: int) -> bool:
        return sum(len(p) for p in self.parts) + len(self.exceptional) == n and \
            set().union(*map(set, self.parts), set(self.exceptional)) == set(range(n))


@dataclass(frozen=True)
class ReducedGraph:
    base: RegularityPartition
    edges: frozenset
    densities: dict
    graph: Graph
    eta: Fraction

    def underlying(self) -> Graph:
        return Graph(len(self.base.parts), self.edges)


@dataclass(frozen=True)
class PairCheck:
    regular: bool
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None
    density: Fraction
    sampled: bool = False


@dataclass
class RefineResult:
    resolved: bool
    graph: Graph | None
    partition: RegularityPartition
    rounds: int
    energies: list[Fraction] = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    degree_loss_violations: list[int] = field(default_factory=list)
    edge_loss: int = 0
    edge_loss_bound: Fraction = Fraction(0)
    sampled: bool = False


# ---------------------------------------------------------------------------
# pair checks


def pair_density(g: Graph, a: Iterable[int], b: Iterable[int]) -> Fraction:
    a, b = list(a), list(b)
    if not a or not b:
        return Fraction(0)
    bs = set(b)
    e = sum(len(g.neighbors(u) & bs) for u in a)
    return Fraction(e, len(a) * len(b))


def _bits(count: int) -> np.ndarray:
    masks = np.arange(1, 1 << count, dtype=np.uint32)
    return ((masks[:, None] >> np.arange(count, dtype=np.uint32)) & 1).astype(np.int64)


def is_regular_pair(g: Graph, part_a: Sequence[int], part_b: Sequence[int], eps,
                    cap: int = 12, sample_count: int = 2000, seed=0) -> PairCheck:
    """Decide whether (A, B) is ε-regular: e(A',B') = (1±ε)|A'||B'|d(A,B) for all
    A' ⊆ A, B' ⊆ B with |A'| ≥ ε|A|, |B'| ≥ ε|B|.

    For each A' the extreme values of e(A',B') over |B'| = s come from the s
    lowest and s highest degrees into A', so enumerating A' alone is exact.
    Parts above ``cap`` are checked on ``sample_count`` random A'.
    """
    a, b = sorted(part_a), sorted(part_b)
    if not a or not b:
        raise GraphError("pair sides must be nonempty")
    if set(a) & set(b):
        raise GraphError("pair sides overlap")
    eps = frac(eps)
    adj = np.array([[1 if g.has_edge(u, w) else 0 for w in b] for u in a], dtype=np.int64)
    e = int(adj.sum())
    la, lb = len(a), len(b)
    density = Fraction(e, la * lb)
    sampled = la > cap
    if e == 0:
        return PairCheck(True, None, density, sampled)
    a0 = max(1, math.ceil(eps * la))
    b0 = max(1, math.ceil(eps * lb))
    if not sampled:
        rows = _bits(la)
    else:
        rng = rng_for(seed)
        rows = np.zeros((sample_count, la), dtype=np.int64)
        for r in range(sample_count):
            size = int(rng.integers(a0, la + 1))
            rows[r, rng.choice(la, size=size, replace=False)] = 1
    size_a = rows.sum(axis=1)
    keep = size_a >= a0
    rows, size_a = rows[keep], size_a[keep]
    deg = rows @ adj
    order = np.argsort(deg, axis=1, kind="stable")
    srt = np.take_along_axis(deg, order, axis=1)
    pre = np.concatenate([np.zeros((len(rows), 1), dtype=np.int64), np.cumsum(srt, axis=1)], axis=1)
    p, q = eps.numerator, eps.denominator
    scale = la * lb * q
    hit = None
    for s in range(b0, lb + 1):
        lo = pre[:, s]
        hi = pre[:, lb] - pre[:, lb - s]
        target = e * size_a * s
        bad = (hi * scale > (q + p) * target) | (lo * scale < (q - p) * target)
        if bad.any():
            r = int(np.flatnonzero(bad)[0])
            if hit is None or r < hit[0]:
                high = hi[r] * scale > (q + p) * target[r]
                hit = (r, s, bool(high))
    if hit is None:
        return PairCheck(True, None, density, sampled)
    r, s, high = hit
    sub_a = tuple(a[i] for i in np.flatnonzero(rows[r]).tolist())
    cols = order[r, lb - s:] if high else order[r, :s]
    sub_b = tuple(sorted(b[i] for i in cols.tolist()))
    return PairCheck(False, (sub_a, sub_b), density, sampled)


# ---------------------------------------------------------------------------
# reduced graphs


def reduced_graph(g: Graph, partition: RegularityPartition, eta) -> ReducedGraph:
    eta = frac(eta)
    parts = partition.parts
    dens: dict[tuple[int, int], Fraction] = {}
    edges = set()
    for i, j in combinations(range(len(parts)), 2):
        d = pair_density(g, parts[i], parts[j])
        dens[(i, j)] = d
        if d >= eta and d > 0 and (i, j) not in partition.irregular:
            edges.add((i, j))
    return ReducedGraph(partition, frozenset(edges), dens, g, eta)


def halve_partition(partition: RegularityPartition) -> RegularityPartition:
    """Split each part into its lower and upper half; part i becomes 2i, 2i+1."""
    parts = []
    for p in partition.parts:
        if len(p) % 2:
            raise GraphError(f"part of odd size {len(p)} cannot be halved")
        s = sorted(p)
        h = len(s) // 2
        parts += [tuple(s[:h]), tuple(s[h:])]
    irregular = frozenset((2 * i + x, 2 * j + y) for i, j in partition.irregular
                          for x in (0, 1) for y in (0, 1))
    return RegularityPartition(tuple(parts), partition.exceptional, partition.epsilon,
                               partition.eta, irregular)


# ---------------------------------------------------------------------------
# refinement


def partition_energy(g: Graph, parts: Sequence[Sequence[int]], exceptional: Sequence[int]) -> Fraction:
    """Mean-square density index of the partition parts + exceptional singletons."""
    n = g.n
    if n == 0:
        return Fraction(0)
    classes = [list(p) for p in parts] + [[v] for v in exceptional]
    label = np.full(n, -1, dtype=np.int64)
    for c, vs in enumerate(classes):
        label[vs] = c
    counts = np.zeros((len(classes), len(classes)), dtype=np.int64)
    for u, v in g.edges:
        cu, cv = label[u], label[v]
        if cu >= 0 and cv >= 0 and cu != cv:
            counts[min(cu, cv), max(cu, cv)] += 1
    sizes = [len(c) for c in classes]
    total = Fraction(0)
    for i, j in zip(*np.nonzero(counts)):
        e = int(counts[i, j])
        total += Fraction(e * e, sizes[i] * sizes[j])
    return total / (n * n)


def _equalize(blocks: list[list[int]], target: int, budget: int) -> tuple[list[tuple[int, ...]], list[int], int] | None:
    """Cut blocks into chunks of one common size m ≤ target whose leftovers fit
    the exceptional budget; the largest such m is used."""
    for m in range(max(target, 1), 0, -1):
        if sum(len(b) % m for b in blocks) <= budget:
            parts, spill = [], []
            for b in blocks:
                b = sorted(b)
                whole = len(b) - len(b) % m
                parts += [tuple(b[i:i + m]) for i in range(0, whole, m)]
                spill += b[whole:]
            return parts, spill, m
    return None


def _working_graph(g: Graph, parts, irregular, eta) -> Graph:
    owner = {v: i for i, p in enumerate(parts) for v in p}
    dens = {}
    keep = []
    for u, v in g.edges:
        i, j = owner.get(u), owner.get(v)
        if i is None or j is None or i == j:
            continue
        key = (min(i, j), max(i, j))
        if key in irregular:
            continue
        if key not in dens:
            dens[key] = pair_density(g, parts[key[0]], parts[key[1]])
        if dens[key] >= eta:
            keep.append((u, v))
    return Graph(g.n, keep, origin=g.origin)


def regularity_refine(g: Graph, eps, eta, init_partition: Iterable[Iterable[int]] | None = None,
                      max_parts: int = 64, max_iters: int = 10,
                      profile: ParamProfile | None = None, seed=0) -> RefineResult:
    """Refine towards an (ε, η)-regular partition.

    Each round checks every pair, refines each part by the atoms of the
    witnesses it takes part in, and re-equalises part sizes, pushing leftovers
    into the exceptional set (at most ε·n vertices overall). The run resolves
    once at most ε·C(l,2) pairs are irregular and e(G) - e(G') ≤ (2ε+η)n².
    """
    profile = profile or ParamProfile()
    eps, eta = frac(eps), frac(eta)
    n = g.n
    rng = rng_for(seed)
    blocks = [sorted(set(b)) for b in (init_partition or [range(n)])]
    blocks = [b for b in blocks if b]
    if sorted(v for b in blocks for v in b) != list(range(n)):
        raise GraphError("init_partition must partition V(G)")
    budget_total = math.floor(eps * n)
    # without an initial partition, start from about 1/ε parts so pairs exist
    floor_size = [max(1, n // math.ceil(1 / eps))] if init_partition is None else []
    target = min([len(b) for b in blocks] + floor_size) if blocks else 1
    eq = _equalize(blocks, target, budget_total)
    assert eq is not None
    parts, exceptional, size = eq
    energies: list[Fraction] = []
    witnesses: dict = {}
    sampled = False
    bound = (2 * eps + eta) * n * n
    rounds = 0
    while True:
        rounds += 1
        energies.append(partition_energy(g, parts, exceptional))
        partition_try = RegularityPartition(tuple(parts), tuple(sorted(exceptional)), eps, eta)
        if len(parts) > max_parts:
            return RefineResult(False, None, partition_try, rounds, energies, witnesses, sampled=sampled)
        witnesses = {}
        for i, j in combinations(range(len(parts)), 2):
            chk = is_regular_pair(g, parts[i], parts[j], eps, profile.max_exact_regularity,
                                  profile.sample_count, rng)
            sampled |= chk.sampled
            if not chk.regular:
                witnesses[(i, j)] = chk.witness
        l = len(parts)
        irregular = frozenset(witnesses)
        gp = _working_graph(g, parts, irregular, eta)
        loss = g.m - gp.m
        if len(irregular) <= eps * math.comb(l, 2) and loss <= bound:
            part = RegularityPartition(tuple(parts), tuple(sorted(exceptional)), eps, eta, irregular)
            viol = [v for v in range(n) if g.degree(v) - gp.degree(v) > (eps + eta) * n]
            return RefineResult(True, gp, part, rounds, energies, witnesses, viol, loss, bound, sampled)
        if rounds >= max_iters or size == 1:
            part = RegularityPartition(tuple(parts), tuple(sorted(exceptional)), eps, eta, irregular)
            return RefineResult(False, None, part, rounds, energies, witnesses, sampled=sampled)
        # atoms of the common refinement
        new_blocks: list[list[int]] = []
        for i, p in enumerate(parts):
            cuts = [set(w[0]) for (x, _), w in witnesses.items() if x == i]
            cuts += [set(w[1]) for (_, y), w in witnesses.items() if y == i]
            atoms: dict[tuple[bool, ...], list[int]] = {}
            for v in p:
                atoms.setdefault(tuple(v in c for c in cuts), []).append(v)
            new_blocks += [sorted(a) for a in atoms.values()]
        nxt = size - 1 if witnesses else size // 2
        eq = _equalize(new_blocks, max(1, nxt), budget_total - len(exceptional))
        assert eq is not None  # chunks of size 1 always fit
        parts, spill, size = eq
        exceptional = exceptional + spill


def regularity_cover(g: Graph, part_x, part_y, k: int, profile: ParamProfile | None = None,
                     seed=0) -> tuple[list[int], int]:
    """Blow up a König cover of the reduced graph of a bipartite graph.

    Returns the cover's vertices and the number of G-edges it misses.
    """
    from .matchings import konig_cover

    profile = profile or ParamProfile()
    xs, ys = sorted(set(part_x)), sorted(set(part_y))
    if not is_bipartite_with(g, xs, ys):
        raise GraphError("regularity_cover needs a bipartite graph with the given parts")
    init = [b for b in (xs, ys) if b]
    res = regularity_refine(g, profile.epsilon, profile.eta, init, profile.max_parts,
                            profile.max_iters, profile, seed)
    if not res.resolved:
        raise RegularityUnresolved(res)
    red = reduced_graph(g, res.partition, profile.eta)
    rg = red.underlying()
    xset = set(xs)
    rx = [i for i, p in enumerate(res.partition.parts) if p[0] in xset]
    ry = [i for i in range(rg.n) if i not in set(rx)]
    _, cover_parts = konig_cover(rg, rx, ry)
    cover = sorted(v for i in cover_parts for v in res.partition.parts[i])
    cs = set(cover)
    residual = sum(1 for u, v in g.edges if u not in cs and v not in cs)
    return cover, residual
