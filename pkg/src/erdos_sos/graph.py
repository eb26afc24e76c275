"""Graph and tree data model, edge-list I/O and the elementary facts used everywhere."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs, violated preconditions and bad parameters."""


class ParseError(GraphError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Finite simple undirected graph on vertices ``0..n-1``.

    ``origin`` maps local vertex indices back to the parent graph when the
    graph was produced by :meth:`subgraph`; it is ``None`` for root graphs.
    """

    __slots__ = ("n", "_adj", "_edges", "origin", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (),
                 origin: Sequence[int] | None = None):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(n)]
        es: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            e = _norm(u, v)
            if e in es:
                raise GraphError(f"duplicate edge {e}")
            es.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self._adj = tuple(frozenset(a) for a in adj)
        self._edges = tuple(sorted(es))
        if origin is not None:
            origin = tuple(origin)
            if len(origin) != n:
                raise GraphError("origin map must have one entry per vertex")
        self.origin = origin
        self._hash = None

    # -- basic queries -------------------------------------------------
    def __len__(self) -> int:
        return self.n

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def min_degree(self) -> int:
        return min((len(a) for a in self._adj), default=0)

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def vertices(self) -> range:
        return range(self.n)

    def edges_between(self, a: Iterable[int], b: Iterable[int]) -> int:
        """e(A, B) counting edges inside A∩B once."""
        a = set(a)
        b = set(b)
        count = 0
        for u, v in self._edges:
            if (u in a and v in b) or (v in a and u in b):
                count += 1
        return count

    def degree_into(self, v: int, s: Iterable[int] | frozenset[int] | set[int]) -> int:
        if not isinstance(s, (set, frozenset)):
            s = set(s)
        return len(self._adj[v] & s)

    # -- derived graphs ------------------------------------------------
    def subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled to ``0..k-1`` in increasing vertex order."""
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        es = [(index[u], index[v]) for u, v in self._edges if u in index and v in index]
        return Graph(len(vs), es, origin=[self.root_label(v) for v in vs])

    def edge_subgraph(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> "Graph":
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        es = [(index[u], index[v]) for u, v in edges]
        return Graph(len(vs), es, origin=[self.root_label(v) for v in vs])

    def without_edges(self, removed: Iterable[tuple[int, int]]) -> "Graph":
        gone = {_norm(u, v) for u, v in removed}
        return Graph(self.n, [e for e in self._edges if e not in gone], origin=self.origin)

    def root_label(self, v: int) -> int:
        return v if self.origin is None else self.origin[v]

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    # -- identity ------------------------------------------------------
    def key(self) -> tuple:
        return (self.n, self._edges)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.key() == other.key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# edge-list format

def parse_graph(text: str) -> Graph:
    """Parse the ``n m`` header followed by ``m`` lines ``u v``.

    A header may carry a trailing ``tree`` flag; it is accepted and ignored
    here (see :func:`parse_tree`).
    """
    lines = text.splitlines()
    body = [(i + 1, ln.strip()) for i, ln in enumerate(lines)]
    body = [(i, ln) for i, ln in body if ln and not ln.startswith("#")]
    if not body:
        raise ParseError(1, "missing header")
    hline, header = body[0]
    parts = header.split()
    if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] != "tree"):
        raise ParseError(hline, f"malformed header {header!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(hline, f"malformed header {header!r}") from None
    if n < 0 or m < 0:
        raise ParseError(hline, "negative counts in header")
    rows = body[1:]
    if len(rows) != m:
        where = rows[m][0] if len(rows) > m else (rows[-1][0] + 1 if rows else hline + 1)
        raise ParseError(where, f"expected {m} edge lines, found {len(rows)}")
    seen: set[tuple[int, int]] = set()
    edges = []
    for lineno, ln in rows:
        toks = ln.split()
        if len(toks) != 2:
            raise ParseError(lineno, f"malformed edge line {ln!r}")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise ParseError(lineno, f"malformed edge line {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(lineno, f"vertex out of range in {ln!r}")
        if u == v:
            raise ParseError(lineno, f"self-loop at vertex {u}")
        e = _norm(u, v)
        if e in seen:
            raise ParseError(lineno, f"duplicate edge {e}")
        seen.add(e)
        edges.append(e)
    return Graph(n, edges)


def serialize_graph(g: Graph, tree: bool = False) -> str:
    head = f"{g.n} {g.m}" + (" tree" if tree else "")
    return "\n".join([head] + [f"{u} {v}" for u, v in g.edges]) + "\n"


# ---------------------------------------------------------------------------
# trees

@dataclass(frozen=True)
class Tree:
    graph: Graph
    k: int
    max_degree: int
    part_X: frozenset[int]
    part_Y: frozenset[int]

    @property
    def k1(self) -> int:
        return len(self.part_X)

    @property
    def k2(self) -> int:
        return len(self.part_Y)

    @property
    def order(self) -> int:
        return self.graph.n

    def neighbors(self, v: int) -> frozenset[int]:
        return self.graph.neighbors(v)

    def degree(self, v: int) -> int:
        return self.graph.degree(v)

    def part_of(self, v: int) -> frozenset[int]:
        return self.part_X if v in self.part_X else self.part_Y

    def other_part(self, v: int) -> frozenset[int]:
        return self.part_Y if v in self.part_X else self.part_X

    def distances_from(self, sources: Iterable[int]) -> list[float]:
        return bfs_distances(self.graph, sources)


def make_tree(g: Graph) -> Tree:
    if g.n == 0:
        raise GraphError("a tree needs at least one vertex")
    if g.m != g.n - 1 or not g.is_connected():
        raise GraphError("graph is not a tree")
    res = bipartition(g)
    assert isinstance(res, tuple)
    x, y = res
    return Tree(g, g.m, g.max_degree(), frozenset(x), frozenset(y))


def tree_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Tree:
    return make_tree(Graph(n, edges))


def parse_tree(text: str) -> Tree:
    return make_tree(parse_graph(text))


# ---------------------------------------------------------------------------
# elementary facts

def bfs_distances(g: Graph, sources: Iterable[int]) -> list[float]:
    dist = [math.inf] * g.n
    queue = deque()
    for s in sources:
        if dist[s] != 0:
            dist[s] = 0
            queue.append(s)
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if dist[w] == math.inf:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def min_degree_subgraph(g: Graph, x: Fraction | int | float) -> Graph:
    """Peel vertices of degree ≤ x (lowest index first) until none remain.

    Returns a nonempty subgraph H with e(H) ≥ x|H| and δ(H) ≥ ⌊x⌋ + 1.
    """
    x = Fraction(x)
    if x < 0:
        raise GraphError("x must be non-negative")
    if g.n == 0 or g.m < x * g.n:
        raise GraphError(f"insufficient density: e(G)={g.m} < x|G|={x * g.n}")
    if g.m == 0:  # x = 0: no subgraph has δ ≥ 1
        raise GraphError("insufficient density: e(G)=0 admits no subgraph with δ ≥ 1")
    alive = set(range(g.n))
    deg = g.degrees()
    # each peel removes deg ≤ x edges and one vertex, so e ≥ x|H| survives
    while True:
        low = [v for v in sorted(alive) if deg[v] <= x]
        if not low:
            break
        dmin = min(deg[v] for v in low)
        v = next(u for u in low if deg[u] == dmin)
        alive.discard(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
    h = g.subgraph(alive)
    if h.n == 0:
        raise GraphError("peeling emptied the graph")
    return h


def densest_component(g: Graph) -> Graph:
    if g.n == 0:
        raise GraphError("empty graph has no components")
    best = None
    best_ratio = None
    for comp in g.components():
        cs = set(comp)
        e = sum(1 for u, v in g.edges if u in cs)
        ratio = Fraction(e, len(comp))
        if best_ratio is None or ratio > best_ratio:
            best, best_ratio = comp, ratio
    return g.subgraph(best)


@dataclass(frozen=True)
class OddCycle:
    """Odd closed walk witnessing non-bipartiteness (first vertex repeated at the end)."""
    walk: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.walk) - 1


def bipartition(g: Graph) -> tuple[list[int], list[int]] | OddCycle:
    color = [-1] * g.n
    parent = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in sorted(g.neighbors(u)):
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    return OddCycle(_odd_walk(parent, u, w))
    return ([v for v in range(g.n) if color[v] == 0],
            [v for v in range(g.n) if color[v] == 1])


def _odd_walk(parent: list[int], u: int, w: int) -> tuple[int, ...]:
    pu = [u]
    while parent[pu[-1]] != -1:
        pu.append(parent[pu[-1]])
    pw = [w]
    while parent[pw[-1]] != -1:
        pw.append(parent[pw[-1]])
    in_pu = {v: i for i, v in enumerate(pu)}
    j = 0
    while pw[j] not in in_pu:
        j += 1
    i = in_pu[pw[j]]
    cycle = pu[: i + 1] + list(reversed(pw[:j]))
    return tuple(cycle + [u])


def is_bipartite_with(g: Graph, part_x: Iterable[int], part_y: Iterable[int]) -> bool:
    xs, ys = set(part_x), set(part_y)
    if xs & ys or (xs | ys) != set(range(g.n)):
        return False
    return all((u in xs) != (v in xs) for u, v in g.edges)


def ceil_half(k: int) -> int:
    return -((-k) // 2)


def floor_half_plus(k: int) -> int:
    """⌊(k+1)/2⌋, which always equals ⌈k/2⌉."""
    return (k + 1) // 2


# ---------------------------------------------------------------------------
# embeddings

@dataclass
class EmbeddingReport:
    valid: bool
    total: bool
    missing: list[int] = field(default_factory=list)
    collisions: list[tuple[int, int]] = field(default_factory=list)
    non_edges: list[tuple[int, int]] = field(default_factory=list)
    out_of_range: list[int] = field(default_factory=list)

    @property
    def injective(self) -> bool:
        return not self.collisions

    @property
    def edge_preserving(self) -> bool:
        return not self.non_edges


def validate_embedding(t: Tree, g: Graph, f: Mapping[int, int],
                       require_total: bool = True) -> EmbeddingReport:
    """Check injectivity, edge preservation and totality of ``f: V(T) → V(G)``."""
    out = sorted(v for v, img in f.items() if not (0 <= img < g.n) or not (0 <= v < t.order))
    first: dict[int, int] = {}
    collisions = []
    for v in sorted(f):
        img = f[v]
        if img in first:
            collisions.append((first[img], v))
        else:
            first[img] = v
    non_edges = []
    for a, b in t.graph.edges:
        if a in f and b in f and 0 <= f[a] < g.n and 0 <= f[b] < g.n:
            if not g.has_edge(f[a], f[b]):
                non_edges.append((a, b))
    missing = [v for v in range(t.order) if v not in f]
    total = not missing
    valid = not collisions and not non_edges and not out and (total or not require_total)
    return EmbeddingReport(valid, total, missing, collisions, non_edges, out)
