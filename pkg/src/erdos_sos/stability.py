"""Structure detectors: a dense core of order about k, or a near-complete
bipartite core with a small side of about k/2."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .graph import Graph, GraphError
from .profile import frac


@dataclass(frozen=True)
class Bound:
    name: str
    value: Fraction
    bound: Fraction
    relation: str  # ">=" or "<="

    @property
    def ok(self) -> bool:
        return self.value >= self.bound if self.relation == ">=" else self.value <= self.bound


@dataclass
class StabilityStructure:
    variant: str  # "dense_core" or "bipartite_core"
    k: int
    alpha: Fraction
    H: tuple[int, ...] = ()
    X: tuple[int, ...] = ()
    Y: tuple[int, ...] = ()
    y_floor: int = 0
    bounds: list[Bound] = field(default_factory=list)
    rounds: int = 0

    def recompute(self, g: Graph) -> list[Bound]:
        """The variant's bounds evaluated from scratch on ``g``."""
        a, k = self.alpha, self.k
        if self.variant == "dense_core":
            h = set(self.H)
            dmin = min((len(g.neighbors(v) & h) for v in h), default=0)
            return [Bound("|H|", Fraction(len(h)), (1 + a) * k, "<="),
                    Bound("δ(H)", Fraction(dmin), (1 - a) * k, ">=")]
        xs, ys = set(self.X), set(self.Y)
        dx = min((len(g.neighbors(x) & ys) for x in xs), default=0)
        dy = min((len(g.neighbors(y) & xs) for y in ys), default=0)
        return [Bound("|X'|", Fraction(len(xs)), (1 + a) * k / 2, "<="),
                Bound("|Y'|", Fraction(len(ys)), Fraction(self.y_floor), ">="),
                Bound("δ(X')", Fraction(dx), (1 - a) * len(ys), ">="),
                Bound("δ(Y')", Fraction(dy), (1 - a) * k / 2, ">=")]

    def verify(self, g: Graph) -> bool:
        fresh = self.recompute(g)
        return fresh == self.bounds and all(b.ok for b in fresh) and bool(self.H or (self.X and self.Y))

    def to_dict(self) -> dict:
        return {"variant": self.variant, "k": self.k, "alpha": str(self.alpha), "H": list(self.H),
                "X": list(self.X), "Y": list(self.Y), "y_floor": self.y_floor, "rounds": self.rounds,
                "bounds": [{"name": b.name, "value": str(b.value), "bound": str(b.bound),
                            "relation": b.relation, "ok": b.ok} for b in self.bounds]}


def _check_alpha(k: int, alpha) -> Fraction:
    alpha = frac(alpha)
    if k < 1 or not (0 < alpha < 1):
        raise GraphError(f"need k ≥ 1 and alpha in (0, 1), got k={k}, alpha={alpha}")
    return alpha


def peel(g: Graph, floor, vertices: Iterable[int] | None = None, highest_first: bool = False) -> set[int]:
    """Repeatedly delete vertices of degree < floor (lowest index first unless
    ``highest_first``; the result does not depend on the order)."""
    alive = set(range(g.n)) if vertices is None else set(vertices)
    deg = {v: len(g.neighbors(v) & alive) for v in alive}
    while True:
        low = [v for v in sorted(alive, reverse=highest_first) if deg[v] < floor]
        if not low:
            return alive
        v = low[0]
        alive.discard(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1


def detect_dense_core(g: Graph, k: int, alpha) -> StabilityStructure | None:
    """Peel each component below (1-α)k and report the first residue component
    (by lowest vertex) with at most (1+α)k vertices."""
    alpha = _check_alpha(k, alpha)
    floor = (1 - alpha) * k
    for comp in g.components():
        alive = peel(g, floor, comp)
        if not alive:
            continue
        residue = sorted(alive)
        for part in g.subgraph(residue).components():
            h = [residue[i] for i in part]
            if len(h) > (1 + alpha) * k:
                continue
            out = StabilityStructure("dense_core", k, alpha, H=tuple(h))
            out.bounds = out.recompute(g)
            assert all(b.ok for b in out.bounds)
            return out
    return None


def bipartite_filter(g: Graph, part_x, part_y, k: int, alpha, x_first: bool = True,
                     max_rounds: int | None = None) -> tuple[set[int], set[int], int]:
    """Alternate the X-filter (keep x with |N(x) ∩ Y'| ≥ (1-α)|Y|) and the
    Y-filter (keep y with |N(y) ∩ X'| ≥ (1-α)k/2) until neither removes a
    vertex.

    The X-threshold uses the input side |Y|, not the current |Y'|: that keeps
    both filters monotone, so the fixed point is the greatest one and does not
    depend on the order; it still implies δ(X') ≥ (1-α)|Y'|.
    """
    alpha = frac(alpha)
    xs, ys = set(part_x), set(part_y)
    x_floor = (1 - alpha) * len(ys)
    cap = g.n + 1 if max_rounds is None else max_rounds

    def fx(xs, ys):
        return {x for x in xs if len(g.neighbors(x) & ys) >= x_floor}

    def fy(xs, ys):
        return {y for y in ys if len(g.neighbors(y) & xs) >= (1 - alpha) * k / 2}

    rounds = 0
    while rounds < cap:
        rounds += 1
        if x_first:
            nx = fx(xs, ys)
            ny = fy(nx, ys)
        else:
            ny = fy(xs, ys)
            nx = fx(xs, ny)
        if nx == xs and ny == ys:
            break
        xs, ys = nx, ny
    return xs, ys, rounds


def detect_bipartite_core(g: Graph, part_x, part_y, k: int, alpha, y_floor: int) -> StabilityStructure | None:
    alpha = _check_alpha(k, alpha)
    xs, ys = set(part_x), set(part_y)
    if xs & ys:
        raise GraphError("parts overlap")
    for u, v in g.edges:
        if (u in xs) == (v in xs) or (u in ys) == (v in ys):
            raise GraphError(f"edge ({u}, {v}) does not cross the bipartition")
    fx, fy, rounds = bipartite_filter(g, xs, ys, k, alpha)
    if not fx or not fy:
        return None
    out = StabilityStructure("bipartite_core", k, alpha, X=tuple(sorted(fx)), Y=tuple(sorted(fy)),
                             y_floor=y_floor, rounds=rounds)
    out.bounds = out.recompute(g)
    return out if all(b.ok for b in out.bounds) else None
