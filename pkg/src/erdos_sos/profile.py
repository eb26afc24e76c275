"""Named thresholds and the constant table shared by the embedders and detectors."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from typing import Any, Mapping

from .graph import GraphError


def frac(x: Any) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**9)
    return Fraction(x)


def frac_sqrt(x: Fraction) -> Fraction:
    return Fraction(math.sqrt(x)).limit_denominator(10**9)


_REAL_FIELDS = ("epsilon", "alpha", "gamma", "q", "p", "eta", "join_slack", "attach_floor",
                "cut_floor")


@dataclass(frozen=True)
class ParamProfile:
    """Thresholds for one run. Callers choose values; no hierarchy is encoded.

    ``constants`` overrides entries of the extremal constant table (see
    :func:`extremal_constants`); anything not overridden falls back to the
    closed forms in terms of ``epsilon`` and the tree's maximum degree.
    """

    epsilon: Fraction = Fraction(1, 100)
    alpha: Fraction = Fraction(1, 10)
    gamma: Fraction = Fraction(1, 100)
    q: Fraction = Fraction(1, 10)
    p: Fraction = Fraction(1, 1000)
    eta: Fraction = Fraction(1, 8)
    C: Fraction = Fraction(10)
    join_slack: Fraction = Fraction(1, 4)
    attach_floor: Fraction = Fraction(1, 4)
    cut_floor: Fraction = Fraction(1, 4)
    max_exact_kappa: int = 20
    max_exact_regularity: int = 12
    max_parts: int = 64
    max_iters: int = 10
    sample_count: int = 2000
    search_rounds: int = 64
    resample_cap: int = 1000
    constants: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        for name in _REAL_FIELDS:
            v = frac(getattr(self, name))
            object.__setattr__(self, name, v)
            if not (0 < v <= 1):
                raise GraphError(f"profile threshold {name}={v} must lie in (0, 1]")
        c = frac(self.C)
        object.__setattr__(self, "C", c)
        if c < 1:
            raise GraphError("profile C must be at least 1")
        for name in ("max_exact_kappa", "max_exact_regularity", "max_parts", "max_iters",
                     "sample_count", "search_rounds", "resample_cap"):
            if int(getattr(self, name)) <= 0:
                raise GraphError(f"profile cap {name} must be positive")
        object.__setattr__(self, "constants", {k: frac(v) for k, v in dict(self.constants).items()})

    def with_constants(self, **overrides) -> "ParamProfile":
        merged = dict(self.constants)
        merged.update({k.replace("__", "."): frac(v) for k, v in overrides.items()})
        return replace(self, constants=merged)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, Fraction):
                out[f.name] = str(v)
            elif f.name == "constants":
                out[f.name] = {k: str(x) for k, x in sorted(v.items())}
            else:
                out[f.name] = v
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ParamProfile":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise GraphError(f"unknown profile fields: {sorted(unknown)}")
        kwargs = {}
        for k, v in data.items():
            if k == "constants":
                kwargs[k] = {name: Fraction(str(x)) for name, x in v.items()}
            elif k in _REAL_FIELDS or k == "C":
                kwargs[k] = Fraction(str(v))
            else:
                kwargs[k] = int(v)
        return cls(**kwargs)

    @classmethod
    def load(cls, path) -> "ParamProfile":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def extremal_constants(profile: ParamProfile, max_degree: int) -> dict[str, Fraction]:
    """Coefficient table for the extremal embedders; every entry multiplies k
    (or |Y| where noted in the embedder). Profile overrides win."""
    eps = profile.epsilon
    d = Fraction(max(max_degree, 1))
    root = frac_sqrt(eps)
    table = {
        # almost-complete case
        "nb.k_order": eps,
        "nb.k_degree": eps,
        "nb.g_order": 256 * d**2 * root,
        "nb.g_degree": 128 * d**2 * root,
        "nb.split_alpha": 4 * d * eps,
        "nb.attach": 64 * d**2 * root,
        # almost-complete bipartite case
        "bip.x_order": eps,
        "bip.y_order": Fraction(6),
        "bip.x_degree": eps,
        "bip.y_degree": eps,
        "bip.yprime": 160 * d**3 * eps,
        "bip.xprime_degree": 90 * d**3 * eps,
        "bip.xprime_cap": eps,
        "bip.split_alpha": 4 * d * eps,
        # completion engine
        "l43.s_max": 32 * eps * d**2,
        "l43.xk_order": 3 * eps,
        "l43.xk_ydeg": 90 * d**3 * eps,
        "l43.yk_xdeg": 160 * d**3 * eps,
        "l43.xsmall": eps,
        "l43.ybig": Fraction(4),
        "l43.xbig_deficit": 20 * d * eps,
    }
    table.update(profile.constants)
    return table


def paper_regime(eps: Fraction, k: int, max_degree: int, lower: int = 1) -> bool:
    """Whether ``lower/k ≤ ε ≤ Δ^-7/1000`` (the range the extremal theorems assume)."""
    return Fraction(lower, max(k, 1)) <= eps <= Fraction(1, 1000 * max(max_degree, 1) ** 7)


DESK_PROFILE = ParamProfile(
    epsilon=Fraction(1, 15),
    alpha=Fraction(1, 10),
    constants={
        "nb.k_order": Fraction(1, 10),
        "nb.k_degree": Fraction(1, 10),
        "nb.g_order": Fraction(1, 5),
        "nb.g_degree": Fraction(1, 3),
        "nb.split_alpha": Fraction(1, 20),
        "nb.attach": Fraction(1, 2),
        "bip.x_order": Fraction(1, 10),
        "bip.y_order": Fraction(6),
        "bip.x_degree": Fraction(1, 10),
        "bip.y_degree": Fraction(1, 5),
        "bip.yprime": Fraction(1, 5),
        "bip.xprime_degree": Fraction(1, 3),
        "bip.xprime_cap": Fraction(1, 10),
        "bip.split_alpha": Fraction(1, 20),
        "l43.s_max": Fraction(1, 2),
        "l43.xk_order": Fraction(3, 10),
        "l43.xk_ydeg": Fraction(1, 3),
        "l43.yk_xdeg": Fraction(1, 5),
        "l43.xsmall": Fraction(1, 10),
        "l43.ybig": Fraction(4),
        "l43.xbig_deficit": Fraction(1, 5),
    },
)
