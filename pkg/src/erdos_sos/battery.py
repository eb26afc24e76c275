"""The acceptance battery: ten seeded property checks shared by the CLI's
``verify-suite`` and the test-suite.

Each criterion builds its instances from per-instance seeds
``[seed, criterion, index]``, runs the checks, and returns a result whose
certificate (instance records, no timings) is digested for the determinism
check.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable

import numpy as np

from .certificates import digest
from .constructions import (complete_graph, disjoint_cliques, disjoint_union, near_extremal_bipartite,
                            random_bipartite, random_graph, random_graph_m, random_tree, regular_graph,
                            star_tree)
from .cutdensity import (cut_dense_decomposition, cut_ratio, extension_delta, extension_kappa_bound,
                         kappa_exact, sparse_cut_search, union_kappa_bound)
from .embedders import (EmbeddingStageError, HypothesisError, embed_bipartite_extremal,
                        embed_nonbipartite_extremal, greedy_embed)
from .graph import Graph, GraphError
from .instances import (BIPARTITE_VARIANTS, NONBIPARTITE_VARIANTS, bipartite_instance, greedy_instance,
                        nonbipartite_instance)
from .matchings import fractional_matching, konig_cover, matching_from_fractional
from .oracles import (contains_tree_bruteforce, erdos_sos_sample, fractional_matching_bruteforce,
                      max_matching_bruteforce, min_cover_bruteforce)
from .profile import DESK_PROFILE
from .regularity import (RegularityPartition, is_regular_pair, pair_density, reduced_graph,
                         regularity_refine)
from .stability import bipartite_filter, detect_bipartite_core, detect_dense_core, peel
from .treetools import _collect, divide_tree, leaves_or_bare_paths, split_tree_by_edge


def _rng(seed: int, crit: int, i: int) -> np.random.Generator:
    return np.random.default_rng([seed, crit, i])


def _map(fn: Callable, args: list, jobs: int) -> list:
    """Apply ``fn`` to every argument, in order; processes when jobs > 1."""
    if jobs <= 1 or len(args) < 2:
        return [fn(a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, args, chunksize=max(1, len(args) // (4 * jobs))))


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    elapsed: float
    time_limit: float | None
    summary: dict
    failures: list = field(default_factory=list)
    records: list = field(default_factory=list)

    @property
    def digest(self) -> str:
        return digest({"number": self.number, "summary": self.summary, "failures": self.failures,
                       "records": self.records})

    def certificate(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "summary": self.summary, "failures": self.failures, "records": self.records,
                "digest": self.digest}

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        limit = f" / limit {self.time_limit:.0f}s" if self.time_limit else ""
        brief = ", ".join(f"{k}={v}" for k, v in self.summary.items() if not isinstance(v, (dict, list)))
        return f"criterion {self.number:2d} {verdict} [{self.title}] {self.elapsed:.1f}s{limit}: {brief}"


def _finish(number, title, start, limit, summary, failures, records, extra_ok=True) -> CriterionResult:
    elapsed = time.perf_counter() - start
    passed = not failures and extra_ok and (limit is None or elapsed < limit)
    return CriterionResult(number, title, passed, elapsed, limit, summary, failures[:20], records)


# ---------------------------------------------------------------------------
# 1. extremal constructions


def _c1_job(args):
    seed, n, d = args
    rng = _rng(seed, 1, n * 10 + d)
    out = {"n": n, "d": d, "clique_trees": 0, "clique_violations": 0, "regular": None, "indeterminate": 0}
    if n % d == 0:
        g = disjoint_cliques(n, d)
        for _ in range(200):
            r = contains_tree_bruteforce(g, random_tree(d, d, rng))
            out["clique_trees"] += 1
            out["clique_violations"] += bool(r.contained)
            out["indeterminate"] += r.contained is None
    if n >= d and (n * (d - 1)) % 2 == 0:
        g = regular_graph(n, d - 1, rng)
        r = contains_tree_bruteforce(g, star_tree(d))
        out["regular"] = r.contained
        out["indeterminate"] += r.contained is None
    return out


def criterion_1(seed: int = 0, jobs: int = 1) -> CriterionResult:
    start = time.perf_counter()
    args = [(seed, n, d) for d in range(2, 7) for n in range(1, 25)]
    recs = [r for r in _map(_c1_job, args, jobs) if r["clique_trees"] or r["regular"] is not None]
    failures = [r for r in recs if r["clique_violations"] or r["regular"] or r["indeterminate"]]
    summary = {"clique_checks": sum(r["clique_trees"] for r in recs),
               "regular_checks": sum(r["regular"] is not None for r in recs),
               "violations": len(failures)}
    return _finish(1, "extremal constructions", start, 60.0, summary, failures, recs)


# ---------------------------------------------------------------------------
# 2. Erdős–Sós sampling


def _c2_job(args):
    seed, n, d = args
    rep = erdos_sos_sample(n, d, 500, [seed, 2, n, d])
    return {"n": n, "d": d, "trials": rep.trials, "contained": rep.contained,
            "violations": len(rep.violations), "indeterminate": rep.indeterminate,
            "edge_counts": [r["m"] for r in rep.records]}


def criterion_2(seed: int = 0, jobs: int = 1) -> CriterionResult:
    start = time.perf_counter()
    recs = _map(_c2_job, [(seed, 10, 3), (seed, 12, 4), (seed, 14, 5)], jobs)
    failures = [{"n": r["n"], "d": r["d"], "violations": r["violations"],
                 "indeterminate": r["indeterminate"]} for r in recs
                if r["violations"] or r["indeterminate"] > r["trials"] / 100]
    summary = {"trials": sum(r["trials"] for r in recs),
               "violations": sum(r["violations"] for r in recs),
               "indeterminate": sum(r["indeterminate"] for r in recs)}
    return _finish(2, "Erdős–Sós sampling", start, 300.0, summary, failures, recs)


# ---------------------------------------------------------------------------
# 3. cut density


def _c3_kappa_job(args):
    seed, i = args
    rng = _rng(seed, 3, i)
    n = int(rng.integers(2, 19))
    g = random_graph(n, rng.uniform(0.15, 0.95), rng)
    ex = kappa_exact(g)
    heur = sparse_cut_search(g, 64, rng)
    errs = []
    if cut_ratio(g, ex.side_a) != ex.kappa:
        errs.append("exact witness ratio differs from κ")
    if cut_ratio(g, heur.side_a) != heur.kappa:
        errs.append("heuristic witness ratio differs from its report")
    if heur.kappa < ex.kappa:
        errs.append("heuristic below exact κ")
    if g.min_degree() < ex.kappa * (n - 1):
        errs.append("δ(G) < κ(n-1)")
    if g.m < ex.kappa * n * n / 4:
        errs.append("e(G) < κn²/4")
    return {"i": i, "n": n, "m": g.m, "kappa": ex.kappa, "search": heur.kappa,
            "agree": heur.kappa == ex.kappa, "errors": errs}


def _c3_decomp_job(args):
    seed, i = args
    rng = _rng(seed, 3, 1000 + i)
    n = int(rng.integers(1, 19))
    g = random_graph(n, rng.uniform(0.1, 0.9), rng)
    q = Fraction(int(rng.integers(1, 10)), 20)
    dec = cut_dense_decomposition(g, q, seed=rng)
    errs = []
    kept = set()
    for comp in dec.components:
        kept |= {tuple(sorted((comp.origin[u], comp.origin[v]))) for u, v in comp.edges}
        if comp.n >= 2 and kappa_exact(comp).kappa < q:
            errs.append(f"component of order {comp.n} is not {q}-cut-dense")
    deleted = set(map(tuple, dec.deleted_edges))
    if kept & deleted or kept | deleted != set(g.edges):
        errs.append("components and deletions do not partition E(G)")
    if len(deleted) > q * n * n:
        errs.append(f"{len(deleted)} deletions exceed qn² = {q * n * n}")
    if dec.heuristic:
        errs.append("decomposition fell back to the heuristic")
    return {"i": i, "n": n, "q": q, "deleted": len(deleted), "components": dec.t, "errors": errs}


def criterion_3(seed: int = 0, jobs: int = 1) -> CriterionResult:
    start = time.perf_counter()
    krecs = _map(_c3_kappa_job, [(seed, i) for i in range(500)], jobs)
    drecs = _map(_c3_decomp_job, [(seed, i) for i in range(200)], jobs)
    failures = [r for r in krecs + drecs if r["errors"]]
    summary = {"kappa_graphs": len(krecs), "search_agrees": sum(r["agree"] for r in krecs),
               "decompositions": len(drecs), "errors": len(failures)}
    return _finish(3, "cut density", start, None, summary, failures, krecs + drecs)


# ---------------------------------------------------------------------------
# 4. union and extension bounds


def _connected_random(vertices: list[int], rng, p_low=0.3) -> list[tuple[int, int]]:
    """Random connected graph on ``vertices`` (random spanning tree plus G(n, p) edges)."""
    vs = list(vertices)
    order = rng.permutation(len(vs)).tolist()
    edges = {tuple(sorted((vs[order[j]], vs[order[int(rng.integers(0, j))]]))) for j in range(1, len(vs))}
    p = rng.uniform(p_low, 1.0)
    edges |= {tuple(sorted((a, b))) for a, b in combinations(vs, 2) if rng.random() < p}
    return sorted(edges)


def _c4_job(args):
    seed, i = args
    rng = _rng(seed, 4, i)
    if i % 2 == 0:  # union of two overlapping cut-dense graphs
        n = int(rng.integers(3, 19))
        perm = rng.permutation(n).tolist()
        a = int(rng.integers(2, n))
        b = int(rng.integers(max(2, n - a + 1), n + 1))
        v1 = sorted(perm[:a])
        v2 = sorted(perm[n - b:])
        e1 = _connected_random(v1, rng)
        e2 = _connected_random(v2, rng)
        g1, g2 = Graph(n, e1).subgraph(v1), Graph(n, e2).subgraph(v2)
        q = min(kappa_exact(g1).kappa, kappa_exact(g2).kappa)
        union = Graph(n, sorted(set(e1) | set(e2)))
        got = kappa_exact(union).kappa
        bound = union_kappa_bound(q, v1, v2)
        return {"i": i, "kind": "union", "n": n, "overlap": len(set(v1) & set(v2)), "q": q,
                "kappa": got, "bound": bound, "ok": got >= bound}
    # extension of a cut-dense G by vertices with many neighbours in G
    g_order = int(rng.integers(2, 12))
    extra = int(rng.integers(1, 19 - g_order))
    n = g_order + extra
    ge = _connected_random(list(range(g_order)), rng)
    edges = set(ge)
    for v in range(g_order, n):
        size = int(rng.integers(1, g_order + 1))
        edges |= {(int(u), v) for u in rng.choice(g_order, size=size, replace=False)}
    edges |= {(a, b) for a, b in combinations(range(g_order, n), 2) if rng.random() < 0.3}
    h = Graph(n, sorted(edges))
    q = kappa_exact(Graph(g_order, ge)).kappa
    delta = extension_delta(h, range(g_order))
    got = kappa_exact(h).kappa
    bound = extension_kappa_bound(q, delta, g_order, n)
    return {"i": i, "kind": "extension", "n": n, "g_order": g_order, "q": q, "delta": delta,
            "kappa": got, "bound": bound, "ok": got >= bound}


def criterion_4(seed: int = 0, jobs: int = 1) -> CriterionResult:
    start = time.perf_counter()
    recs = _map(_c4_job, [(seed, i) for i in range(600)], jobs)
    failures = [r for r in recs if not r["ok"]]
    summary = {"unions": sum(r["kind"] == "union" for r in recs),
               "extensions": sum(r["kind"] == "extension" for r in recs),
               "violations": len(failures)}
    return _finish(4, "union/extension bounds", start, None, summary, failures, recs)


# ---------------------------------------------------------------------------
# 5. matchings


def _c5_nuf_job(args):
    seed, i = args
    rng = _rng(seed, 5, i)
    n = int(rng.integers(1, 11))
    m = int(rng.integers(0, min(12, math.comb(n, 2)) + 1))
    g = random_graph_m(n, m, rng)
    fm, fc = fractional_matching(g)
    brute = fractional_matching_bruteforce(g)
    ok = fm.total == brute and fc.total == brute and fm.is_valid(g) and fc.is_valid(g)
    return {"i": i, "n": n, "m": m, "nu_f": fm.total, "brute": brute, "ok": ok}


def _c5_reduced_job(args):
    seed, i = args
    rng = _rng(seed, 5, 2000 + i)
    parts_n = int(rng.integers(1, 9))
    size = int(rng.choice([2, 4]))
    eta = Fraction(1, 8)
    rg_edges = [e for e in combinations(range(parts_n), 2) if rng.random() < 0.4]
    n = parts_n * size
    perm = rng.permutation(n).tolist()
    parts = tuple(tuple(sorted(perm[j * size:(j + 1) * size])) for j in range(parts_n))
    edges = [(min(u, v), max(u, v)) for a, b in rg_edges for u in parts[a] for v in parts[b]]
    g = Graph(n, edges)
    part = RegularityPartition(parts, (), Fraction(1, 4), eta)
    red = reduced_graph(g, part, eta)
    fm, _ = fractional_matching(red.underlying())
    doubled, matching = matching_from_fractional(red, fm)
    used = [v for e in matching for v in e]
    ok = (len(matching) == 2 * fm.total and len(used) == len(set(used))
          and all(tuple(sorted(e)) in doubled.edges for e in matching))
    return {"i": i, "parts": parts_n, "part_size": size, "nu_f": fm.total, "matching": len(matching),
            "ok": ok}


def _c5_konig_job(args):
    seed, i = args
    rng = _rng(seed, 5, 4000 + i)
    a, b = int(rng.integers(1, 9)), int(rng.integers(1, 9))
    g = random_bipartite(a, b, rng.uniform(0.05, 0.8), rng)
    matching, cover = konig_cover(g, range(a), range(a, a + b))
    cs = set(cover)
    used = [v for e in matching for v in e]
    ok = (len(cover) == len(matching) and all(u in cs or v in cs for u, v in g.edges)
          and len(used) == len(set(used)) and all(g.has_edge(u, v) for u, v in matching))
    brute_m = max_matching_bruteforce(g)
    brute_c = min_cover_bruteforce(g)
    ok = ok and brute_m == len(matching) and brute_c == len(cover)
    return {"i": i, "a": a, "b": b, "matching": len(matching), "cover": len(cover),
            "brute_matching": brute_m, "brute_cover": brute_c, "ok": ok}


def criterion_5(seed: int = 0, jobs: int = 1) -> CriterionResult:
    start = time.perf_counter()
    nrecs = _map(_c5_nuf_job, [(seed, i) for i in range(1000)], jobs)
    rrecs = _map(_c5_reduced_job, [(seed, i) for i in range(200)], jobs)
    krecs = _map(_c5_konig_job, [(seed, i) for i in range(500)], jobs)
    recs = nrecs + rrecs + krecs
    failures = [r for r in recs if not r["ok"]]
    summary = {"nu_f_graphs": len(nrecs), "reduced_instances": len(rrecs), "konig_instances": len(krecs),
               "violations": len(failures)}
    return _finish(5, "matchings", start, None, summary, failures, recs)


# ---------------------------------------------------------------------------
# 6. tree toolkit


def _subtree_ok(t, vs: set[int]) -> bool:
    """The vertex set induces a connected subtree."""
    if not vs:
        return False
    start = min(vs)
    seen, stack = {start}, [start]
    while stack:
        u = stack.pop()
        for w in t.neighbors(u):
            if w in vs and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vs


def _c6_job(args):
    seed, i = args
    rng = _rng(seed, 6, i)
    errs = []
    # divide_tree on k ∈ [2, 300]
    k = int(rng.integers(2, 301))
    delta = int(rng.integers(2, 6))
    t = random_tree(k, delta, rng)
    m = int(rng.integers(1, t.order // 3 + 1))
    sp = divide_tree(t, m)
    s, r = set(sp.side_S), set(sp.side_R)
    es = {e for e in t.graph.edges if set(e) <= s}
    er = {e for e in t.graph.edges if set(e) <= r}
    if not (m <= len(s) <= 3 * m):
        errs.append(f"|S| = {len(s)} not in [{m}, {3 * m}]")
    if s & r != {sp.split_vertex} or es & er or es | er != set(t.graph.edges):
        errs.append("S and R do not split E(T) at one shared vertex")
    if not (_subtree_ok(t, s) and _subtree_ok(t, r)):
        errs.append("a piece is not a subtree")
    # split_tree_by_edge on k ∈ [100, 300], α ∈ [1/k, 1/(4Δ))
    k2 = int(rng.integers(100, 301))
    d2 = int(rng.integers(2, 6))
    t2 = random_tree(k2, d2, rng)
    dd = max(t2.max_degree, 1)
    lo, hi = Fraction(1, k2), Fraction(1, 4 * dd)
    alpha = lo + (hi - lo) * Fraction(int(rng.integers(0, 1000)), 1000)
    alpha = min(alpha, hi - Fraction(1, 10**6))
    es2 = split_tree_by_edge(t2, alpha)
    x, y = es2.split_edge
    side = _collect(t2, y, x)
    if side != set(es2.side_S) or not (alpha * k2 <= len(side) <= 3 * dd * alpha * k2):
        errs.append(f"|T_y| = {len(side)} outside [{alpha * k2}, {3 * dd * alpha * k2}]")
    # leaves or bare paths
    t_len = int(rng.integers(1, 11))
    pol = leaves_or_bare_paths(t2, t_len)
    need = Fraction(t2.order, 10 * t_len)
    count = pol.leaf_count if pol.variant == "leaf_matching" else len(pol.bare_paths)
    if not pol.verify(t2) or count < need:
        errs.append(f"{pol.variant} witness fails (count {count}, need {need})")
    return {"i": i, "k": k, "m": m, "S": len(s), "k_split": k2, "alpha": alpha, "T_y": len(side),
            "t_len": t_len, "variant": pol.variant, "count": count, "errors": errs}


def criterion_6(seed: int = 0, jobs: int = 1) -> CriterionResult:
    start = time.perf_counter()
    recs = _map(_c6_job, [(seed, i) for i in range(1000)], jobs)
    failures = [r for r in recs if r["errors"]]
    summary = {"trees": len(recs), "leaf_branch": sum(r["variant"] == "leaf_matching" for r in recs),
               "failures": len(failures)}
    return _finish(6, "tree toolkit", start, None, summary, failures, recs)


# ---------------------------------------------------------------------------
# 7. embedders


def _c7_greedy_job(args):
    seed, lo, hi = args
    bad = []
    for i in range(lo, hi):
        g, t, root = greedy_instance([seed, 7, i])
        try:
            tr = greedy_embed(g, t, root)
            if not tr.verify(t, g):
                bad.append({"i": i, "error": "trace does not re-verify"})
        except Exception as exc:  # any failure under the preconditions is a bug
            bad.append({"i": i, "error": f"{type(exc).__name__}: {exc}"})
    return {"range": [lo, hi], "failures": bad}


def _embed_outcome(kind: str, i: int, inst, fn) -> dict:
    rec = {"kind": kind, "i": i, "variant": inst.variant, "k": inst.tree.k}
    try:
        tr = fn(inst.graph, inst.witness, inst.tree, DESK_PROFILE)
    except EmbeddingStageError as exc:
        partial_ok = exc.trace is not None
        rec.update(outcome="stage-certificate", stage=exc.stage, detail=exc.detail, ok=partial_ok)
        return rec
    except HypothesisError as exc:
        rec.update(outcome="hypothesis-rejected", bound=exc.bound, detail=exc.detail, ok=False)
        return rec
    except Exception as exc:
        rec.update(outcome="error", detail=f"{type(exc).__name__}: {exc}", ok=False)
        return rec
    ok = tr.verify(inst.tree, inst.graph)
    rec.update(outcome="embedded", case=tr.case, stages=len(tr.stages), ok=ok)
    return rec


def _c7_extremal_job(args):
    seed, kind, i = args
    rng = _rng(seed, 7, 100000 * (kind == "bipartite") + i)
    k = int(rng.integers(24, 41))
    if kind == "nonbipartite":
        variant = NONBIPARTITE_VARIANTS[i % len(NONBIPARTITE_VARIANTS)]
        inst = nonbipartite_instance(k, variant, rng)
        return _embed_outcome(kind, i, inst, embed_nonbipartite_extremal)
    variant = BIPARTITE_VARIANTS[i % len(BIPARTITE_VARIANTS)]
    inst = bipartite_instance(k, variant, rng)
    return _embed_outcome(kind, i, inst, embed_bipartite_extremal)


def criterion_7(seed: int = 0, jobs: int = 1) -> CriterionResult:
    start = time.perf_counter()
    greedy = _map(_c7_greedy_job, [(seed, lo, lo + 500) for lo in range(0, 10000, 500)], jobs)
    gfail = [f for g in greedy for f in g["failures"]]
    recs = _map(_c7_extremal_job, [(seed, kind, i) for kind in ("nonbipartite", "bipartite")
                                   for i in range(500)], jobs)
    failures = gfail + [r for r in recs if not r["ok"]]
    cases: dict[str, int] = {}
    for r in recs:
        key = f"{r['kind']}:{r.get('case', r['outcome'])}"
        cases[key] = cases.get(key, 0) + 1
    summary = {"greedy": 10000, "greedy_failures": len(gfail),
               "nonbipartite": sum(r["kind"] == "nonbipartite" for r in recs),
               "bipartite": sum(r["kind"] == "bipartite" for r in recs),
               "embedded": sum(r["outcome"] == "embedded" for r in recs),
               "stage_certificates": sum(r["outcome"] == "stage-certificate" for r in recs),
               "cases": dict(sorted(cases.items()))}
    return _finish(7, "embedders", start, None, summary, failures, recs)


# ---------------------------------------------------------------------------
# 8. regularity


def _c8_job(args):
    seed, i = args
    rng = _rng(seed, 8, i)
    n = int(rng.integers(6, 61))
    g = random_graph(n, rng.uniform(0.1, 0.9), rng)
    eps = Fraction(1, int(rng.choice([3, 4, 5])))
    eta = Fraction(1, 8)
    res = regularity_refine(g, eps, eta, seed=rng)
    errs = []
    if any(b < a for a, b in zip(res.energies, res.energies[1:])):
        errs.append("energy decreased")
    if any(e > 1 for e in res.energies):
        errs.append("energy above 1")
    rec = {"i": i, "n": n, "eps": eps, "resolved": res.resolved, "rounds": res.rounds,
           "parts": len(res.partition.parts), "part_size": res.partition.part_size,
           "exceptional": len(res.partition.exceptional), "energies": res.energies}
    if res.resolved:
        gp = res.graph
        parts = res.partition.parts
        if g.m - gp.m > (2 * eps + eta) * n * n:
            errs.append("edge loss above (2ε+η)n²")
        if any(gp.has_edge(u, v) for p in parts for u, v in combinations(p, 2)):
            errs.append("a part is not independent in G'")
        if any(gp.degree(v) for v in res.partition.exceptional):
            errs.append("exceptional vertex keeps edges")
        sampled = 0
        for a, b in combinations(range(len(parts)), 2):
            chk = is_regular_pair(gp, parts[a], parts[b], eps, seed=[seed, 8, i, a, b])
            sampled += chk.sampled
            d = pair_density(gp, parts[a], parts[b])
            if not chk.regular or (0 < d < eta):
                errs.append(f"pair ({a}, {b}) fails in G'")
                break
        rec["sampled_pairs"] = sampled
        if n <= 18:
            kap = kappa_exact(g).kappa
            rec["kappa"] = kap
            if kap > eta:
                red = reduced_graph(g, res.partition, eta)
                rec["reduced_connected"] = red.underlying().is_connected()
                if not rec["reduced_connected"]:
                    errs.append("reduced graph disconnected although κ > η")
    rec["errors"] = errs
    return rec


def criterion_8(seed: int = 0, jobs: int = 1) -> CriterionResult:
    start = time.perf_counter()
    recs = _map(_c8_job, [(seed, i) for i in range(100)], jobs)
    failures = [r for r in recs if r["errors"]]
    summary = {"graphs": len(recs), "resolved": sum(r["resolved"] for r in recs),
               "unresolved": sum(not r["resolved"] for r in recs),
               "connectivity_checks": sum("reduced_connected" in r for r in recs),
               "failures": len(failures)}
    return _finish(8, "regularity", start, None, summary, failures, recs)


# ---------------------------------------------------------------------------
# 9. detectors


def _c9_job(args):
    seed, i = args
    rng = _rng(seed, 9, i)
    errs = []
    alpha = Fraction(int(rng.integers(1, 8)), 20)
    if i % 2 == 0:
        kind = ["random", "cliques", "clique+noise"][(i // 2) % 3]
        k = int(rng.integers(4, 25))
        if kind == "random":
            g = random_graph(int(rng.integers(2, 61)), rng.uniform(0.05, 0.95), rng)
        elif kind == "cliques":
            g = disjoint_cliques((k + 1) * int(rng.integers(1, 4)), k + 1)
            alpha = max(alpha, Fraction(1, k))  # |K_{k+1}| ≤ (1+α)k
        else:
            g = disjoint_union(complete_graph(k + int(rng.integers(-1, 4))),
                               random_graph(int(rng.integers(2, 40)), rng.uniform(0.02, 0.3), rng))
        found = detect_dense_core(g, k, alpha)
        floor = (1 - alpha) * k
        same = peel(g, floor) == peel(g, floor, highest_first=True)
        if found is not None and not found.verify(g):
            errs.append("dense core fails its bounds")
        if kind == "cliques" and found is None:
            errs.append("no clique found in disjoint cliques")
        if not same:
            errs.append("peeling depends on the order")
        return {"i": i, "kind": kind, "k": k, "alpha": alpha, "found": found is not None,
                "H": len(found.H) if found else 0, "errors": errs}
    kind = ["random", "near-extremal", "damaged"][(i // 2) % 3]
    k = 2 * int(rng.integers(2, 16))  # even, so ⌈(1-ε)k/2⌉ ≤ ⌊(1+ε)k/2⌋ at ε = 0
    if kind == "random":
        a, b = int(rng.integers(1, 20)), int(rng.integers(1, 80))
        g = random_bipartite(a, b, rng.uniform(0.3, 1.0), rng)
    else:
        b = 6 * k + int(rng.integers(0, 20))
        g, xs, ys = near_extremal_bipartite(k, Fraction(int(rng.integers(0, 6)), 100), b, rng)
        a = len(xs)
        if kind == "damaged":
            cut = [(x, a + j) for x in rng.choice(a, size=min(a, 3), replace=False).tolist()
                   for j in range(b) if rng.random() < 0.5]
            g = g.without_edges(cut)
    y_floor = int(rng.integers(0, b + 1))
    xs, ys = range(a), range(a, a + b)
    found = detect_bipartite_core(g, xs, ys, k, alpha, y_floor)
    r1 = bipartite_filter(g, xs, ys, k, alpha, x_first=True)[:2]
    r2 = bipartite_filter(g, xs, ys, k, alpha, x_first=False)[:2]
    if found is not None and not found.verify(g):
        errs.append("bipartite core fails its bounds")
    if r1 != r2:
        errs.append("filter fixed point depends on the order")
    return {"i": i, "kind": kind, "k": k, "alpha": alpha, "y_floor": y_floor, "found": found is not None,
            "X": len(found.X) if found else 0, "Y": len(found.Y) if found else 0, "errors": errs}


def criterion_9(seed: int = 0, jobs: int = 1) -> CriterionResult:
    start = time.perf_counter()
    recs = _map(_c9_job, [(seed, i) for i in range(1000)], jobs)
    failures = [r for r in recs if r["errors"]]
    summary = {"instances": len(recs), "found": sum(r["found"] for r in recs), "failures": len(failures)}
    return _finish(9, "detectors", start, None, summary, failures, recs)


# ---------------------------------------------------------------------------
# suite

CRITERIA: dict[int, Callable[..., CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9,
}


def criterion_10(seed: int = 0, jobs: int = 1, first: list[CriterionResult] | None = None) -> CriterionResult:
    """Re-run criteria 1-9 with the same seed and compare certificate digests."""
    start = time.perf_counter()
    first = first if first is not None else [CRITERIA[c](seed, jobs) for c in sorted(CRITERIA)]
    second = [CRITERIA[r.number](seed, jobs) for r in first]
    recs = [{"criterion": a.number, "first": a.digest, "second": b.digest} for a, b in zip(first, second)]
    failures = [r for r in recs if r["first"] != r["second"]]
    summary = {"criteria_rerun": len(recs), "mismatches": len(failures)}
    return _finish(10, "determinism", start, None, summary, failures, recs)


def run_suite(seed: int = 0, jobs: int = 1, only: list[int] | None = None,
              report: Callable[[CriterionResult], None] | None = None) -> list[CriterionResult]:
    wanted = sorted(set(only or range(1, 11)))
    bad = [c for c in wanted if not 1 <= c <= 10]
    if bad:
        raise GraphError(f"unknown criteria {bad}")
    results = []
    for c in wanted:
        if c == 10:
            prior = [r for r in results if r.number != 10]
            res = criterion_10(seed, jobs, prior if prior else None)
        else:
            res = CRITERIA[c](seed, jobs)
        results.append(res)
        if report:
            report(res)
    return results
