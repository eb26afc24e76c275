"""Command-line driver: every subcommand emits a JSON certificate.

Exit status: 0 ok, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .certificates import make_certificate, write_certificate
from .constructions import ConstructionSpec
from .cutdensity import cut_dense_decomposition, kappa_exact, sparse_cut_search
from .embedders import (EmbeddingStageError, ExtremalWitness, HypothesisError, embed_bipartite_extremal,
                        embed_nonbipartite_extremal, greedy_embed)
from .graph import Graph, GraphError, bipartition, parse_graph, parse_tree, serialize_graph
from .matchings import fractional_matching, konig_cover, stars_or_matching
from .oracles import contains_tree_bruteforce, erdos_sos_sample, fractional_matching_bruteforce
from .profile import DESK_PROFILE, ParamProfile
from .regularity import pair_density, regularity_refine
from .stability import detect_bipartite_core, detect_dense_core
from .treetools import divide_tree, leaves_or_bare_paths, split_tree_by_edge

OK, FAILED, USAGE = 0, 1, 2


class VerificationFailure(Exception):
    """Carries a certificate for a run that completed but did not verify."""

    def __init__(self, cert: dict):
        super().__init__("verification failure")
        self.cert = cert


def _read_graph(path: str) -> Graph:
    return parse_graph(sys.stdin.read() if path == "-" else Path(path).read_text())


def _read_tree(path: str):
    return parse_tree(Path(path).read_text())


def _profile(args) -> ParamProfile:
    return ParamProfile.load(args.profile) if args.profile else ParamProfile()


def _int_list(text: str | None) -> list[int] | None:
    if text is None:
        return None
    return [int(tok) for tok in text.replace(",", " ").split()]


def _sides(g: Graph, x_arg: str | None) -> tuple[list[int], list[int]]:
    """Bipartition sides: --x lists one side explicitly, otherwise 2-colour G."""
    if x_arg is not None:
        xs = sorted(set(_int_list(x_arg)))
        return xs, [v for v in range(g.n) if v not in set(xs)]
    res = bipartition(g)
    if not isinstance(res, tuple):
        raise GraphError(f"graph is not bipartite (odd closed walk {list(res.walk)})")
    return sorted(res[0]), sorted(res[1])


def _emit(args, cert: dict) -> None:
    text = write_certificate(cert, getattr(args, "output", None))
    if getattr(args, "output", None) in (None, "-"):
        sys.stdout.write(text)


def _cert(args, payload, inputs=None, profile=None) -> dict:
    return make_certificate(args.command, payload, inputs=inputs,
                            profile=profile.to_dict() if profile is not None else None, seed=args.seed)


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> int:
    spec = ConstructionSpec(args.kind, n=args.n, d=args.d, k=args.k,
                            eps=Fraction(args.eps) if args.eps is not None else None,
                            max_degree=args.max_degree, y_size=args.y_size,
                            p=Fraction(args.p) if args.p is not None else None, seed=args.seed)
    built = spec.build()
    extra = {}
    if isinstance(built, tuple):  # near-extremal bipartite: (graph, X, Y)
        built, xs, ys = built
        extra = {"X": xs, "Y": ys}
    is_tree = hasattr(built, "graph")
    g = built.graph if is_tree else built
    text = serialize_graph(g, tree=is_tree)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)
    if args.cert:
        payload = {"kind": args.kind, "n": g.n, "m": g.m, "edges": [list(e) for e in g.edges], **extra}
        write_certificate(_cert(args, payload), args.cert)
    return OK


def cmd_kappa(args) -> int:
    g = _read_graph(args.graph)
    profile = _profile(args)
    exact = args.mode == "exact" or (args.mode == "auto" and g.n <= profile.max_exact_kappa)
    rep = kappa_exact(g, profile.max_exact_kappa) if exact else \
        sparse_cut_search(g, profile.search_rounds, args.seed)
    payload = {"kappa": rep.kappa, "exact": rep.exact, "side_a": list(rep.side_a),
               "side_b": list(rep.side_b), "crossing": rep.crossing}
    _emit(args, _cert(args, payload, {"graph": list(g.edges)}, profile))
    return OK


def cmd_decompose(args) -> int:
    g = _read_graph(args.graph)
    profile = _profile(args)
    dec = cut_dense_decomposition(g, Fraction(args.q), profile, args.seed)
    comps = [{"vertices": list(c.origin) if c.origin else list(range(c.n)), "edges": c.m} for c in dec.components]
    payload = {"q": Fraction(args.q), "components": comps, "deleted_edges": [list(e) for e in dec.deleted_edges],
               "deleted": len(dec.deleted_edges), "bound": dec.info["bound"], "heuristic": dec.heuristic}
    _emit(args, _cert(args, payload, {"graph": list(g.edges)}, profile))
    return OK


def cmd_regularity(args) -> int:
    g = _read_graph(args.graph)
    profile = _profile(args)
    res = regularity_refine(g, Fraction(args.eps), Fraction(args.eta), max_parts=args.max_parts,
                            max_iters=args.max_iters, profile=profile, seed=args.seed)
    part = res.partition
    h = res.graph or g
    dens = [[pair_density(h, a, b) if a != b else Fraction(0) for b in part.parts] for a in part.parts]
    payload = {"resolved": res.resolved, "rounds": res.rounds, "parts": [list(p) for p in part.parts],
               "exceptional": list(part.exceptional), "irregular": sorted(list(p) for p in part.irregular),
               "densities": dens, "energies": res.energies,
               "witnesses": {f"{a},{b}": [list(w[0]), list(w[1])] for (a, b), w in sorted(res.witnesses.items())},
               "edge_loss": res.edge_loss, "edge_loss_bound": res.edge_loss_bound, "sampled": res.sampled}
    _emit(args, _cert(args, payload, {"graph": list(g.edges)}, profile))
    return OK


def cmd_matchings(args) -> int:
    g = _read_graph(args.graph)
    if args.mode == "fractional":
        fm, fc = fractional_matching(g)
        payload = {"nu_f": fm.total, "tau_f": fc.total,
                   "matching": [[u, v, w] for (u, v), w in sorted(fm.weights.items())],
                   "cover": [[v, w] for v, w in sorted(fc.weights.items())]}
    elif args.mode == "konig":
        xs, ys = _sides(g, args.x)
        matching, cover = konig_cover(g, xs, ys)
        payload = {"X": xs, "Y": ys, "matching": [list(e) for e in matching], "cover": sorted(cover),
                   "size": len(matching)}
    else:
        if args.d is None or args.max_degree is None:
            raise GraphError("--mode stars needs --d and --max-degree")
        out = stars_or_matching(g, args.d, args.max_degree)
        if isinstance(out, list):
            payload = {"variant": "matching", "matching": [list(e) for e in out]}
        else:
            payload = {"variant": "stars", "stars": [[c, list(ls)] for c, ls in out.stars]}
    _emit(args, _cert(args, payload, {"graph": list(g.edges)}))
    return OK


def cmd_treeops(args) -> int:
    t = _read_tree(args.tree)
    if args.op == "divide":
        if args.m is None:
            raise GraphError("--op divide needs --m")
        sp = divide_tree(t, args.m)
        payload = {"S": sorted(sp.side_S), "R": sorted(sp.side_R), "shared": sp.split_vertex}
    elif args.op == "split":
        sp = split_tree_by_edge(t, Fraction(args.alpha))
        payload = {"edge": list(sp.split_edge), "T_y": sorted(sp.side_S), "rest": sorted(sp.side_R)}
    else:
        pol = leaves_or_bare_paths(t, args.t_len)
        payload = {"variant": pol.variant, "bare_paths": [list(p) for p in pol.bare_paths],
                   "leaf_matching": [list(e) for e in pol.leaf_matching], "leaf_count": pol.leaf_count,
                   "verified": pol.verify(t)}
    _emit(args, _cert(args, payload, {"tree": list(t.graph.edges)}))
    return OK


def _witness(args) -> ExtremalWitness:
    if args.witness is None:
        raise GraphError("extremal modes need --witness file.json")
    data = json.loads(Path(args.witness).read_text())
    if "K" in data:
        return ExtremalWitness("almost_complete", K=tuple(sorted(data["K"])))
    return ExtremalWitness("almost_complete_bipartite", X=tuple(sorted(data["X"])), Y=tuple(sorted(data["Y"])))


def cmd_embed(args) -> int:
    g, t = _read_graph(args.graph), _read_tree(args.tree)
    profile = ParamProfile.load(args.profile) if args.profile else DESK_PROFILE
    inputs = {"graph": list(g.edges), "tree": list(t.graph.edges)}
    try:
        if args.mode == "greedy":
            trace = greedy_embed(g, t, args.root)
        else:
            w = _witness(args)
            inputs["witness"] = {"K": w.K, "X": w.X, "Y": w.Y}
            fn = embed_nonbipartite_extremal if args.mode == "nonbipartite" else embed_bipartite_extremal
            trace = fn(g, w, t, profile)
    except HypothesisError as exc:
        raise VerificationFailure(_cert(args, {"status": "hypothesis-failed", "bound": exc.bound,
                                               "detail": exc.detail}, inputs, profile))
    except EmbeddingStageError as exc:
        payload = {"status": "stage-failed", "stage": exc.stage, "detail": exc.detail,
                   "partial": exc.trace.to_dict() if exc.trace else None}
        raise VerificationFailure(_cert(args, payload, inputs, profile))
    ok = trace.verify(t, g)
    cert = _cert(args, {"status": "embedded" if ok else "invalid", "trace": trace.to_dict()}, inputs, profile)
    if not ok:
        raise VerificationFailure(cert)
    _emit(args, cert)
    return OK


def cmd_detect(args) -> int:
    g = _read_graph(args.graph)
    alpha = Fraction(args.alpha)
    if args.mode == "dense":
        found = detect_dense_core(g, args.k, alpha)
    else:
        xs, ys = _sides(g, args.x)
        found = detect_bipartite_core(g, xs, ys, args.k, alpha, args.y_floor)
    payload = {"found": found is not None, "structure": found.to_dict() if found else None}
    _emit(args, _cert(args, payload, {"graph": list(g.edges)}))
    return OK


def cmd_oracle(args) -> int:
    if args.mode == "erdos-sos":
        if args.n is None or args.d is None:
            raise GraphError("--mode erdos-sos needs --n and --d")
        rep = erdos_sos_sample(args.n, args.d, args.trials, args.seed)
        payload = {"n": rep.n, "d": rep.d, "trials": rep.trials, "contained": rep.contained,
                   "indeterminate": rep.indeterminate, "violations": rep.violations}
        cert = _cert(args, payload)
        if rep.violations:
            raise VerificationFailure(cert)
        _emit(args, cert)
        return OK
    if args.graph is None:
        raise GraphError(f"--mode {args.mode} needs -g")
    g = _read_graph(args.graph)
    if args.mode == "nu-f":
        payload = {"nu_f": fractional_matching_bruteforce(g)}
        _emit(args, _cert(args, payload, {"graph": list(g.edges)}))
        return OK
    if args.tree is None:
        raise GraphError("--mode contain needs -t")
    t = _read_tree(args.tree)
    res = contains_tree_bruteforce(g, t, args.budget)
    payload = {"contained": res.contained, "nodes_explored": res.nodes_explored,
               "witness": {str(k): v for k, v in sorted(res.witness.items())} if res.witness else None}
    _emit(args, _cert(args, payload, {"graph": list(g.edges), "tree": list(t.graph.edges)}))
    return OK


def cmd_verify_suite(args) -> int:
    from .battery import run_suite

    def report(res):
        print(res.line(), flush=True)

    results = run_suite(seed=args.seed, jobs=args.jobs, only=_int_list(args.only), report=report)
    bundle = {"tool_version": __version__, "seed": args.seed,
              "criteria": [r.certificate() for r in results]}
    if args.output not in (None, "-"):
        write_certificate(bundle, args.output)
    passed = all(r.passed for r in results)
    print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return OK if passed else FAILED


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--profile", help="ParamProfile JSON file")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    common.add_argument("-o", "--output", help="output path ('-' or omitted: stdout)")

    p = argparse.ArgumentParser(prog="erdos-sos", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    s = sub.add_parser("gen", parents=[common], help="generate a graph or tree edge list")
    s.add_argument("--kind", required=True, choices=["disjoint-cliques", "regular", "dominating",
                                                      "near-extremal-bipartite", "random-graph", "random-tree"])
    s.add_argument("--n", type=int)
    s.add_argument("--d", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--eps")
    s.add_argument("--p")
    s.add_argument("--max-degree", type=int)
    s.add_argument("--y-size", type=int)
    s.add_argument("--cert", help="also write a JSON certificate here")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("kappa", parents=[common], help="cut density κ with a witness cut")
    s.add_argument("-g", "--graph", required=True)
    s.add_argument("--mode", choices=["auto", "exact", "search"], default="auto")
    s.set_defaults(func=cmd_kappa)

    s = sub.add_parser("decompose", parents=[common], help="split into q-cut-dense components")
    s.add_argument("-g", "--graph", required=True)
    s.add_argument("--q", required=True)
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("regularity", parents=[common], help="(ε, η)-regular partition refinement")
    s.add_argument("-g", "--graph", required=True)
    s.add_argument("--eps", default="1/4")
    s.add_argument("--eta", default="1/8")
    s.add_argument("--max-parts", type=int, default=64)
    s.add_argument("--max-iters", type=int, default=10)
    s.set_defaults(func=cmd_regularity)

    s = sub.add_parser("matchings", parents=[common], help="fractional matchings, König covers, stars")
    s.add_argument("-g", "--graph", required=True)
    s.add_argument("--mode", choices=["fractional", "konig", "stars"], default="fractional")
    s.add_argument("--x", help="one side of the bipartition (comma list); default: 2-colouring")
    s.add_argument("--d", type=int)
    s.add_argument("--max-degree", type=int)
    s.set_defaults(func=cmd_matchings)

    s = sub.add_parser("treeops", parents=[common], help="tree splitting and bare paths")
    s.add_argument("-t", "--tree", required=True)
    s.add_argument("--op", choices=["divide", "split", "paths-or-leaves"], required=True)
    s.add_argument("--m", type=int)
    s.add_argument("--alpha", default="1/10")
    s.add_argument("--t-len", type=int, default=1)
    s.set_defaults(func=cmd_treeops)

    s = sub.add_parser("embed", parents=[common], help="embed a tree and emit the stage trace")
    s.add_argument("-g", "--graph", required=True)
    s.add_argument("-t", "--tree", required=True)
    s.add_argument("--mode", choices=["greedy", "nonbipartite", "bipartite"], required=True)
    s.add_argument("--root", type=int, default=0, help="image of the tree root (greedy)")
    s.add_argument("--witness", help='JSON with "K" or "X" and "Y"')
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("detect", parents=[common], help="dense or bipartite core detection")
    s.add_argument("-g", "--graph", required=True)
    s.add_argument("--mode", choices=["dense", "bipartite"], default="dense")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--alpha", default="1/10")
    s.add_argument("--x", help="X side (comma list); default: 2-colouring")
    s.add_argument("--y-floor", type=int, default=0)
    s.set_defaults(func=cmd_detect)

    s = sub.add_parser("oracle", parents=[common], help="brute-force oracles")
    s.add_argument("--mode", choices=["contain", "nu-f", "erdos-sos"], required=True)
    s.add_argument("-g", "--graph")
    s.add_argument("-t", "--tree")
    s.add_argument("--n", type=int)
    s.add_argument("--d", type=int)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--budget", type=int, default=10**7)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("verify-suite", parents=[common], help="run the acceptance battery")
    s.add_argument("--only", help="criteria to run, e.g. 1,3,5")
    s.set_defaults(func=cmd_verify_suite)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: 0 for --help/--version, 2 for usage
        return int(exc.code or 0)
    if args.jobs < 1:
        parser.print_usage(sys.stderr)
        print("erdos-sos: error: --jobs must be at least 1", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except VerificationFailure as exc:
        _emit(args, exc.cert)
        return FAILED
    except (GraphError, ValueError, ZeroDivisionError, OSError) as exc:
        print(f"erdos-sos {args.command}: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
