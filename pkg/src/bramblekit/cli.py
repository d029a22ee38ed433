"""``bramblekit`` command line.

Exit codes: 0 verified success, 1 certified negative, 2 input error,
3 cap or guard exceeded.
"""

from __future__ import annotations

import argparse
import sys

import mpmath

from bramblekit import documents as docs
from bramblekit import generators
from bramblekit.certificates import bramble_order_exact, build_path_system, congestion, verify_bramble
from bramblekit.congestion import build_reduced_instance, route_via_bramble
from bramblekit.ddp import DEFAULT_NODE_CAP, DdpInstance, Infeasible, dichotomy_check, load_of, solve_exact
from bramblekit.digraph import menger_paths_and_separator
from bramblekit.errors import BramblekitError, CapExceeded
from bramblekit.lll import build_intersection_graph, check_poly_lll_condition, degeneracy, rainbow_independent_set
from bramblekit.pipeline import build_conflict_graphs, classify_case, compute_parameters

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class _Outcome:
    def __init__(self, text: str, code: int = EXIT_OK, note: str = ""):
        self.text, self.code, self.note = text, code, note


def _certificate(args, kind: str, payload: dict, seed=None) -> docs.CertificateDocument:
    cert = docs.CertificateDocument(kind, payload, args.command, seed)
    verified = bool(docs.reverify(cert))
    return docs.CertificateDocument(kind, cert.payload, args.command, seed, cert.tool_version, verified)


def _emit(args, kind, payload, seed=None, negative=False) -> _Outcome:
    cert = _certificate(args, kind, payload, seed)
    if not cert.verified:
        raise AssertionError(f"emitted {kind} certificate failed re-verification")
    return _Outcome(docs.dumps(cert), EXIT_NEGATIVE if negative else EXIT_OK)


def _instance(args, bramble=False, terminals=False) -> docs.InstanceDocument:
    if not args.input:
        raise docs.DocumentError("--input is required")
    doc = docs.read(args.input, docs.InstanceDocument)
    if bramble and doc.bags is None:
        raise docs.DocumentError(f"{args.input}: field bramble: required by {args.command}")
    if terminals and not doc.has_terminals:
        raise docs.DocumentError(f"{args.input}: field terminals: required by {args.command}")
    return doc


def _read(args, cls):
    if not args.input:
        raise docs.DocumentError("--input is required")
    return docs.read(args.input, cls)


def cmd_verify_bramble(args):
    doc = _instance(args, bramble=True)
    D = doc.digraph()
    verdict = verify_bramble(D, doc.bags)
    payload = {"graph": docs.graph_payload(D), "bags": [list(b) for b in doc.bags], "congestion": congestion(doc.bags)}
    cert = _certificate(args, "bramble", payload)
    return _Outcome(docs.dumps(cert), EXIT_OK if verdict else EXIT_NEGATIVE, verdict.message)


def cmd_order(args):
    doc = _instance(args, bramble=True)
    cap = len(doc.bags) if args.cap is None else args.cap
    order, hitting = bramble_order_exact(doc.bags, cap)
    return _emit(args, "order", {"bags": [list(b) for b in doc.bags], "order": order, "hittingSet": hitting})


def cmd_build_path_system(args):
    doc = _instance(args)
    D = doc.digraph()
    S = build_path_system(D, _need(args.k, "--k"), check_precondition=not args.skip_precondition_checks)
    return _emit(args, "pathSystem", docs.path_system_payload(D, S))


def cmd_reduce_congestion(args):
    doc = _instance(args, bramble=True, terminals=True)
    D = doc.digraph()
    R = build_reduced_instance(D, doc.bags, doc.sources, doc.sinks)
    return _emit(args, "reducedInstance", docs.reduced_payload(D, doc.bags, doc.sources, doc.sinks, R))


def _ddp_payload(D, S, T, budget, paths=None, nodes=None):
    out = {"graph": docs.graph_payload(D), "sources": list(S), "sinks": list(T), "budget": budget}
    if paths is not None:
        out["paths"] = [list(p) for p in paths]
        out["maxLoad"] = max(load_of(paths).values())
    else:
        out["nodes"] = nodes
    return out


def _dichotomy_payload(D, bags, S, T, k, evidence):
    out = {
        "mode": "dichotomy",
        "graph": docs.graph_payload(D),
        "sources": list(S),
        "sinks": list(T),
        "bags": [sorted(b) for b in bags],
        "k": k,
        "holds": evidence is None,
    }
    if evidence is None:
        union = {v for b in bags for v in b}
        out["forwardPaths"] = [list(p) for p in menger_paths_and_separator(D, S, union).paths]
        out["backwardPaths"] = [list(p) for p in menger_paths_and_separator(D, union, T).paths]
    else:
        out["side"] = evidence.side
        out["separator"] = sorted(evidence.separator)
        out["paths"] = [list(p) for p in evidence.paths]
    return out


def cmd_route(args):
    doc = _instance(args, bramble=True, terminals=True)
    D = doc.digraph()
    c = args.c if args.c is not None else congestion(doc.bags)
    skip = args.skip_precondition_checks
    try:
        result = route_via_bramble(
            D, doc.bags, doc.sources, doc.sinks, c,
            node_cap=args.cap or DEFAULT_NODE_CAP,
            check_strong=not skip, check_bramble=not skip, check_size=not skip,
        )
    except Infeasible as exc:
        R = build_reduced_instance(D, doc.bags, doc.sources, doc.sinks)
        if exc.evidence is not None:
            payload = _dichotomy_payload(R.d_prime, R.bags_prime, R.sources_prime, R.sinks_prime, len(doc.sources), exc.evidence)
            return _emit(args, "separator", payload, negative=True)
        payload = _ddp_payload(R.d_prime, R.sources_prime, R.sinks_prime, 2, nodes=0)
        return _emit(args, "ddpInfeasible", payload, negative=True)
    return _emit(args, "ddpSolution", _ddp_payload(D, doc.sources, doc.sinks, result.budget, result.solution.paths))


def cmd_solve_ddp(args):
    doc = _instance(args, terminals=True)
    D = doc.digraph()
    budget = args.c if args.c is not None else doc.budget
    result = solve_exact(DdpInstance(D, doc.sources, doc.sinks, budget), args.cap or DEFAULT_NODE_CAP)
    if result.status == "cap":
        raise CapExceeded(f"search stopped after {result.nodes} nodes")
    if result.status == "infeasible":
        return _emit(args, "ddpInfeasible", _ddp_payload(D, doc.sources, doc.sinks, budget, nodes=result.nodes), negative=True)
    return _emit(args, "ddpSolution", _ddp_payload(D, doc.sources, doc.sinks, budget, result.solution.paths))


def cmd_dichotomy(args):
    doc = _instance(args, bramble=True, terminals=True)
    D = doc.digraph()
    k = args.k if args.k is not None else len(doc.sources)
    evidence = dichotomy_check(D, doc.bags, doc.sources, doc.sinks, k)
    payload = _dichotomy_payload(D, doc.bags, doc.sources, doc.sinks, k, evidence)
    return _emit(args, "separator", payload, negative=evidence is not None)


def cmd_degeneracy(args):
    doc = _read(args, docs.GraphDocument)
    d, order = degeneracy(doc.adjacency())
    payload = {"graph": {"n": doc.n, "edges": [list(e) for e in doc.edges]}, "degeneracy": d, "order": order}
    return _emit(args, "degeneracy", payload)


def cmd_intersect(args):
    doc = _read(args, docs.FamiliesDocument)
    G = build_intersection_graph(doc.families)
    payload = {"families": [[list(p) for p in f] for f in doc.families], "edges": [list(e) for e in G.edges()]}
    return _emit(args, "intersection", payload)


def cmd_lll_ris(args):
    doc = _read(args, docs.GraphDocument)
    P = doc.conflict_graph()
    seed = 0 if args.seed is None else args.seed
    eps = None if args.eps is None else float(args.eps)
    result = rainbow_independent_set(P, seed, args.cap, eps)
    payload = {
        "graph": {"n": P.n, "edges": [list(e) for e in P.edges()]},
        "parts": [list(p) for p in P.parts],
        "b": P.b,
        "seed": seed,
        "selection": list(result.selection),
        "resamples": result.resamples,
    }
    return _emit(args, "rainbowSelection", payload, seed=seed)


def cmd_lll_check(args):
    eps = _need(args.eps, "--eps")
    check = check_poly_lll_condition(_need(args.t, "--t"), _need(args.b, "--b"), _need(args.r, "--r"), mpmath.mpf(eps))
    payload = {
        "t": args.t, "b": args.b, "r": args.r, "eps": str(eps),
        "passed": check.passed, "slack": docs.mpf_text(check.slack),
    }
    out = _emit(args, "lllCheck", payload)
    out.code = EXIT_OK if check.passed else EXIT_NEGATIVE
    return out


def cmd_params(args):
    p = compute_parameters(
        _need(args.k, "--k"), _need(args.alpha, "--alpha"), _need(args.eps, "--eps"),
        args.c_a, args.c_t, args.log_base,
    )
    return _emit(args, "parameters", docs.parameters_payload(p))


def cmd_classify_case(args):
    doc = _read(args, docs.CaseDocument)
    if doc.families is not None:
        H1, H2 = build_conflict_graphs({v: doc.families[v] for v in doc.V}, doc.d1, doc.d2)
    else:
        H1, H2 = docs.adjacency_of(doc.V, doc.H1), docs.adjacency_of(doc.V, doc.H2)
    report = classify_case(doc.V, doc.Z, H1, H2)
    return _emit(args, "caseReport", docs.case_payload(report, H1, H2))


def cmd_gen(args):
    seed = 0 if args.seed is None else args.seed
    if args.kind == "complete":
        doc = docs.InstanceDocument.from_digraph(generators.gen_complete(_need(args.n, "--n")))
    elif args.kind == "cycle":
        doc = docs.InstanceDocument.from_digraph(generators.gen_cycle(_need(args.n, "--n")))
    elif args.kind == "random":
        doc = docs.InstanceDocument.from_digraph(generators.gen_random_digraph(_need(args.n, "--n"), args.p, seed))
    elif args.kind == "planted":
        k, c = _need(args.k, "--k"), _need(args.c, "--c")
        bags = args.bags if args.bags is not None else 4 * k * k + 2 * (k - 1)
        P = generators.gen_planted_bramble_instance(k, c, bags, seed, n=args.n)
        doc = docs.planted_document(P)
    else:
        P = generators.gen_conflict_graph(_need(args.r, "--r"), _need(args.t, "--t"), _need(args.b, "--b"), seed)
        doc = docs.GraphDocument.from_conflict_graph(P)
    return _Outcome(docs.dumps(doc))


def cmd_export_dot(args):
    return _Outcome(docs.to_dot(_instance(args)))


def cmd_recheck(args):
    cert = _read(args, docs.CertificateDocument)
    verdict = docs.reverify(cert)
    if verdict and not cert.verified:
        return _Outcome("", EXIT_NEGATIVE, "certificate re-verifies but is marked unverified")
    return _Outcome("", EXIT_OK if verdict else EXIT_NEGATIVE, verdict.message or f"{cert.kind}: ok")


def _need(value, flag):
    if value is None:
        raise docs.DocumentError(f"{flag} is required")
    return value


COMMANDS = {
    "verify-bramble": (cmd_verify_bramble, "check the bramble of an instance"),
    "order": (cmd_order, "exact bramble order and a minimum hitting set"),
    "build-path-system": (cmd_build_path_system, "(k,k)-path system in a 2k^2-strong digraph"),
    "reduce-congestion": (cmd_reduce_congestion, "congestion-2 reduction of a bramble instance"),
    "route": (cmd_route, "route the terminal pairs through the bramble"),
    "solve-ddp": (cmd_solve_ddp, "exact congestion-bounded disjoint paths"),
    "dichotomy": (cmd_dichotomy, "k linkages into and out of the bramble, or a separator"),
    "degeneracy": (cmd_degeneracy, "degeneracy and elimination order of a graph"),
    "intersect": (cmd_intersect, "intersection graph of path families"),
    "lll-ris": (cmd_lll_ris, "rainbow independent set by resampling"),
    "lll-check": (cmd_lll_check, "polynomial local lemma condition"),
    "params": (cmd_params, "parameter chain in extended precision"),
    "classify-case": (cmd_classify_case, "matchings and the three-case split"),
    "gen": (cmd_gen, "generate an instance or conflict graph"),
    "export-dot": (cmd_export_dot, "Graphviz rendering of an instance"),
    "recheck": (cmd_recheck, "re-verify a certificate from disk"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i")
    common.add_argument("--output", "-o")
    common.add_argument("--seed", type=int)
    common.add_argument("--cap", type=int, help="node, size or resample cap")
    common.add_argument("--k", type=int)
    common.add_argument("--c", type=int)
    common.add_argument("--alpha")
    common.add_argument("--eps", help="a number, or 'boundary' for params")
    common.add_argument("--log-base", default="e")
    common.add_argument("--c-a", default="1.0")
    common.add_argument("--c-t", default="1.0")
    common.add_argument("--skip-precondition-checks", action="store_true")
    common.add_argument("--n", type=int)
    common.add_argument("--p", type=float, default=0.3)
    common.add_argument("--bags", type=int)
    common.add_argument("--r", type=int)
    common.add_argument("--t", type=int)
    common.add_argument("--b", type=int)

    parser = argparse.ArgumentParser(prog="bramblekit", description=__doc__.replace("``", ""), formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "gen":
            p.add_argument("kind", choices=["complete", "cycle", "random", "planted", "conflict"])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        outcome = handler(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (BramblekitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if outcome.text:
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(outcome.text)
        else:
            sys.stdout.write(outcome.text)
    if outcome.note:
        print(outcome.note, file=sys.stderr)
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
