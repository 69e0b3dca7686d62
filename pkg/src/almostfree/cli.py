"""Command-line front end.

Exit codes: 0 positive verdict / success, 10 negative verdict (NotAlmostFree,
rejected certificate, failed check), 2 malformed input, 3 invalid parameters,
4 budget exhausted, 5 internal inconsistency, 1 anything else.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import algebra, borel, certificate, graph, oracle, reduction

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MALFORMED = 2
EXIT_PARAMS = 3
EXIT_BUDGET = 4
EXIT_INCONSISTENT = 5
EXIT_NEGATIVE = 10


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write(path: str | None, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_graph(path: str, require_connected: bool) -> graph.Graph:
    G = graph.parse_dimacs(_read(path))
    problems = graph.validate(G, require_connected=False)
    if problems:
        raise graph.DimacsError("; ".join(problems))
    if not graph.is_connected(G):
        if require_connected:
            raise reduction.EncodingError("graph is disconnected (--require-connected)")
        print("warning: graph is disconnected", file=sys.stderr)
    return G


def _emit(args, pairs: list[tuple[str, object]], text: str | None = None):
    if args.porcelain:
        sys.stdout.write("".join(f"{key}={value}\n" for key, value in pairs))
    else:
        sys.stdout.write(text if text is not None else "".join(f"{key}: {value}\n" for key, value in pairs))


def cmd_encode(args) -> int:
    G = _load_graph(args.graph, args.require_connected)
    A = reduction.EncodingParams(args.variant, args.k).encode(G)
    _write(args.output, algebra.format_algebra(A))
    return EXIT_OK


def cmd_decide(args) -> int:
    G = _load_graph(args.graph, args.require_connected)
    methods = [args.method]
    if args.cross_check:
        methods = ["groebner", "certificate_search"]
    decisions = [reduction.decide_almost_free(G, args.k, m, order=args.order, budget=args.budget) for m in methods]
    if len({d.verdict for d in decisions}) > 1:
        raise reduction.InconsistencyError("decision methods disagree")
    for d in decisions:
        pairs = [("verdict", d.verdict.value), ("method", d.method.value), ("k", d.k)]
        if d.witness is not None:
            pairs.append(("witness", reduction.format_witness(d.witness)))
        pairs += list(d.details.items())
        pairs.append(("time", f"{d.elapsed:.6f}"))
        _emit(args, pairs, d.report())
    if args.groebner_dump:
        A = reduction.encode_shifted(G, args.k)
        gb = oracle.buchberger(oracle.ideal_from_algebra(A), order=args.order, budget=args.budget)
        _write(args.groebner_dump, gb.dump())
    return EXIT_OK if decisions[0].almost_free else EXIT_NEGATIVE


def _load_algebra_or_graph(path: str, k: int | None) -> tuple[algebra.SullivanAlgebra, graph.Graph | None]:
    text = _read(path)
    first = next((ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")), "")
    if " ".join(first.split()) == algebra.HEADER:
        return algebra.parse_algebra(text), None
    if k is None:
        raise reduction.EncodingError("-k is required when verifying against a graph")
    G = graph.parse_dimacs(text)
    return reduction.encode_shifted(G, k), G


def cmd_verify(args) -> int:
    cert = certificate.parse_certificate(_read(args.certificate))
    if args.k is not None and args.k != cert.k:
        raise reduction.EncodingError(f"certificate is for k={cert.k}, but -k {args.k} was given")
    A, _ = _load_algebra_or_graph(args.input, cert.k)
    start = time.perf_counter()
    check = certificate.verify_morphism(A, cert.assignment())
    elapsed = time.perf_counter() - start
    pairs = [("result", "accept" if check.accepted else "reject"), ("reason", check.reason)]
    if check.edge:
        pairs.append(("edge", f"{check.edge[0]} {check.edge[1]}"))
    pairs.append(("time", f"{elapsed:.6f}"))
    _emit(args, pairs)
    return EXIT_OK if check.accepted else EXIT_NEGATIVE


def cmd_construct(args) -> int:
    G = _load_graph(args.graph, args.require_connected)
    action = borel.assemble_action(G, args.k)
    _write(args.output, borel.format_action(action))
    if args.model:
        _write(args.model, algebra.format_algebra(borel.borel_model(action)))
    return EXIT_OK


def cmd_check_borel(args) -> int:
    G = _load_graph(args.graph, args.require_connected)
    reports = borel.check_borel(G, args.k)
    ok = all(reports)
    if args.porcelain:
        pairs = [(r.name.replace(" ", "_"), "pass" if r else "fail") for r in reports]
        pairs.append(("result", "pass" if ok else "fail"))
        _emit(args, pairs)
    else:
        sys.stdout.write("\n".join(str(r) for r in reports) + "\n")
        sys.stdout.write(f"{'all checks passed' if ok else 'some checks FAILED'}\n")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_betti(args) -> int:
    G = _load_graph(args.graph, args.require_connected)
    A = reduction.EncodingParams(args.variant, args.k).encode(G)
    dims = oracle.cohomology_dims(A, args.cutoff, budget=args.budget or 250_000)
    sys.stdout.write("".join(f"H^{n} {d}\n" for n, d in dims.items()))
    return EXIT_OK


def cmd_selftest(args) -> int:
    checks = []
    K3, K4 = graph.complete_graph(3), graph.complete_graph(4)
    checks.append(("K4 k=2 almost free", reduction.decide_almost_free(K4, 2).almost_free))
    checks.append(("K3 k=2 not almost free", not reduction.decide_almost_free(K3, 2).almost_free))
    checks.append(
        (
            "K3 certificate (0,1,2) accepted",
            certificate.verify_morphism(
                reduction.encode_shifted(K3, 2), certificate.assignment_from_coloring({1: 0, 2: 1, 3: 2}, 2)
            ).accepted,
        )
    )
    checks.append(("K3 k=2 well formed", not algebra.check_well_formed(reduction.encode_shifted(K3, 2))))
    checks.append(("volume kernel k=2", bool(borel.claim1_kernel_check(2))))
    checks.append(("borel K2 k=2", all(borel.check_borel(graph.complete_graph(2), 2))))
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    return EXIT_OK if all(ok for _, ok in checks) else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="almostfree", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph_arg=True):
        if graph_arg:
            sp.add_argument("graph", help="DIMACS .col file ('-' for stdin)")
        sp.add_argument("-k", type=int, required=True)
        sp.add_argument("--require-connected", action="store_true")
        sp.add_argument("--porcelain", action="store_true", help="key=value output")

    sp = sub.add_parser("encode", help="write the Sullivan algebra of a graph")
    common(sp)
    sp.add_argument("--variant", choices=["shifted", "original"], default="shifted")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("decide", help="decide almost-freeness of the encoded action")
    common(sp)
    sp.add_argument("--method", choices=[m.value for m in reduction.Method], default="groebner")
    sp.add_argument("--cross-check", action="store_true", help="run both methods and compare")
    sp.add_argument("--order", choices=sorted(oracle.ORDERS), default="grevlex")
    sp.add_argument("--budget", type=int, default=None, help="max S-pair reductions")
    sp.add_argument("--groebner-dump", metavar="PATH")
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("verify", help="check a colouring certificate")
    sp.add_argument("input", help="DIMACS graph or 'sullivan v1' algebra file")
    sp.add_argument("certificate")
    sp.add_argument("-k", type=int)
    sp.add_argument("--porcelain", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("construct", help="write the torus action data")
    common(sp)
    sp.add_argument("-o", "--output")
    sp.add_argument("--model", metavar="PATH", help="also write the Borel model")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("check-borel", help="verify the Borel model formulas")
    common(sp)
    sp.set_defaults(func=cmd_check_borel)

    sp = sub.add_parser("betti", help="degreewise cohomology of the encoded algebra")
    common(sp)
    sp.add_argument("--variant", choices=["shifted", "original"], default="shifted")
    sp.add_argument("--cutoff", type=int, default=None)
    sp.add_argument("--budget", type=int, default=None, help="max basis size per degree")
    sp.set_defaults(func=cmd_betti)

    sp = sub.add_parser("selftest", help="run a few built-in checks")
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "cutoff", None) is not None and args.cutoff < 0:
        print("error: cutoff must be nonnegative", file=sys.stderr)
        return EXIT_PARAMS
    try:
        return args.func(args)
    except (graph.DimacsError, algebra.ParseError, certificate.CertificateError, borel.ConstructionError) as exc:
        code = EXIT_PARAMS if isinstance(exc, borel.ConstructionError) else EXIT_MALFORMED
        print(f"error: {exc}", file=sys.stderr)
        return code
    except reduction.EncodingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except oracle.BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except reduction.InconsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
