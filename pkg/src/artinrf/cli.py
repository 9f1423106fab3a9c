"""Command-line front end.

Exit codes: 0 success, 1 honest negative or unknown, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .certificate import certify_with_info
from .certio import (
    CertificateFormatError,
    load_certificate,
    save_certificate,
    serialize_certificate,
)
from .corpus import KINDS, generate
from .graph import (
    CoxeterGraph,
    GraphError,
    artin_presentation,
    is_even,
    is_forest,
    is_triangle_free,
)
from .graphio import (
    ParseError,
    emit_graph,
    format_partition,
    load_axiom_file,
    load_graph_file,
    parse_partition,
    quotient_to_dot,
    to_dot,
)
from .partition import DEFAULT_BUDGET, PartitionError, is_admissible, quotient
from .recognizers import is_even_fc, is_right_angled, is_spherical
from .verify import verify

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2


class _InputError(Exception):
    pass


def _load_graph(path: str) -> CoxeterGraph:
    try:
        return load_graph_file(path)
    except OSError as exc:
        raise _InputError(f"cannot read graph file {path!r}: {exc}") from exc
    except ParseError as exc:
        raise _InputError(f"{path}: {exc}") from exc


def _load_axioms(paths) -> list[tuple[str, CoxeterGraph]]:
    axioms = []
    for path in paths or ():
        try:
            axioms.append(load_axiom_file(path))
        except OSError as exc:
            raise _InputError(f"cannot read axiom file {path!r}: {exc}") from exc
        except ParseError as exc:
            raise _InputError(f"{path}: {exc}") from exc
    return axioms


def _maybe_figure(g, figure_path, partition=None, title=None, announce=None) -> None:
    if not figure_path:
        return
    from .figures import render_graph

    render_graph(g, figure_path, partition=partition, title=title)
    # Keep stdout clean when it carries machine output (DOT or JSON).
    print(f"figure: {figure_path}", file=announce or sys.stdout)


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_check(args) -> int:
    g = _load_graph(args.graph)
    print(f"even: {_yesno(is_even(g))}")
    print(f"triangle-free: {_yesno(is_triangle_free(g))}")
    print(f"forest: {_yesno(is_forest(g))}")
    print(f"spherical: {_yesno(is_spherical(g))}")
    print(f"right-angled: {_yesno(is_right_angled(g))}")
    print(f"even-fc: {_yesno(is_even_fc(g))}")
    _maybe_figure(g, args.figure, title=Path(args.graph).stem)
    return EXIT_OK


def cmd_certify(args) -> int:
    g = _load_graph(args.graph)
    axioms = _load_axioms(args.axioms)
    if args.budget <= 0:
        raise _InputError(f"--budget must be positive, got {args.budget}")
    result = certify_with_info(g, axioms, args.budget)
    if result.certificate is None:
        print("unknown: no certificate found within budget")
        print(f"budget-exhausted: {_yesno(result.budget_exhausted)}")
        print(f"nodes-visited: {result.nodes_visited}")
        return EXIT_NEGATIVE
    text = serialize_certificate(result.certificate)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print("certificate: found")
        print(f"condition: {result.condition}")
        print(f"partition: {format_partition(result.partition)}")
        print(f"nodes-visited: {result.nodes_visited}")
        print(f"written: {args.out}")
    else:
        sys.stdout.write(text)
    _maybe_figure(
        g,
        args.figure,
        partition=result.partition,
        title=Path(args.graph).stem,
        announce=sys.stdout if args.out else sys.stderr,
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    axioms = _load_axioms(args.axioms)
    try:
        cert = load_certificate(args.certificate)
    except OSError as exc:
        raise _InputError(f"cannot read certificate {args.certificate!r}: {exc}") from exc
    except CertificateFormatError as exc:
        raise _InputError(f"{args.certificate}: {exc}") from exc
    report = verify(g, cert, axioms)
    for entry in report.trace:
        status = "PASS" if entry.passed else "FAIL"
        print(f"{status} {entry.path} {entry.condition}: {entry.detail}")
    print(f"overall: {'pass' if report.overall else 'fail'}")
    return EXIT_OK if report.overall else EXIT_NEGATIVE


def cmd_present(args) -> int:
    g = _load_graph(args.graph)
    pres = artin_presentation(g)
    print("generators: " + " ".join(pres.generators))
    for left, right in pres.relations:
        print("relation: " + " ".join(left) + " = " + " ".join(right))
    return EXIT_OK


def cmd_export_dot(args) -> int:
    g = _load_graph(args.graph)
    partition = None
    if args.partition:
        try:
            partition = parse_partition(args.partition)
        except ParseError as exc:
            raise _InputError(str(exc)) from exc
        try:
            if not is_admissible(g, partition):
                raise _InputError(
                    f"partition {format_partition(partition)} is not admissible"
                )
        except PartitionError as exc:
            raise _InputError(str(exc)) from exc
    if args.format == "dot":
        if partition is not None:
            text = quotient_to_dot(g, partition)
        else:
            text = to_dot(g, Path(args.graph).stem or "coxeter")
    else:
        if partition is not None:
            qg, _ = quotient(g, partition)
            text = emit_graph(qg)
        else:
            text = emit_graph(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"written: {args.out}")
    else:
        sys.stdout.write(text)
    _maybe_figure(
        g,
        args.figure,
        partition=partition,
        title=Path(args.graph).stem,
        announce=sys.stdout if args.out else sys.stderr,
    )
    return EXIT_OK


def cmd_gen_corpus(args) -> int:
    try:
        graphs = generate(args.kind, args.n, args.count, args.seed)
    except ValueError as exc:
        raise _InputError(str(exc)) from exc
    out_dir = Path(args.out or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    for i, g in enumerate(graphs):
        path = out_dir / f"{args.kind}-n{args.n}-s{args.seed}-{i:03d}.cox"
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(emit_graph(g))
        print(str(path))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="artinrf",
        description=(
            "Search for and verify residual-finiteness certificates of Artin "
            "groups given by Coxeter graphs."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="report structural predicates of a graph")
    p.add_argument("graph", help="graph file")
    p.add_argument("--figure", metavar="PATH", help="also render the graph to an image")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("certify", help="search for a residual-finiteness certificate")
    p.add_argument("graph", help="graph file")
    p.add_argument("--axioms", nargs="+", metavar="PATH", help="axiom graph files")
    p.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_BUDGET,
        help="partition nodes to examine before giving up (default %(default)s)",
    )
    p.add_argument("--out", metavar="PATH", help="write the certificate here")
    p.add_argument("--figure", metavar="PATH", help="also render the graph to an image")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="re-validate a certificate from first principles")
    p.add_argument("graph", help="graph file")
    p.add_argument("certificate", help="certificate file")
    p.add_argument("--axioms", nargs="+", metavar="PATH", help="axiom graph files")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("present", help="print the Artin presentation of a graph")
    p.add_argument("graph", help="graph file")
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("export-dot", help="export a graph (or quotient) as DOT or text")
    p.add_argument("graph", help="graph file")
    p.add_argument("--format", choices=["dot", "text"], default="dot")
    p.add_argument(
        "--partition",
        metavar="LITERAL",
        help="partition literal like '{a,b|c}'; exports the quotient instead",
    )
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    p.add_argument("--figure", metavar="PATH", help="also render the graph to an image")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("gen-corpus", help="generate seeded random graph files")
    p.add_argument("--kind", choices=sorted(KINDS), required=True)
    p.add_argument("--n", type=int, required=True, help="vertex count")
    p.add_argument("--count", type=int, required=True, help="number of graphs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="DIR", help="output directory (default .)")
    p.set_defaults(func=cmd_gen_corpus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (GraphError, PartitionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
