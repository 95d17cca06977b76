"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 input or validation error,
3 resource guard (oracle / index size limits).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .bench import run_bench
from .gen import GenParams, ParameterError, generate
from .graph import (FORMAT_VERSION, ParseError, StructuralError, parse_graph, validate,
                    write_graph)
from .indexing import IndexingGraphView
from .oracle import DEFAULT_MAX_VERTICES, OracleTooLarge, cfl_closure
from .query import QuerySession, SchemeLacksPaths
from .reach import SCHEMES, IndexGuardError
from .reach.container import VERSION as INDEX_VERSION, ContainerError
from .summary import compute_summaries

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str):
    try:
        return parse_graph(_read_text(path))
    except (ParseError, StructuralError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _write(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_gen(args):
    params = GenParams(functions=args.functions, vertices_per_function=(args.vmin, args.vmax),
                       eps_edge_density=args.density, call_sites=args.sites, alpha=args.alpha,
                       seed=args.seed, allow_recursion=args.recursion)
    try:
        g = generate(params)
    except ParameterError as exc:
        raise UsageError(str(exc)) from None
    _write(write_graph(g), args.output)


def cmd_validate(args):
    g = _load_graph(args.graph)
    report = validate(g)
    if args.json:
        print(json.dumps({
            "ok": report.ok, "measured_alpha": report.measured_alpha,
            "violations": [{"rule": v.rule, "message": v.message} for v in report.violations],
        }, indent=2))
    else:
        print(report)
    return EXIT_OK if report.ok else EXIT_INPUT


def cmd_summarize(args):
    g = _load_graph(args.graph)
    _write(compute_summaries(g).dump(), args.output)


def cmd_export_dot(args):
    g = _load_graph(args.graph)
    _write(IndexingGraphView(g, compute_summaries(g)).to_dot(), args.output)


def cmd_oracle(args):
    g = _load_graph(args.graph)
    _write(cfl_closure(g, args.max_vertices).dump(), args.output)


def _build_session(g, args):
    return QuerySession.build(g, args.scheme, seed=args.seed, k_labels=args.k_labels,
                              max_components=args.max_components,
                              max_non_tree=args.max_non_tree)


def cmd_build(args):
    g = _load_graph(args.graph)
    session = _build_session(g, args)
    data = session.serialize()
    Path(args.output).write_bytes(data)
    nv, ne = session.view.stats()
    print(f"{args.scheme}: {len(session.summaries)} summaries, indexing graph {nv} vertices "
          f"{ne} edges, {session.dag.n} components, {len(data)} bytes -> {args.output}",
          file=sys.stderr)


def _read_pairs(path: str, n: int):
    pairs = []
    for lineno, line in enumerate(_read_text(path).splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        try:
            u, v = int(toks[0]), int(toks[1])
            if len(toks) != 2:
                raise ValueError
        except (ValueError, IndexError):
            raise InputError(f"{path} line {lineno}: expected 'u v'") from None
        for x in (u, v):
            if not 0 <= x < n:
                raise InputError(f"{path} line {lineno}: vertex {x} out of range 0..{n - 1}")
        pairs.append((u, v))
    return pairs


def _format_path(path) -> str:
    toks = [str(path.vertices[0])]
    for lab, v in zip(path.labels, path.vertices[1:]):
        toks.append(str(lab).replace(" ", ":"))
        toks.append(str(v))
    return " ".join(toks)


def cmd_query(args):
    g = _load_graph(args.graph)
    if args.index:
        try:
            data = Path(args.index).read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read {args.index}: {exc.strerror}") from None
        try:
            session = QuerySession.load(g, data)
        except ContainerError as exc:
            raise InputError(f"{args.index}: {exc}") from None
    else:
        session = _build_session(g, args)
    if args.paths and not session.capabilities.returns_paths:
        raise UsageError(f"scheme {session.scheme!r} cannot return paths; use --scheme grail")
    pairs = _read_pairs(args.pairs, g.n)
    out = []
    for u, v in pairs:
        if args.paths:
            path = session.query_path(u, v)
            out.append(f"{u} {v} 1 {_format_path(path)}" if path else f"{u} {v} 0")
        else:
            out.append(f"{u} {v} {int(session.query(u, v))}")
    sys.stdout.write("".join(line + "\n" for line in out))


def cmd_bench(args):
    g = _load_graph(args.graph)
    schemes = [s for s in args.schemes.split(",") if s]
    for s in schemes:
        if s not in SCHEMES:
            raise UsageError(f"unknown scheme {s!r}")
    report = run_bench(g, schemes, args.reach, args.unreach, args.repeats, args.seed,
                       name=Path(args.graph).stem, k_labels=args.k_labels,
                       max_components=args.max_components, max_non_tree=args.max_non_tree)
    if args.csv:
        _write(report.to_csv(), args.csv)
        if args.csv != "-":
            print(report.summary())
    else:
        print(report.summary())


def _index_flags(p):
    p.add_argument("--scheme", choices=sorted(SCHEMES), default="grail",
                   help="reachability index (default grail)")
    p.add_argument("--seed", type=int, default=0, help="Grail labeling seed")
    p.add_argument("--k-labels", type=int, default=5, help="Grail labelings (default 5)")
    p.add_argument("--max-components", type=int, default=None,
                   help="transitive-closure component limit")
    p.add_argument("--max-non-tree", type=int, default=None,
                   help="dual-labeling non-tree edge limit")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="csreach", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version",
                        version=f"csreach {__version__} (graph format {FORMAT_VERSION}, "
                                f"index format {INDEX_VERSION})")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a random program-valid graph")
    p.add_argument("--functions", type=int, default=6)
    p.add_argument("--vmin", type=int, default=4, help="min vertices per function")
    p.add_argument("--vmax", type=int, default=8, help="max vertices per function")
    p.add_argument("--density", type=float, default=1.2, help="eps edges per vertex")
    p.add_argument("--sites", type=int, default=10, help="number of call sites")
    p.add_argument("--alpha", type=int, default=2, help="max boundary vertices per function")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--recursion", action="store_true", help="allow recursive calls")
    p.add_argument("-o", "--output", help="write here instead of stdout")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("validate", help="check the program-valid graph rules")
    p.add_argument("graph")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("summarize", help="print summary edges as 'source target site'")
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("export-dot", help="dump the indexing graph in Graphviz format")
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("oracle", help="print all CS-reachable pairs via grammar saturation")
    p.add_argument("graph")
    p.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("build", help="build and serialize a reachability index")
    p.add_argument("graph")
    _index_flags(p)
    p.add_argument("-o", "--output", required=True, help="index file to write")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="answer 'u v' pairs; prints 'u v 0|1[ path]'")
    p.add_argument("graph")
    p.add_argument("--pairs", required=True, help="pair file, or - for stdin")
    p.add_argument("--index", help="prebuilt index file (otherwise built on the fly)")
    p.add_argument("--paths", action="store_true",
                   help="print a witness path for reachable pairs (grail only)")
    _index_flags(p)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("bench", help="time index builds and query batches")
    p.add_argument("graph")
    p.add_argument("--schemes", default="grail", help="comma-separated, e.g. tc,dual,grail")
    p.add_argument("--reach", type=int, default=1000, help="reachable pairs per batch")
    p.add_argument("--unreach", type=int, default=1000, help="unreachable pairs per batch")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k-labels", type=int, default=5)
    p.add_argument("--max-components", type=int, default=None)
    p.add_argument("--max-non-tree", type=int, default=None)
    p.add_argument("--csv", help="write CSV rows here (- for stdout)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args) or EXIT_OK
    except UsageError as exc:
        print(f"csreach: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SchemeLacksPaths as exc:
        print(f"csreach: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"csreach: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OracleTooLarge, IndexGuardError) as exc:
        print(f"csreach: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
