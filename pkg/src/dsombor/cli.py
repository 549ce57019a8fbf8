"""Command-line interface.

Exit status: 0 success, 1 usage/config error, 2 input parse error,
3 a must-hold bound has a hard violation.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import datetime as dt
import json
import os
import sys
from typing import Iterator, Sequence, TextIO

from . import bounds as bd
from .generate import (
    DEFAULT_ENUM_LIMIT, MAX_ENUM_N, FAMILIES, EnumerationSpec, FamilySpec,
    enumerate_graphs, make_family, random_gnp, random_regular,
)
from .graph import Graph, Graph6Error, GraphError, parse_graph6, read_graph6_lines, write_graph6, degree_summary
from .indices import FIXED_KINDS, IndexKind, IndexSpecError, compute_index, parse_index_token
from .verify import audit_dict, characterization_audit, extremal_search, verify_corpus

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_VIOLATION = 3

CSV_FLOAT = ".12g"


class UsageError(Exception):
    pass


def fmt_float(x: float | None) -> str:
    return "" if x is None else format(x, CSV_FLOAT)


@contextlib.contextmanager
def _open_in(path: str) -> Iterator[TextIO]:
    if path == "-":
        yield sys.stdin
    else:
        try:
            with open(path, encoding="ascii") as fh:
                yield fh
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None


@contextlib.contextmanager
def _open_out(path: str) -> Iterator[TextIO]:
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="ascii", newline="") as fh:
            yield fh


def _split_tokens(text: str) -> list[str]:
    """Split on commas that are not inside chi_alpha(...) parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    out.append("".join(cur))
    return [tok.strip() for tok in out if tok.strip()]


def _parse_indices(text: str | None) -> list[IndexKind]:
    if not text or text.strip() == "all":
        return list(FIXED_KINDS)
    try:
        return [parse_index_token(tok) for tok in _split_tokens(text)]
    except IndexSpecError as exc:
        raise UsageError(str(exc)) from None


def _parse_bounds(text: str) -> list[bd.BoundRecord]:
    try:
        return bd.select_bounds(text)
    except bd.ConfigurationError as exc:
        raise UsageError(str(exc)) from None


def _tolerance(value: float) -> float:
    if not value > 0:
        raise UsageError("--tolerance must be positive")
    return value


def _jobs(value: int | None) -> int:
    if value is None:
        return os.cpu_count() or 1
    if value < 1:
        raise UsageError("--jobs must be >= 1")
    return value


def _read_graphs(path: str) -> tuple[list[tuple[str, Graph]], list[tuple[int, str]]]:
    good, bad = [], []
    with _open_in(path) as fh:
        for lineno, text in read_graph6_lines(fh):
            try:
                good.append((text, parse_graph6(text)))
            except Graph6Error as exc:
                bad.append((lineno, str(exc)))
    return good, bad


def _enum_range(n: int | None, n_max: int | None, allow_large: bool) -> list[int]:
    if (n is None) == (n_max is None):
        raise UsageError("give exactly one of --n and --n-max")
    limit = MAX_ENUM_N if allow_large else DEFAULT_ENUM_LIMIT
    top = n if n is not None else n_max
    if not 1 <= top <= limit:
        extra = " (n = 8 needs --allow-large)" if top == MAX_ENUM_N else ""
        raise UsageError(f"n must lie in 1..{limit}{extra}")
    return [n] if n is not None else list(range(1, n_max + 1))


def _corpus(sizes: list[int], connected: bool, allow_large: bool) -> Iterator[Graph]:
    for k in sizes:
        yield from enumerate_graphs(EnumerationSpec(k, connected), allow_large)


def _dump_json(obj, out: TextIO) -> None:
    out.write(json.dumps(obj, indent=2, allow_nan=False))
    out.write("\n")


# subcommands


def run_compute(args) -> int:
    kinds = _parse_indices(args.indices)
    header = ["graph6", "n", "m", "delta", "Delta"] + [k.token for k in kinds]
    with _open_in(args.input) as fh, _open_out(args.output) as out:
        rows = []
        if args.format == "csv":
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(header)
        for lineno, text in read_graph6_lines(fh):
            try:
                g = parse_graph6(text)
            except Graph6Error as exc:
                print(f"line {lineno}: {exc}", file=sys.stderr)
                return EXIT_PARSE
            ds = degree_summary(g)
            values = [compute_index(g, k) for k in kinds]
            if args.format == "csv":
                cells = [str(v.exact) if v.exact is not None else fmt_float(v.value) for v in values]
                writer.writerow([text, g.n, g.m, ds.delta, ds.Delta] + cells)
            else:
                row = {"graph6": text, "n": g.n, "m": g.m, "delta": ds.delta, "Delta": ds.Delta}
                for v in values:
                    row[v.kind.token] = v.exact if v.exact is not None else v.value
                rows.append(row)
        if args.format == "json":
            _dump_json(rows, out)
    return EXIT_OK


def _write_report(report, args, rows=None) -> None:
    with _open_out(args.output) as out:
        if args.format == "csv":
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(["graph6", "bound", "applicable", "lhs", "rhs", "slack",
                             "holds", "equality", "predicted", "match"])
            for g6, ev in rows:
                flag = lambda b: "" if b is None else str(int(b))  # noqa: E731
                writer.writerow([g6, ev.bound_id, int(ev.applicable), fmt_float(ev.lhs_value),
                                 fmt_float(ev.rhs_value), fmt_float(ev.slack), flag(ev.holds),
                                 flag(ev.equality_achieved), flag(ev.characterization_predicted),
                                 flag(ev.characterization_match)])
        else:
            doc = report.to_dict()
            doc["audit"] = audit_dict(characterization_audit(report))
            _dump_json(doc, out)


def _sweep_common(graphs, source, args, pre_errors=()):
    records = _parse_bounds(args.bounds)
    tol = _tolerance(args.tolerance)
    jobs = _jobs(args.jobs)
    rows = [] if args.format == "csv" else None
    report = verify_corpus(
        graphs, records, tol, source=source, jobs=jobs,
        on_row=(lambda g6, ev: rows.append((g6, ev))) if rows is not None else None,
    )
    report.errors = list(pre_errors) + report.errors
    if args.timestamp:
        report.timestamp = dt.datetime.now(dt.timezone.utc).isoformat(timespec="seconds")
    _write_report(report, args, rows)
    if report.errors:
        return EXIT_PARSE
    return EXIT_VIOLATION if report.has_hard_violation else EXIT_OK


def run_verify(args) -> int:
    good, bad = _read_graphs(args.input)
    errors = [(f"line {lineno}", msg) for lineno, msg in bad]
    for item, msg in errors:
        print(f"{item}: {msg}", file=sys.stderr)
    return _sweep_common([text for text, _ in good], args.input, args, errors)


def run_sweep(args) -> int:
    sizes = _enum_range(None, args.n_max, args.allow_large)
    kind = "connected" if args.connected else "all"
    source = f"enumerate n=1..{args.n_max} ({kind})"
    return _sweep_common(_corpus(sizes, args.connected, args.allow_large), source, args)


def run_enumerate(args) -> int:
    sizes = _enum_range(args.n, args.n_max, args.allow_large)
    with _open_out(args.output) as out:
        for g in _corpus(sizes, args.connected, args.allow_large):
            out.write(write_graph6(g) + "\n")
    return EXIT_OK


def run_extremal(args) -> int:
    if (args.index is None) == (args.bound is None):
        raise UsageError("give exactly one of --index and --bound")
    target = args.index if args.index is not None else args.bound
    if args.index is not None:
        _parse_indices(args.index)
    else:
        _parse_bounds(args.bound)
    if args.input is not None:
        good, bad = _read_graphs(args.input)
        if bad:
            for lineno, msg in bad:
                print(f"line {lineno}: {msg}", file=sys.stderr)
            return EXIT_PARSE
        graphs = [g for _, g in good]
    else:
        graphs = list(_corpus(_enum_range(args.n, args.n_max, args.allow_large), args.connected, args.allow_large))
    try:
        result = extremal_search(graphs, target, args.direction, _tolerance(args.tolerance))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    with _open_out(args.output) as out:
        _dump_json({"target": result.target, "direction": result.direction,
                    "value": result.value, "witnesses": list(result.witnesses)}, out)
    return EXIT_OK


def run_gen(args) -> int:
    try:
        if args.family == "gnp":
            if args.n is None or args.p is None:
                raise UsageError("gnp needs --n and --p")
            graphs = [random_gnp(args.n, args.p, args.seed + i) for i in range(args.count)]
        elif args.family == "random_regular":
            if args.n is None or args.d is None:
                raise UsageError("random_regular needs --n and --d")
            graphs = [random_regular(args.n, args.d, args.seed + i) for i in range(args.count)]
        else:
            graphs = [make_family(FamilySpec(args.family, n=args.n, a=args.a, b=args.b, m=args.m, d=args.d))]
        lines = [write_graph6(g) for g in graphs]
    except (GraphError, Graph6Error) as exc:
        raise UsageError(str(exc)) from None
    with _open_out(args.output) as out:
        for line in lines:
            out.write(line + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dsombor",
        description="Diminished Sombor index, companion indices and bound verification on small graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def io(p, with_input=True):
        if with_input:
            p.add_argument("--input", "-i", default="-", help="graph6 file, '-' for stdin")
        p.add_argument("--output", "-o", default="-", help="output file, '-' for stdout")

    def sweep_opts(p):
        p.add_argument("--bounds", default="all", help="comma list of bound ids or 'all'")
        p.add_argument("--tolerance", type=float, default=bd.DEFAULT_TOL)
        p.add_argument("--jobs", type=int, default=None, help="worker processes (default: CPU count)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--timestamp", action="store_true", help="record wall-clock time in the report meta")

    def enum_opts(p, single=True):
        if single:
            p.add_argument("--n", type=int)
        p.add_argument("--n-max", type=int)
        p.add_argument("--connected", action="store_true")
        p.add_argument("--allow-large", action="store_true", help="permit n = 8")

    p = sub.add_parser("compute", help="index values for graph6 input")
    io(p)
    p.add_argument("--indices", default="all", help="comma list, e.g. dso,so,chi_alpha(-2)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=run_compute)

    p = sub.add_parser("verify", help="check bounds on graphs from a graph6 file")
    io(p)
    sweep_opts(p)
    p.set_defaults(func=run_verify)

    p = sub.add_parser("sweep", help="check bounds on all graphs up to n-max vertices")
    io(p, with_input=False)
    enum_opts(p, single=False)
    sweep_opts(p)
    p.set_defaults(func=run_sweep)

    p = sub.add_parser("enumerate", help="non-isomorphic graphs as graph6")
    io(p, with_input=False)
    enum_opts(p)
    p.set_defaults(func=run_enumerate)

    p = sub.add_parser("extremal", help="graphs maximising or minimising an index or a bound's slack")
    p.add_argument("--input", "-i", default=None, help="graph6 corpus instead of enumeration")
    p.add_argument("--output", "-o", default="-")
    enum_opts(p)
    p.add_argument("--index")
    p.add_argument("--bound")
    p.add_argument("--direction", choices=("max", "min"), default="max")
    p.add_argument("--tolerance", type=float, default=bd.DEFAULT_TOL)
    p.set_defaults(func=run_extremal)

    p = sub.add_parser("gen", help="named or random graphs as graph6")
    io(p, with_input=False)
    p.add_argument("--family", required=True, choices=FAMILIES[:-1] + ("gnp", "random_regular"))
    for flag in ("--n", "--a", "--b", "--m", "--d"):
        p.add_argument(flag, type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=run_gen)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"dsombor {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
