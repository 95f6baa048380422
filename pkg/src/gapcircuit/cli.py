"""Command-line front end: triangle, stats, check, verify, search.

Every command reads one originator (or, for search, a random model), writes
one report to stdout in json, csv, or text form, and exits 0 on success,
1 when the checked property fails, and 2 on usage or parameter errors.
Output is deterministic for fixed flags: no timestamps, no wall-clock
entropy; timing figures appear only under --timing.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .bounds import BoundReport, is_equality_case, run_all_checks, summarize
from .errors import GapCircuitError, UsageError
from .originator import (
    Originator,
    RandomModel,
    first_n_primes,
    load_sequence,
    primes_up_to,
    random_generalized,
)
from .triangle import build_circuit, circuit_length, path_lengths, total_maximal_steps, traces
from .verifier import (
    DEFAULT_SCAN_DEPTH,
    SearchReport,
    VerifyReport,
    search_counterexamples,
    verify_frontier,
    verify_naive,
)

DEFAULT_TRIANGLE_CAP = 10_000


def _emit(body: str) -> None:
    if not body.endswith("\n"):
        body += "\n"
    sys.stdout.write(body)


def _json(payload) -> str:
    return json.dumps(payload, indent=2)


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _resolve_originator(args: argparse.Namespace) -> Originator:
    chosen = [
        args.primes is not None,
        args.limit is not None,
        args.file is not None,
        args.n is not None,
    ]
    if (args.n is None) != (args.gmax is None):
        raise UsageError("--n and --gmax must be given together")
    if sum(chosen) != 1:
        raise UsageError(
            "choose exactly one input source: --primes, --limit, --file, or --n/--gmax"
        )
    if args.primes is not None:
        return first_n_primes(args.primes)
    if args.limit is not None:
        return primes_up_to(args.limit)
    if args.file is not None:
        try:
            return load_sequence(Path(args.file))
        except OSError as exc:
            raise UsageError(f"cannot read sequence file: {exc}") from None
    return random_generalized(RandomModel(args.n, args.gmax, args.seed))


def _gate_triangle_size(o: Originator, cap: int) -> None:
    if o.n < 2:
        raise UsageError(f"a triangle needs at least two terms, got {o.n}")
    if o.n > cap:
        raise UsageError(
            f"{o.n} terms exceeds the triangle cap of {cap}; raise it with --cap"
        )


def _render_triangle_text(rows: list[list[int]]) -> str:
    width = max(len(str(v)) for row in rows for v in row)
    lines = [" ".join(str(v).ljust(width) for v in row) for row in rows]
    return "\n".join(lines)


def cmd_triangle(args: argparse.Namespace) -> int:
    o = _resolve_originator(args)
    _gate_triangle_size(o, args.cap)
    c = build_circuit(o)
    derived = [c.row(k).tolist() for k in range(1, c.n)]
    if args.format == "json":
        _emit(_json({"n": c.n, "rows": derived}))
    elif args.format == "csv":
        _emit("\n".join(",".join(map(str, row)) for row in derived))
    else:
        _emit(_render_triangle_text([o.terms.tolist()] + derived))
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    o = _resolve_originator(args)
    _gate_triangle_size(o, args.cap)
    c = build_circuit(o)
    iotas = path_lengths(c)
    taus = traces(c)
    kappa = circuit_length(c)
    steps = total_maximal_steps(c.n)
    if args.format == "json":
        _emit(
            _json(
                {
                    "n": c.n,
                    "total_maximal_steps": steps,
                    "circuit_length": kappa,
                    "path_lengths": iotas,
                    "traces": taus,
                }
            )
        )
    elif args.format == "csv":
        rows: list[list] = [["statistic", "index", "value"]]
        rows.append(["n", "", c.n])
        rows.append(["total_maximal_steps", "", steps])
        rows.append(["circuit_length", "", kappa])
        rows.extend(["path_length", k, v] for k, v in enumerate(iotas, start=1))
        rows.extend(["trace", s, v] for s, v in enumerate(taus, start=1))
        _emit(_csv(rows))
    else:
        _emit(
            "\n".join(
                [
                    f"n = {c.n}",
                    f"total_maximal_steps = {steps}",
                    f"circuit_length = {kappa}",
                    "path_lengths: " + " ".join(map(str, iotas)),
                    "traces: " + " ".join(map(str, taus)),
                ]
            )
        )
    return 0


def _report_status(r: BoundReport) -> str:
    if not r.precondition_met:
        return "vacuous"
    if r.holds:
        return "held"
    if is_equality_case(r):
        return "equality"
    return "FAILED"


def _witness_cell(r: BoundReport) -> str:
    return ";".join(f"{i}:{v}" for i, v in r.witnesses)


def cmd_check(args: argparse.Namespace) -> int:
    o = _resolve_originator(args)
    _gate_triangle_size(o, args.cap)
    c = build_circuit(o)
    reports = run_all_checks(c)
    summary = summarize(reports)
    if args.format == "json":
        _emit(
            _json(
                {
                    "reports": [r.to_json_dict() for r in reports],
                    "summary": summary,
                }
            )
        )
    elif args.format == "csv":
        rows: list[list] = [
            ["name", "lhs", "middle", "rhs", "holds", "precondition_met", "witnesses", "extra"]
        ]
        for r in reports:
            rows.append(
                [
                    r.name,
                    r.lhs,
                    "" if r.middle is None else r.middle,
                    r.rhs,
                    _flag(r.holds),
                    _flag(r.precondition_met),
                    _witness_cell(r),
                    json.dumps(r.extra, separators=(",", ":")) if r.extra else "",
                ]
            )
        _emit(_csv(rows))
    else:
        lines = []
        for r in reports:
            middle = f" middle={r.middle}" if r.middle is not None else ""
            lines.append(
                f"{_report_status(r):<8} {r.name}: lhs={r.lhs}{middle} rhs={r.rhs}"
            )
        lines.append(
            "summary: checked={checked} held={held} vacuous={vacuous} failed={failed}".format(
                **summary
            )
        )
        _emit("\n".join(lines))
    return 0 if summary["failed"] == 0 else 1


def _verify_text(report: VerifyReport, timing: bool) -> str:
    failure = (
        f"k={report.first_failure[0]} value={report.first_failure[1]}"
        if report.first_failure
        else "none"
    )
    stab = report.stabilization_row if report.stabilization_row is not None else "none"
    lines = [
        f"n = {report.n}",
        f"method = {report.method}",
        f"all_ones = {_flag(report.all_ones)}",
        f"max_order_checked = {report.max_order_checked}",
        f"first_failure = {failure}",
        f"stabilization_row = {stab}",
    ]
    if timing:
        lines.append(f"elapsed_ms = {round(report.elapsed * 1000.0, 3)}")
    return "\n".join(lines)


def cmd_verify(args: argparse.Namespace) -> int:
    o = _resolve_originator(args)
    if args.method == "naive":
        report = verify_naive(o)
    else:
        report = verify_frontier(o, args.scan_depth)
    if args.format == "json":
        _emit(_json(report.to_json_dict(timing=args.timing)))
    elif args.format == "csv":
        header = [
            "n",
            "method",
            "all_ones",
            "max_order_checked",
            "failure_order",
            "failure_value",
            "stabilization_row",
        ]
        row: list = [
            report.n,
            report.method,
            _flag(report.all_ones),
            report.max_order_checked,
            report.first_failure[0] if report.first_failure else "",
            report.first_failure[1] if report.first_failure else "",
            report.stabilization_row if report.stabilization_row is not None else "",
        ]
        if args.timing:
            header.append("elapsed_ms")
            row.append(round(report.elapsed * 1000.0, 3))
        _emit(_csv([header, row]))
    else:
        _emit(_verify_text(report, args.timing))
    return 0 if report.all_ones else 1


def _search_text(report: SearchReport, timing: bool) -> str:
    lines = [
        f"n = {report.n}",
        f"g_max = {report.g_max}",
        f"trials = {report.trials}",
        f"seed = {report.seed}",
        f"failures = {report.failures}",
        f"failure_rate = {report.failure_rate}",
    ]
    if report.failure_orders:
        lines.append(
            "failure_orders: "
            + " ".join(f"{k}:{count}" for k, count in report.failure_orders)
        )
    else:
        lines.append("failure_orders: none")
    if report.examples:
        lines.append("examples:")
        for case in report.examples:
            lines.append(
                f"  trial={case.trial} seed={case.seed} "
                f"failure_order={case.failure_order} failure_value={case.failure_value}"
            )
    else:
        lines.append("examples: none")
    if timing:
        lines.append(f"elapsed_ms = {round(report.elapsed * 1000.0, 3)}")
    return "\n".join(lines)


def cmd_search(args: argparse.Namespace) -> int:
    model = RandomModel(args.n, args.gmax, args.seed)
    report = search_counterexamples(
        model,
        args.trials,
        args.seed,
        scan_depth=args.scan_depth,
        dump_dir=args.dump_dir,
    )
    if args.format == "json":
        _emit(_json(report.to_json_dict(timing=args.timing)))
    elif args.format == "csv":
        header = [
            "n",
            "g_max",
            "trials",
            "seed",
            "scan_depth",
            "failures",
            "failure_rate",
            "failure_orders",
        ]
        row: list = [
            report.n,
            report.g_max,
            report.trials,
            report.seed,
            report.scan_depth,
            report.failures,
            report.failure_rate,
            ";".join(f"{k}:{count}" for k, count in report.failure_orders),
        ]
        if args.timing:
            header.append("elapsed_ms")
            row.append(round(report.elapsed * 1000.0, 3))
        _emit(_csv([header, row]))
    else:
        _emit(_search_text(report, args.timing))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gapcircuit",
        description="Difference triangles of integer sequences: "
        "build them, measure them, bound-check them, and verify that every "
        "derived row starts with 1.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    source = argparse.ArgumentParser(add_help=False)
    group = source.add_argument_group("input source (exactly one)")
    group.add_argument("--primes", type=int, metavar="N", help="the first N primes")
    group.add_argument("--limit", type=int, metavar="L", help="all primes up to L")
    group.add_argument(
        "--file",
        metavar="PATH",
        help="sequence file: integers separated by newlines or commas, '#' comments",
    )
    group.add_argument(
        "--n", type=int, metavar="N", help="length of a random even-gap sequence"
    )
    group.add_argument(
        "--gmax", type=int, metavar="G", help="largest gap for --n (must be even)"
    )
    group.add_argument(
        "--seed",
        type=int,
        default=0,
        metavar="S",
        help="seed for the random sequence (default: 0)",
    )

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument(
        "--format",
        choices=("json", "csv", "text"),
        default="json",
        help="output format (default: json)",
    )

    cap = argparse.ArgumentParser(add_help=False)
    cap.add_argument(
        "--cap",
        type=int,
        default=DEFAULT_TRIANGLE_CAP,
        metavar="N",
        help="largest originator to materialize as a triangle (default: %(default)s)",
    )

    timing = argparse.ArgumentParser(add_help=False)
    timing.add_argument(
        "--timing",
        action="store_true",
        help="include elapsed wall time in the report (breaks byte-for-byte determinism)",
    )

    p = sub.add_parser(
        "triangle",
        parents=[source, fmt, cap],
        help="print every derived row of the difference triangle",
    )
    p.set_defaults(func=cmd_triangle)

    p = sub.add_parser(
        "stats",
        parents=[source, fmt, cap],
        help="path lengths, circuit length, traces, and step counts",
    )
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser(
        "check",
        parents=[source, fmt, cap],
        help="evaluate every bound and identity on the circuit",
    )
    p.set_defaults(func=cmd_check)

    p = sub.add_parser(
        "verify",
        parents=[source, fmt, timing],
        help="check that every derived row starts with 1",
    )
    p.add_argument(
        "--method",
        choices=("naive", "frontier"),
        default="frontier",
        help="row-by-row sweep or early stabilization certificate (default: frontier)",
    )
    p.add_argument(
        "--scan-depth",
        type=int,
        default=DEFAULT_SCAN_DEPTH,
        metavar="K",
        help="rows to scan for a stable row before falling back (default: %(default)s)",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser(
        "search",
        parents=[fmt, timing],
        help="hunt for random even-gap sequences whose triangle breaks the property",
    )
    p.add_argument("--n", type=int, required=True, metavar="N", help="sequence length")
    p.add_argument(
        "--gmax", type=int, required=True, metavar="G", help="largest gap (must be even)"
    )
    p.add_argument(
        "--seed", type=int, default=0, metavar="S", help="search seed (default: 0)"
    )
    p.add_argument(
        "--trials", type=int, default=100, metavar="T", help="sequences to try (default: %(default)s)"
    )
    p.add_argument(
        "--scan-depth",
        type=int,
        default=DEFAULT_SCAN_DEPTH,
        metavar="K",
        help="verification scan depth per trial (default: %(default)s)",
    )
    p.add_argument(
        "--dump-dir",
        metavar="DIR",
        help="write kept failing sequences here as <seed>.txt files",
    )
    p.set_defaults(func=cmd_search)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GapCircuitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
