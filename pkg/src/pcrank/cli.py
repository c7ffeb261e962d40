"""Command-line interface: validate, rank, complete, and compare.

Exit codes are a stable contract: 0 success, 1 findings (check only),
2 input or validation error, 3 solver failure.  Failures print a single
machine-readable line to stderr (``CODE: detail``); results go to stdout or
``--output``.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import warnings
from pathlib import Path

from .arithmetic import solve_arithmetic
from .baselines import evm, gmm
from .errors import PcrankError
from .formats import Problem, parse_problem, serialize_problem, serialize_ranking
from .geometric import solve_geometric
from .matrix import DEFAULT_TOL, Partition, diagnose, fill_missing

_SOLVERS = {"arithmetic": solve_arithmetic, "geometric": solve_geometric}


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _emit(args, text: str) -> None:
    if args.output and args.output != "-":
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _format_of(args) -> str:
    if args.format:
        return args.format
    return "json" if args.input.lower().endswith(".json") else "csv"


def _load(args) -> Problem:
    known_text = _read_text(args.known) if args.known else None
    return parse_problem(
        _read_text(args.input),
        fmt=_format_of(args),
        known_text=known_text,
        force_reciprocal=args.force_reciprocal,
    )


def _solve_methods(problem: Problem, partition: Partition, methods, tol: float):
    return {name: _SOLVERS[name](problem.matrix, partition, tol=tol) for name in methods}


def _max_relative_difference(a, b) -> float:
    return max(abs(x - y) / max(abs(x), abs(y)) for x, y in zip(a, b))


def cmd_rank(args) -> int:
    problem = _load(args)
    partition = problem.partition
    methods = ["arithmetic", "geometric"] if args.method == "both" else [args.method]
    rankings = _solve_methods(problem, partition, methods, args.tol)
    if args.normalize:
        rankings = {name: r.normalized() for name, r in rankings.items()}

    fmt = _format_of(args)
    if len(methods) == 1:
        pairs = problem.values_in_original_order(rankings[methods[0]].values)
        _emit(args, serialize_ranking([p[0] for p in pairs], [p[1] for p in pairs], fmt))
        return 0
    columns = {
        name: dict(problem.values_in_original_order(rankings[name].values)) for name in methods
    }
    if fmt == "json":
        obj = {name: {label: float(f"{columns[name][label]:.12g}") for label in problem.original_labels}
               for name in methods}
        _emit(args, json.dumps(obj, indent=2) + "\n")
    else:
        lines = ["label," + ",".join(methods)]
        for label in problem.original_labels:
            lines.append(
                label + "," + ",".join(f"{columns[name][label]:.12g}" for name in methods)
            )
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_check(args) -> int:
    problem = _load(args)
    try:
        partition = problem.partition
    except PcrankError:
        partition = None
    report = diagnose(problem.matrix, partition, args.tol)

    lines = [
        f"alternatives: {problem.n} ({problem.n - len(problem.known)} unknown, "
        f"{len(problem.known)} known)"
    ]
    lines.append(f"reciprocity violations: {len(report.reciprocity_violations)}")
    for v in report.reciprocity_violations:
        lines.append(
            f"  {problem.labels[v.i]} vs {problem.labels[v.j]}: "
            f"{v.value:.12g} * {v.mirror:.12g} = {v.value * v.mirror:.12g}"
        )
    counts = ", ".join(
        f"{problem.labels[i]}={c}" for i, c in enumerate(report.undefined_counts)
    )
    lines.append(f"undefined comparisons per row: {counts}")
    if report.connectivity_ok is None:
        lines.append("connectivity: skipped (no usable known/unknown split)")
    elif report.connectivity_ok:
        lines.append("connectivity: ok")
    else:
        isolated = ", ".join(problem.labels[i] for i in report.isolated_unknowns)
        lines.append(f"connectivity: FAILED (unknowns not reaching any known: {isolated})")
    lines.append(
        f"triad deviations above tol {args.tol:g}: {len(report.triad_deviations)}"
    )
    for t in report.triad_deviations:
        lines.append(
            f"  ({problem.labels[t.i]}, {problem.labels[t.j]}, {problem.labels[t.k]}): "
            f"deviation {t.deviation:.6g}"
        )
    _emit(args, "\n".join(lines) + "\n")
    return 0 if report.clean else 1


def cmd_complete(args) -> int:
    problem = _load(args)
    ranking = _SOLVERS[args.method](problem.matrix, problem.partition, tol=args.tol)
    filled = fill_missing(problem.matrix, ranking.values)
    completed = dataclasses.replace(problem, matrix=filled)
    _emit(args, serialize_problem(completed, _format_of(args), args.number_style))
    return 0


def cmd_compare(args) -> int:
    problem = _load(args)
    partition = problem.partition
    rankings = _solve_methods(problem, partition, ["arithmetic", "geometric"], args.tol)
    columns = {name: rankings[name].normalized().values for name in rankings}
    if problem.matrix.is_complete:
        columns["evm"] = evm(problem.matrix).weights
        columns["gmm"] = gmm(problem.matrix).weights

    position = {label: idx for idx, label in enumerate(problem.labels)}
    names = list(columns)
    lines = ["# priorities rescaled to sum 1 for comparability"]
    lines.append("label," + ",".join(names))
    for label in problem.original_labels:
        idx = position[label]
        lines.append(label + "," + ",".join(f"{columns[name][idx]:.12g}" for name in names))
    for a_idx in range(len(names)):
        for b_idx in range(a_idx + 1, len(names)):
            a, b = names[a_idx], names[b_idx]
            diff = _max_relative_difference(columns[a], columns[b])
            lines.append(f"max relative difference {a}/{b}: {diff:.6g}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcrank",
        description="Rank decision alternatives from (possibly incomplete) pairwise "
        "comparisons, given fixed priorities for a reference subset.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="problem file (CSV or JSON), or - for stdin")
    common.add_argument(
        "--format", choices=["csv", "json"], help="file format (default: by extension)"
    )
    common.add_argument(
        "--known", metavar="PATH", help="separate known-priorities file (label,priority rows)"
    )
    common.add_argument(
        "--tol", type=float, default=DEFAULT_TOL,
        help="relative tolerance for reciprocity/consistency checks (default %(default)g)",
    )
    common.add_argument(
        "--force-reciprocal", action="store_true",
        help="repair the lower triangle from the upper while loading",
    )
    common.add_argument("--output", metavar="PATH", help="write output here instead of stdout")

    rank = sub.add_parser("rank", parents=[common], help="compute the priority ranking")
    rank.add_argument(
        "--method", choices=["arithmetic", "geometric", "both"], default="both",
        help="ranking method (default both, printed side by side)",
    )
    rank.add_argument(
        "--normalize", action="store_true",
        help="rescale priorities to sum to 1 (presentation only: alters the known values)",
    )
    rank.set_defaults(handler=cmd_rank)

    check = sub.add_parser("check", parents=[common], help="validate a problem file")
    check.set_defaults(handler=cmd_check)

    complete = sub.add_parser(
        "complete", parents=[common],
        help="fill missing comparisons from the solved ranking",
    )
    complete.add_argument(
        "--method", choices=["arithmetic", "geometric"], required=True,
        help="method whose ranking supplies the fill ratios",
    )
    complete.add_argument(
        "--number-style", choices=["decimal", "fraction"], default="decimal",
        help="how to print values (default decimal, 12 significant digits)",
    )
    complete.set_defaults(handler=cmd_complete)

    compare = sub.add_parser(
        "compare", parents=[common],
        help="tabulate all applicable methods side by side",
    )
    compare.set_defaults(handler=cmd_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    seen: set[str] = set()

    def show_warning(message, category, filename, lineno, file=None, line=None):
        text = str(message)
        if text not in seen:
            seen.add(text)
            print(f"WARNING: {text}", file=sys.stderr)

    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = show_warning
            return args.handler(args)
    except PcrankError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"IO_ERROR: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
