"""Command-line front end.

Subcommands: ``table`` (family values over a range), ``series`` (closed-form
coefficient dump), ``verify`` (identity checks), ``map`` (bijection traces)
and ``selftest`` (the full acceptance suite).

Exit codes: 0 success, 1 verification/selftest failure, 2 usage error,
3 resource limit, 4 domain violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import bijections, families, identities, qseries
from .errors import (
    DomainError,
    InvalidPartitionError,
    PartlabError,
    ResourceLimitError,
    UnknownFamilyError,
    UnknownIdentityError,
    UnsupportedFamilyError,
)
from .partition import format_partition, parse_partition

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_DOMAIN = 4

_PARAM_FLAGS = ("t", "p", "k", "r", "i", "alpha", "offset")


def _collect_params(args: argparse.Namespace) -> dict[str, int]:
    return {name: getattr(args, name) for name in _PARAM_FLAGS
            if getattr(args, name, None) is not None}


def _parse_range(tokens: list[str]) -> tuple[int, int]:
    if len(tokens) == 1 and ".." in tokens[0]:
        lo, _, hi = tokens[0].partition("..")
        return int(lo), int(hi)
    if len(tokens) == 1:
        n = int(tokens[0])
        return n, n
    if len(tokens) == 2:
        return int(tokens[0]), int(tokens[1])
    raise ValueError(f"expected N, N..M or two endpoints, got {tokens!r}")


def _emit_rows(rows: list[tuple[int, int]], fmt: str, value_name: str = "value") -> None:
    if fmt == "json":
        print(json.dumps([{"n": n, value_name: v} for n, v in rows]))
    elif fmt == "pretty":
        width = max((len(str(n)) for n, _ in rows), default=1)
        print(f"{'n':>{width}}  {value_name}")
        for n, v in rows:
            print(f"{n:>{width}}  {v}")
    else:
        for n, v in rows:
            print(f"{n},{v}")


class _UsageError(ValueError):
    """Bad command arguments (exit code 2)."""


def _cmd_table(args: argparse.Namespace) -> int:
    # Family/parameter problems are bad arguments here, not domain violations.
    try:
        params = _collect_params(args)
        lo, hi = _parse_range(args.range)
        if lo < 0 or hi < lo:
            raise _UsageError(f"bad range {lo}..{hi}")
        rows = []
        for n in range(lo, hi + 1):
            if args.engine == "series":
                rows.append((n, families.count_series(args.family, n, params, order=args.order)))
            else:
                rows.append((n, families.count_enum(args.family, n, params, cap=args.max_n)))
    except DomainError as exc:
        raise _UsageError(str(exc)) from exc
    _emit_rows(rows, args.format)
    return EXIT_OK


def _cmd_series(args: argparse.Namespace) -> int:
    try:
        params = _collect_params(args)
        series = qseries.gf_family(args.family, families.normalize_params(args.family, params),
                                   args.order)
    except DomainError as exc:
        raise _UsageError(str(exc)) from exc
    rows = list(enumerate(series.coeffs))
    _emit_rows(rows, args.format, value_name="coefficient")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.n_max is not None and args.n_max < 1:
        raise _UsageError(f"--n-max must be >= 1, got {args.n_max}")
    ids = None if args.identity == "all" else [args.identity]
    params = _collect_params(args)
    try:
        reports = identities.verify_cells(ids=ids, params=params or None,
                                          n_max=args.n_max, engine=args.engine,
                                          jobs=args.jobs)
    except DomainError as exc:
        raise _UsageError(str(exc)) from exc
    if args.format == "json":
        print(identities.reports_to_json(reports))
    elif args.format == "csv":
        print(identities.reports_to_csv(reports), end="")
    else:
        for r in reports:
            cell = identities.format_params(dict(r.params)) or "-"
            line = f"{r.id:12s} {cell:18s} engine={r.engine:6s} n_max={r.n_max:<4d} {r.status}"
            if r.counterexample:
                ce = r.counterexample
                line += f"  first at n={ce.n}: lhs={ce.lhs} rhs={ce.rhs}"
            print(line)
        if any(r.id in identities.I15_PAIR for r in reports):
            for p in sorted({dict(r.params).get("p") for r in reports
                             if r.id in identities.I15_PAIR}):
                verdict = identities.adjudicate_orientation(p, args.n_max or 30)
                print(f"orientation verdict (p={p}): {verdict}")
    return EXIT_OK if identities.overall_ok(reports) else EXIT_FAIL


def _cmd_map(args: argparse.Namespace) -> int:
    partition = parse_partition(args.partition)
    params = _collect_params(args)
    if args.bijection == "glaisher":
        t = params.get("t")
        if t is None:
            raise _UsageError("map glaisher needs --t")
        result = bijections.glaisher_inv(t, partition) if args.inverse \
            else bijections.glaisher(t, partition)
        print(format_partition(result))
        return EXIT_OK
    if args.bijection == "genr":
        missing = [k for k in ("p", "k", "r") if k not in params]
        if missing:
            raise _UsageError(f"map genr needs --p --k --r (missing {missing})")
        trace = (bijections.genr_d_to_f if args.inverse else bijections.genr_f_to_d)(
            params["p"], params["k"], params["r"], partition)
    elif args.bijection == "var0":
        if "r" not in params:
            raise _UsageError("map var0 needs --r 0|1")
        trace = bijections.var0_map("inverse" if args.inverse else "forward",
                                    params["r"], partition)
    elif args.bijection == "dpk":
        missing = [k for k in ("p", "k") if k not in params]
        if missing:
            raise _UsageError(f"map dpk needs --p --k (missing {missing})")
        trace = (bijections.dp_to_dpk if args.inverse else bijections.dpk_to_dp)(
            params["p"], params["k"], partition)
    else:
        raise _UsageError(f"unknown bijection {args.bijection!r}")
    if args.format == "json":
        payload = {
            "input": format_partition(trace.input),
            "output": format_partition(trace.output),
            "steps": [
                {"label": s.label,
                 "value": format_partition(s.value) if not isinstance(s.value, str) else s.value}
                for s in trace.steps
            ],
        }
        print(json.dumps(payload))
    else:
        for step in trace.steps:
            value = step.value if isinstance(step.value, str) else format_partition(step.value)
            print(f"{step.label}: {value}")
        print(format_partition(trace.output))
    return EXIT_OK


def _cmd_selftest(args: argparse.Namespace) -> int:
    from . import acceptance

    results = acceptance.run_all(numbers=args.only, echo=print)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    for name in _PARAM_FLAGS:
        parser.add_argument(f"--{name}", type=int, default=None,
                            help=f"family/identity parameter {name}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="partlab",
        description="Partition-identity verification lab: enumeration oracle, "
                    "series engine, bijections and identity checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="tabulate a counting family over a range of n")
    p_table.add_argument("family", help="family identifier, e.g. d_e, a_r, f_pkr")
    p_table.add_argument("range", nargs="+", help="N, N..M, or two endpoints")
    _add_param_flags(p_table)
    p_table.add_argument("--engine", choices=("enum", "series"), default="enum")
    p_table.add_argument("--format", choices=("csv", "json", "pretty"), default="csv")
    p_table.add_argument("--max-n", type=int, default=None, help="enumeration cap override")
    p_table.add_argument("--order", type=int, default=None, help="series order override")
    p_table.set_defaults(func=_cmd_table)

    p_series = sub.add_parser("series", help="dump closed-form coefficients as n,coefficient rows")
    p_series.add_argument("family")
    _add_param_flags(p_series)
    p_series.add_argument("--order", type=int, default=qseries.DEFAULT_ORDER)
    p_series.add_argument("--format", choices=("csv", "json", "pretty"), default="csv")
    p_series.set_defaults(func=_cmd_series)

    p_verify = sub.add_parser("verify", help="check registered identities")
    p_verify.add_argument("identity", help="identity id (I1..I16, I15-swapped) or 'all'")
    _add_param_flags(p_verify)
    p_verify.add_argument("--n-max", type=int, default=None)
    p_verify.add_argument("--engine", choices=("enum", "series", "both"), default=None)
    p_verify.add_argument("--format", choices=("csv", "json", "pretty"), default="pretty")
    p_verify.add_argument("--jobs", type=int, default=1, help="parallel verification cells")
    p_verify.set_defaults(func=_cmd_verify)

    p_map = sub.add_parser("map", help="apply a bijection and print its trace")
    p_map.add_argument("bijection", choices=("glaisher", "genr", "dpk", "var0"))
    p_map.add_argument("partition", help="partition text, e.g. '13^10,7^30,1^11' or '-'")
    _add_param_flags(p_map)
    p_map.add_argument("--inverse", action="store_true", help="apply the inverse direction")
    p_map.add_argument("--format", choices=("json", "pretty"), default="pretty")
    p_map.set_defaults(func=_cmd_map)

    p_self = sub.add_parser("selftest", help="run the acceptance suite")
    p_self.add_argument("--only", type=int, action="append", default=None,
                        help="run only the given criterion number (repeatable)")
    p_self.set_defaults(func=_cmd_selftest)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (InvalidPartitionError, UnknownFamilyError, UnknownIdentityError,
            UnsupportedFamilyError, _UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except bijections.LemmaViolation as exc:
        print(f"internal defect: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PartlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
