"""Command-line front end: construct, verify, bounds, benchmark.

Array file format: a header line ``CA N k t v`` (decimal, space-separated),
then N lines of k space-separated symbols in [0, v), then optionally comment
lines starting with '#'.  Symbols are always decimal integers.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import bounds
from .coverage import uncovered_list, verify_covering_array
from .groups import GroupKind
from .model import Parameters
from .pipeline import RunSpec, benchmark, run
from .stage1 import IterationCapExceeded, RetriesExhausted

REPORT_SCHEMA = "ca-forge/1"

CSV_HEADER = [
    "t", "k", "v", "group", "stage1", "stage2", "r_mult", "seed",
    "n_stage1", "uncovered", "rows_stage2", "N_final", "bound",
    "verified", "seconds",
]

EXIT_OK = 0
EXIT_NOT_COVERING = 1
EXIT_USAGE = 2
EXIT_CONSTRUCTION = 3
EXIT_VERIFY = 4


class ArrayFileError(Exception):
    pass


def serialize_array(array, p: Parameters) -> str:
    array = np.asarray(array)
    lines = [f"CA {array.shape[0]} {p.k} {p.t} {p.v}"]
    for row in array:
        lines.append(" ".join(str(int(x)) for x in row))
    return "\n".join(lines) + "\n"


def parse_array_file(text: str):
    """Returns (array, Parameters); raises ArrayFileError on malformed input."""
    lines = text.splitlines()
    if not lines:
        raise ArrayFileError("empty file")
    head = lines[0].split()
    if len(head) != 5 or head[0] != "CA":
        raise ArrayFileError(f"bad header: {lines[0]!r}")
    try:
        n, k, t, v = (int(x) for x in head[1:])
        p = Parameters(t=t, k=k, v=v)
    except ValueError as exc:
        raise ArrayFileError(str(exc)) from exc
    body = []
    for line in lines[1:]:
        if line.startswith("#") or not line.strip():
            continue
        body.append(line.split())
    if len(body) != n:
        raise ArrayFileError(f"expected {n} data rows, found {len(body)}")
    try:
        array = np.array([[int(x) for x in row] for row in body], dtype=np.int64)
    except ValueError as exc:
        raise ArrayFileError(str(exc)) from exc
    if n and array.shape != (n, k):
        raise ArrayFileError("row length does not match header k")
    if n == 0:
        array = array.reshape(0, k)
    if n and (array.min() < 0 or array.max() >= v):
        raise ArrayFileError("symbol out of range")
    return array, p


def _bound_row(p: Parameters) -> dict:
    rep = bounds.bound_report(p)
    return {
        "t": p.t, "k": p.k, "v": p.v,
        "slj": rep.slj, "discrete_slj": rep.discrete_slj,
        "two_stage": rep.two_stage, "gss": rep.gss,
        "cyclic_two_stage": rep.cyclic_two_stage,
        "frobenius_two_stage": rep.frobenius_two_stage,
        "lll_two_stage": rep.lll_two_stage,
        "optimistic_coloring": rep.optimistic_coloring,
        "conservative_coloring": rep.conservative_coloring,
    }


def cmd_construct(args) -> int:
    try:
        p = Parameters(t=args.t, k=args.k, v=args.v)
        spec = RunSpec(
            p=p, stage1=args.stage1, stage2=args.stage2,
            r_multiplier=args.r_mult, group=GroupKind(args.group),
            seed=args.seed, verify=args.verify,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        array, rep = run(spec)
    except (RetriesExhausted, IterationCapExceeded) as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    if rep.verified is False:
        return EXIT_VERIFY
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(serialize_array(array, p))
    if args.report:
        doc = {
            "schema": REPORT_SCHEMA,
            "n_stage1": rep.n_stage1,
            "uncovered_after_stage1": rep.uncovered_after_stage1,
            "rows_stage2": rep.rows_stage2,
            "N_final": rep.N_final,
            "bound_predicted": rep.bound_predicted,
            "retries": rep.retries,
            "wall_time": rep.wall_time,
            "verified": rep.verified,
        }
        with open(args.report, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    print(f"N={rep.N_final} (stage1 {rep.n_stage1}, stage2 {rep.rows_stage2}, "
          f"bound {rep.bound_predicted:.1f})")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        with open(args.infile) as fh:
            array, p = parse_array_file(fh.read())
    except (OSError, ArrayFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.t is not None or args.v is not None:
        t = args.t if args.t is not None else p.t
        v = args.v if args.v is not None else p.v
        try:
            p = Parameters(t=t, k=p.k, v=v)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    if verify_covering_array(array, p):
        print("covering array: OK")
        return EXIT_OK
    first = uncovered_list(array, p, cap=0).uncovered
    if first:
        item = first[0]
        print(f"not a covering array; first uncovered: "
              f"columns {item.columns} symbols {item.symbols}")
    return EXIT_NOT_COVERING


def cmd_bounds(args) -> int:
    try:
        k_max = args.k_max if args.k_max is not None else args.k
        if k_max < args.k:
            raise ValueError("k-max must be >= k")
        params = [Parameters(t=args.t, k=k, v=args.v) for k in range(args.k, k_max + 1)]
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rows = [_bound_row(p) for p in params]
    if args.format == "json":
        json.dump(rows, sys.stdout, indent=2)
        print()
    else:
        writer = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]))
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    return EXIT_OK


def parse_grid(text: str):
    """Grid files are blank-line-separated stanzas of key=value lines.

    Keys: t, k, v (required); stage1, stage2, group, r_mult, seed, verify.
    """
    specs = []
    for chunk in text.split("\n\n"):
        fields = {}
        for line in chunk.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"bad grid line: {line!r}")
            key, val = (part.strip() for part in line.split("=", 1))
            fields[key] = val
        if not fields:
            continue
        known = {"t", "k", "v", "stage1", "stage2", "group", "r_mult", "seed", "verify"}
        unknown = set(fields) - known
        if unknown:
            raise ValueError(f"unknown grid keys: {sorted(unknown)}")
        p = Parameters(t=int(fields["t"]), k=int(fields["k"]), v=int(fields["v"]))
        specs.append(RunSpec(
            p=p,
            stage1=fields.get("stage1", "rand"),
            stage2=fields.get("stage2", "naive"),
            r_multiplier=float(fields.get("r_mult", 1.0)),
            group=GroupKind(fields.get("group", "trivial")),
            seed=int(fields.get("seed", 0)),
            verify=fields.get("verify", "false").lower() in ("1", "true", "yes"),
        ))
    return specs


def cmd_benchmark(args) -> int:
    try:
        with open(args.grid) as fh:
            grid = parse_grid(fh.read())
        if not grid:
            raise ValueError("grid file defines no runs")
    except (OSError, KeyError, ValueError) as exc:
        print(f"error: malformed grid: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rows = benchmark(grid)
    with open(args.out, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_HEADER)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="caforge",
        description="Two-stage covering array construction and bound calculator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a covering array")
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--v", type=int, required=True)
    c.add_argument("--stage1", choices=["rand", "mt"], default="rand")
    c.add_argument("--stage2", choices=["naive", "greedy", "col", "den"],
                   default="naive")
    c.add_argument("--r-mult", type=float, default=1.0)
    c.add_argument("--group", choices=[g.value for g in GroupKind],
                   default="trivial")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out", default=None)
    c.add_argument("--report", default=None)
    c.add_argument("--verify", action="store_true")
    c.set_defaults(func=cmd_construct)

    ver = sub.add_parser("verify", help="check an array file for full coverage")
    ver.add_argument("--in", dest="infile", required=True)
    ver.add_argument("--t", type=int, default=None)
    ver.add_argument("--v", type=int, default=None)
    ver.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="print every size bound for (t, k, v)")
    b.add_argument("--t", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--v", type=int, required=True)
    b.add_argument("--k-max", type=int, default=None)
    b.add_argument("--format", choices=["csv", "json"], default="csv")
    b.set_defaults(func=cmd_bounds)

    bench = sub.add_parser("benchmark", help="run a grid of constructions")
    bench.add_argument("--grid", required=True)
    bench.add_argument("--out", required=True)
    bench.set_defaults(func=cmd_benchmark)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
