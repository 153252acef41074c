"""Command-line interface.

Subcommands: convert (quaternion stream -> matrix stream), verify (symbolic
and grid equivalence of the two kernels), count (op census vs published
figures), netlist (DOT / JSON datapath emission), sweep (fixed-point error
table), bench (software timing, informational only).

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import statistics
import sys
import time
from fractions import Fraction

from . import precision
from .datapath import (
    build_direct_graph,
    build_direct_graph_expanded,
    build_logan_graph,
    build_logan_graph_expanded,
    emit_dot,
    emit_netlist_json,
)
from .logan import LOGAN_ADDSUB_BOUND, rotmat_logan
from .polynomial import grid_equivalence, verify_entrywise_identity
from .profiles import (
    FLOAT64,
    RATIONAL,
    FixedPointProfile,
    ScalarProfile,
    parse_q_format,
)
from .quaternion import Quaternion, ZeroQuaternionError, normalize, rotmat_direct
from .logan import op_census_logan
from .quaternion import op_census_direct

KERNELS = {"direct": rotmat_direct, "logan": rotmat_logan}
DEFAULT_PROFILE_ENV = "QUATROT_DEFAULT_PROFILE"


class InputError(ValueError):
    """Unusable input record; message carries the line number."""


def _make_profile(spec: str) -> ScalarProfile:
    if spec == "f64":
        return FLOAT64
    if spec == "rational":
        return RATIONAL
    if spec.startswith("fixed:"):
        return FixedPointProfile(parse_q_format(spec[len("fixed:"):]))
    raise ValueError(f"unknown profile {spec!r}; use f64, rational, or fixed:Q<i>.<f>")


def _parse_record(line: str, lineno: int, rational: bool):
    line = line.strip()
    try:
        if line.startswith("{"):
            doc = json.loads(line)
            values = doc["q"]
        else:
            values = line.split(",")
        if len(values) != 4:
            raise ValueError(f"expected 4 components, got {len(values)}")
        if rational:
            parsed = [Fraction(str(v)) for v in values]
        else:
            parsed = [float(v) for v in values]
            if not all(math.isfinite(v) for v in parsed):
                raise ValueError("components must be finite")
        return parsed
    except (ValueError, KeyError, TypeError, ZeroDivisionError, json.JSONDecodeError) as exc:
        raise InputError(f"line {lineno}: {exc}") from exc


def _shortest_float(v: float) -> str:
    # repr is shortest round-trip; integral values drop the trailing ".0"
    if v.is_integer() and abs(v) <= 2**53:
        return str(int(v))
    return repr(v)


def _format_value(v, profile: ScalarProfile):
    if isinstance(profile, FixedPointProfile):
        return _shortest_float(profile.to_float(v))
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return _shortest_float(v)
    return str(v)


def _json_value(v, profile: ScalarProfile):
    if isinstance(profile, FixedPointProfile):
        v = profile.to_float(v)
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    v = float(v)
    return int(v) if v.is_integer() and abs(v) <= 2**53 else v


def cmd_convert(args) -> int:
    try:
        profile = _make_profile(args.profile)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    kernel = KERNELS[args.method]
    rational = isinstance(profile, type(RATIONAL))

    stream = sys.stdin if args.input == "-" else open(args.input, "r", encoding="utf-8")
    try:
        for lineno, line in enumerate(stream, start=1):
            if not line.strip():
                continue
            try:
                values = _parse_record(line, lineno, rational)
                if args.normalize:
                    q = normalize(Quaternion(*[float(v) for v in values]))
                    values = q.components()
                q = Quaternion(*(profile.from_real(v) for v in values))
            except (InputError, ZeroQuaternionError) as exc:
                print(f"error: {exc}", file=sys.stderr)
                return 2
            matrix = kernel(q, profile)
            if args.format == "json":
                print(json.dumps({"matrix": [_json_value(v, profile) for v in matrix.flat()]}))
            else:
                print(",".join(_format_value(v, profile) for v in matrix.flat()))
    finally:
        if stream is not sys.stdin:
            stream.close()
    return 0


def cmd_verify(args) -> int:
    report = verify_entrywise_identity()
    for check in report.checks:
        print(f"symbolic {check}")
    grid = grid_equivalence(args.grid_bound)
    mismatches = 0 if grid.passed else 1
    print(f"grid bound {args.grid_bound}: {grid.cases} cases, {mismatches} mismatches")
    if not grid.passed:
        print(f"first counterexample: q = {grid.counterexample}")
    if report.all_passed and grid.passed:
        print("verification passed: 9/9 entries identical")
        return 0
    for check in report.failures():
        print(f"FAILED entry {check.entry}: difference {check.difference}")
    return 1


def cmd_count(args) -> int:
    if args.method == "direct":
        ledger = op_census_direct()
        claimed = {"mul": 6, "square": 4, "addsub": 15, "double": 6}
        note = "published census: 6 mul, 4 square, 15 add, 6 shift"
    else:
        ledger = op_census_logan()
        claimed = {"mul": 0, "square": 10, "addsub": LOGAN_ADDSUB_BOUND, "double": 0}
        note = (
            f"published bound: 10 squarings, {LOGAN_ADDSUB_BOUND} additions; "
            f"this assembly achieves {ledger.addsub_count}"
        )
    out = {k: v for k, v in ledger.as_dict().items() if k != "halve"}
    out["claimed"] = claimed
    out["note"] = note
    print(json.dumps(out))
    return 0


def cmd_netlist(args) -> int:
    if args.method == "direct":
        g = build_direct_graph_expanded() if args.no_cse else build_direct_graph()
    else:
        g = build_logan_graph_expanded() if args.no_cse else build_logan_graph()
    sys.stdout.write(emit_dot(g) if args.out == "dot" else emit_netlist_json(g))
    return 0


def cmd_sweep(args) -> int:
    try:
        frac_bits = tuple(int(f) for f in args.frac_bits.split(","))
        cfg = precision.SweepConfig(
            frac_bits=frac_bits,
            int_bits=args.int_bits,
            samples=args.samples,
            seed=args.seed,
            kernel=args.kernel,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = precision.sweep(cfg)
    sys.stdout.write(report.to_csv() if args.csv else report.render_table())
    return 0


def _time_scalar(kernel, q, profile, n: int) -> float:
    start = time.perf_counter()
    for _ in range(n):
        kernel(q, profile)
    return (time.perf_counter() - start) / n


def cmd_bench(args) -> int:
    from .batch import FLOAT_KERNELS
    from .precision import sample_unit_quaternions

    n = args.samples
    q = Quaternion(0.5, 0.5, 0.5, 0.5)
    fmt = parse_q_format("Q3.12")
    print(f"software timing over {n} conversions, median of 5 runs")
    print("(informational only: says nothing about hardware area or power)")
    for method, kernel in KERNELS.items():
        for label, profile in (("f64", FLOAT64), ("fixed:Q3.12", FixedPointProfile(fmt))):
            qq = Quaternion(*(profile.from_real(v) for v in q.components()))
            per_call = statistics.median(
                _time_scalar(kernel, qq, profile, n) for _ in range(5)
            )
            print(f"{method:6s} {label:12s} {per_call * 1e9:10.1f} ns/conversion (scalar)")
    batch = sample_unit_quaternions(max(n, 1000), seed=0)
    for method, fn in FLOAT_KERNELS.items():
        times = []
        for _ in range(5):
            start = time.perf_counter()
            fn(batch)
            times.append(time.perf_counter() - start)
        per_call = statistics.median(times) / len(batch)
        print(
            f"{method:6s} {'f64 batch':12s} {per_call * 1e9:10.1f} ns/conversion "
            f"({1.0 / per_call:,.0f}/s)"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quatrot",
        description="Quaternion to rotation matrix, with and without multipliers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    default_profile = os.environ.get(DEFAULT_PROFILE_ENV, "f64")

    p = sub.add_parser("convert", help="convert quaternion records to matrices")
    p.add_argument("--method", choices=("direct", "logan"), default="logan")
    p.add_argument("--profile", default=default_profile,
                   help="f64, rational, or fixed:Q<i>.<f> (default from "
                        f"${DEFAULT_PROFILE_ENV} or f64)")
    p.add_argument("--input", default="-", help="input path or - for stdin")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--normalize", action="store_true",
                   help="scale each quaternion to unit norm first")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("verify", help="prove the two kernels identical")
    p.add_argument("--grid-bound", type=int, default=3)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="operation census for one kernel")
    p.add_argument("--method", choices=("direct", "logan"), required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("netlist", help="emit the datapath graph")
    p.add_argument("--method", choices=("direct", "logan"), required=True)
    p.add_argument("--out", choices=("dot", "json"), default="json")
    p.add_argument("--no-cse", action="store_true",
                   help="emit the naive per-entry expansion")
    p.set_defaults(func=cmd_netlist)

    p = sub.add_parser("sweep", help="fixed-point error sweep")
    p.add_argument("--frac-bits", default="8,12,16,20")
    p.add_argument("--int-bits", type=int, default=3)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kernel", choices=("direct", "logan", "both"), default="both")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bench", help="software micro-benchmarks")
    p.add_argument("--samples", type=int, default=10000)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
