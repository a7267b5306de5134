"""Command-line front end: reduce forms, construct extremal points, enumerate
minimal points, verify sequence files, and print Pell data.

Exit codes: 0 success, 2 input error, 3 mathematical rejection, 4 invariant failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from .extremal import (
    ExtremalSequence,
    InvariantViolation,
    UnsupportedConstruction,
    extend,
    limit_point,
    seed_triple,
)
from .minpoints import (
    RationalTargetError,
    enumerate_minimal,
    estimate_lambda,
    rigidity_check,
)
from .numerics import CertifiedReal, Dyadic, PrecisionCapError
from .pell import cf_expansion, find_seed_pair, fundamental_solution, next_solution
from .quadform import FormRejected, TernaryQuadraticForm, max_norm, reduce_form
from .targets import ExtremalTarget, SqrtPairTarget

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_MATH = 3
EXIT_INVARIANT = 4


def _dyadic_json(d: Dyadic) -> dict:
    return {"exp": d.exp, "man": str(d.man)}


def _real_json(x: CertifiedReal) -> dict:
    return {"hi": _dyadic_json(x.hi), "lo": _dyadic_json(x.lo), "precision": x.precision}


def _dump(obj, fp=None) -> str:
    text = json.dumps(obj, sort_keys=True, indent=2)
    if fp is not None:
        fp.write(text + "\n")
    return text


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_reduce(args) -> int:
    try:
        phi = TernaryQuadraticForm.from_json(Path(args.form).read_text())
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot read form: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        red = reduce_form(phi)
    except FormRejected as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_MATH
    if not red.verify(phi):  # defensive re-check before printing
        print("internal error: reduction identity failed", file=sys.stderr)
        return EXIT_INVARIANT
    out = {
        "case": red.case,
        "mu": str(red.mu),
        "T": [[str(x) for x in row] for row in red.T],
        "b": str(red.b),
        "c": str(red.c),
    }
    print(_dump(out))
    return EXIT_OK


def cmd_construct(args) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    try:
        seq = seed_triple(args.b, args.c)
        extend(seq, args.depth)
        enclosure = limit_point(seq, Fraction(1, 2**args.precision))
    except UnsupportedConstruction as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_MATH
    except PrecisionCapError as exc:
        print(f"precision cap: {exc}", file=sys.stderr)
        return EXIT_MATH
    except InvariantViolation as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    with open(outdir / "sequence.jsonl", "w") as fp:
        for i in range(-1, args.depth + 1):
            y = seq.y(i)
            rec = {
                "i": i,
                "norm_bits": max_norm(y).bit_length(),
                "t": str(seq.t(i)),
                "y": [str(v) for v in y],
            }
            fp.write(json.dumps(rec, sort_keys=True) + "\n")
    with open(outdir / "xi.json", "w") as fp:
        _dump(
            {
                "b": str(args.b),
                "c": str(args.c),
                "depth": args.depth,
                "precision": args.precision,
                "seed": [str(v) for v in seq.seed],
                "tail_bound": _real_json(enclosure.tail_bound),
                "xi1": _real_json(enclosure.xi1),
                "xi2": _real_json(enclosure.xi2),
            },
            fp,
        )
    print(f"wrote {outdir / 'sequence.jsonl'} and {outdir / 'xi.json'}")
    return EXIT_OK


def _target_from_args(args):
    if args.xi is not None:
        obj = json.loads(Path(args.xi).read_text())
        return ExtremalTarget(int(obj["b"]), int(obj["c"]))
    if args.sqrt is not None:
        a, b = (int(s) for s in args.sqrt.split(","))
        return SqrtPairTarget(a, b)
    if args.b is not None and args.c is not None:
        return ExtremalTarget(args.b, args.c)
    raise ValueError("need --b/--c, --xi FILE, or --sqrt A,B")


def cmd_enumerate(args) -> int:
    if args.xmax <= 0:
        print("error: --xmax must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        target = _target_from_args(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        records = enumerate_minimal(target, args.xmax, bits=args.precision)
    except RationalTargetError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_MATH
    except UnsupportedConstruction as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_MATH
    except PrecisionCapError as exc:
        print(f"precision cap: {exc}", file=sys.stderr)
        return EXIT_MATH
    report = estimate_lambda(records)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    hat_by_index = dict(report.lambda_hats)
    rows = []
    for i, rec in enumerate(records):
        rows.append(
            {
                "i": i,
                "X_i": str(rec.X),
                "x1": str(rec.x[1]),
                "x2": str(rec.x[2]),
                "L_i_lo": repr(float(rec.L.lo)),
                "L_i_hi": repr(float(rec.L.hi)),
                "lambda_hat_i": repr(hat_by_index[i]) if i in hat_by_index else "",
            }
        )
    if args.format == "csv":
        with open(outdir / "records.csv", "w", newline="") as fp:
            writer = csv.DictWriter(
                fp, fieldnames=["i", "X_i", "x1", "x2", "L_i_lo", "L_i_hi", "lambda_hat_i"]
            )
            writer.writeheader()
            writer.writerows(rows)
    else:
        with open(outdir / "records.json", "w") as fp:
            _dump(rows, fp)
    rigidity = None
    if isinstance(target, ExtremalTarget):
        phi = TernaryQuadraticForm(1, -target.b, -target.c)
        rig = rigidity_check(phi, records)
        rigidity = {
            "checks": [{"k": k, "passed": ok} for k, ok in rig.checks],
            "first_holding": rig.first_holding,
            "insufficient_data": rig.insufficient,
        }
    with open(outdir / "report.json", "w") as fp:
        _dump(
            {
                "alpha": repr(report.alpha),
                "c_lower": repr(report.c_lower),
                "independence_set": report.independence_set,
                "lambda_hats": [[i, repr(h)] for i, h in report.lambda_hats],
                "rigidity": rigidity,
                "summary": repr(report.summary),
                "theta": repr(report.theta),
            },
            fp,
        )
    print(f"{len(records)} records; lambda-hat summary {report.summary:.5f}")
    return EXIT_OK


def _infer_bc(rows) -> tuple[int, int]:
    for row in rows:
        y = row["y"]
        if y[1] and not y[2]:
            b_num, b_den = y[0] * y[0] - 1, y[1] * y[1]
            if b_num % b_den:
                raise ValueError("cannot infer b")
            b = b_num // b_den
            break
    else:
        raise ValueError("cannot infer b")
    for row in rows:
        y = row["y"]
        if y[2]:
            c_num = y[0] * y[0] - b * y[1] * y[1] - 1
            if c_num % (y[2] * y[2]):
                raise ValueError("cannot infer c")
            return b, c_num // (y[2] * y[2])
    raise ValueError("cannot infer c")


def cmd_verify(args) -> int:
    try:
        lines = Path(args.infile).read_text().strip().splitlines()
        if not lines:
            raise ValueError("empty file")
        rows = []
        for line in lines:
            obj = json.loads(line)
            rows.append(
                {
                    "i": int(obj["i"]),
                    "y": tuple(int(v) for v in obj["y"]),
                    "t": int(obj["t"]),
                    "norm_bits": int(obj["norm_bits"]),
                }
            )
        rows.sort(key=lambda r: r["i"])
        b, c = (args.b, args.c) if args.b and args.c else _infer_bc(rows)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot parse sequence file: {exc}", file=sys.stderr)
        return EXIT_INPUT
    phi = TernaryQuadraticForm(1, -b, -c)
    ys = [r["y"] for r in rows]
    ts = [r["t"] for r in rows]
    failures = 0

    def check(name: str, ok: bool, index) -> None:
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'}  {name} @ i={index}")
        if not ok:
            failures += 1

    from .quadform import det3

    for k, r in enumerate(rows):
        check("unit value of the form", phi(ys[k]) == 1, r["i"])
        check("norm_bits", max_norm(ys[k]).bit_length() == r["norm_bits"], r["i"])
    for k in range(len(rows) - 1):
        check(
            "t matches the bilinear form",
            ts[k] == phi.bilinear(ys[k + 1], ys[k]),
            rows[k]["i"],
        )
    if len(rows) >= 3:
        d0 = det3(ys[2], ys[1], ys[0])
        check("seed independence", d0 != 0, rows[2]["i"])
        for k in range(3, len(rows)):
            check("constant determinant", abs(det3(ys[k], ys[k - 1], ys[k - 2])) == abs(d0), rows[k]["i"])
            check(
                "vector recurrence",
                ys[k] == tuple(ts[k - 1] * a - bb for a, bb in zip(ys[k - 1], ys[k - 3])),
                rows[k]["i"],
            )
            check("t recurrence", ts[k] == ts[k - 1] * ts[k - 2] - ts[k - 3], rows[k]["i"])
    return EXIT_OK if failures == 0 else EXIT_INVARIANT


def cmd_pell(args) -> int:
    try:
        fund = fundamental_solution(args.b)
        first, second = find_seed_pair(args.b)
        sols = [fund]
        for _ in range(max(0, args.count - 1)):
            sols.append(next_solution(sols[-1]))
        expansion = cf_expansion(args.b, 12)
    except ValueError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_MATH
    print(
        _dump(
            {
                "b": str(args.b),
                "cf_expansion_prefix": expansion,
                "fundamental": {"m": str(fund.m), "n": str(fund.n)},
                "seed_pair": {
                    "first": {"m": str(first.m), "n": str(first.n)},
                    "second": {"m": str(second.m), "n": str(second.n)},
                },
                "solutions": [{"m": str(s.m), "n": str(s.n)} for s in sols],
            }
        )
    )
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conic-approx",
        description="Extremal approximation points on rational conics (exact arithmetic).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="reduce a ternary quadratic form to canonical shape")
    p.add_argument("--form", required=True, help="JSON file with coefficients a00..a12")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("construct", help="build an extremal sequence and its limit point")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--precision", type=int, default=128, help="enclosure width 2^-BITS")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("enumerate", help="enumerate minimal points of a target")
    p.add_argument("--b", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--xi", help="xi.json file from a previous construct run")
    p.add_argument("--sqrt", help="A,B for the target (1, sqrt(A), sqrt(B))")
    p.add_argument("--xmax", type=int, required=True)
    p.add_argument("--precision", type=int, default=None)
    p.add_argument("--out", default=".")
    p.add_argument("--format", choices=["json", "csv"], default="csv")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="re-check all invariants of a sequence file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--b", type=int)
    p.add_argument("--c", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pell", help="fundamental and successor Pell solutions")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--count", type=int, default=5)
    p.set_defaults(func=cmd_pell)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
