"""``hyperxor`` command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 math/domain/capacity error,
3 negative diagonalizability verdict, 4 property failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from . import kernels
from .algebra import MAX_TABLE_UNITS, PRESET_HELP, QUATERNION_TABLES, AlgebraSignature, resolve, tables
from .bench import COLUMNS, bench_sweep
from .conjugate import ConjugateExpr, eval_expr, polar_decompose, product
from .diagonal import build_T, check_diagonal_conditions, mul_diagonal, random_element, require_diagonal
from .element import MultiVector, format_coeffs, format_mv, max_deviation, mul_naive, parse_coeffs
from .errors import CapacityError, DomainError, HyperxorError, UnknownPresetError
from .verify import FAIL, PASS, SKIP, run_suite

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_NEGATIVE, EXIT_PROPERTY = 0, 1, 2, 3, 4
MAX_TEXT_TABLE_UNITS = 6
MAX_SHOWN_T_UNITS = 4
_GLYPH = {1: "+", -1: "-", 0: "0"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def _sizes(text: str) -> list[int]:
    out = []
    try:
        for part in text.split(","):
            lo, _, hi = part.partition("-")
            out.extend(range(int(lo), int(hi or lo) + 1))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}; use e.g. 2-10 or 4,8") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", required=True, help=f"preset ({PRESET_HELP}) or JSON spec path")
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--seed", type=_seed, default=0, help="random seed (default 0)")
    common.add_argument("--tol", type=_positive_float, default=None)
    common.add_argument("--backend", choices=kernels.BACKENDS, default=None,
                        help=f"kernel backend (default from ${kernels.ENV_FLAG})")

    parser = _Parser(prog="hyperxor", description="Hypercomplex algebras with XOR-indexed bases.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("tables", parents=[common], help="print multiplier and index tables")
    sub.add_parser("diag", parents=[common], help="diagonalizability report")

    p = sub.add_parser("mul", parents=[common], help="multiply two elements")
    p.add_argument("--lhs", required=True, help="comma-separated coefficients or 'random'")
    p.add_argument("--rhs", required=True, help="comma-separated coefficients or 'random'")
    p.add_argument("--engine", choices=("naive", "diagonal", "both"), default="naive")
    p.add_argument("--positive", action="store_true", help="random operands get positive diagonal coordinates")

    p = sub.add_parser("verify", parents=[common], help="run the seeded property suite")
    p.add_argument("--cases", type=_positive_int, default=100)

    p = sub.add_parser("bench", parents=[common], help="time naive vs diagonal products")
    p.add_argument("--reps", type=_positive_int, default=50)
    p.add_argument("--sweep", type=_sizes, default=None, help="unit counts to truncate to, e.g. 1-10")

    p = sub.add_parser("conj", parents=[common], help="evaluate conjugate expressions")
    p.add_argument("--x", required=True, help="comma-separated coefficients or 'random'")
    p.add_argument("--expr", default=None, help="e.g. '0.5*d0 + 0.5*d0s'")
    p.add_argument("--decompose", action="store_true", help="print the polar factors of x")
    p.add_argument("--positive", action="store_true", help="random x gets positive diagonal coordinates")
    return parser


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _algebra(source: str) -> AlgebraSignature:
    try:
        return resolve(source)
    except UnknownPresetError as exc:
        raise UsageError(exc.args[0]) from None
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _element(text: str, sig: AlgebraSignature, rng, positive: bool) -> MultiVector:
    if text.strip().lower() == "random":
        return random_element(sig, rng, positive)
    try:
        return parse_coeffs(text, sig)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, text_lines: list[str], doc) -> None:
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(text_lines))


def _csv_rows(header: Sequence, rows) -> list[str]:
    return [",".join(str(c) for c in header)] + [",".join(str(c) for c in row) for row in rows]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_tables(args, sig: AlgebraSignature) -> int:
    if sig.n > MAX_TABLE_UNITS:
        raise CapacityError(f"tables limited to n <= {MAX_TABLE_UNITS}, got n={sig.n}")
    if args.format == "text" and sig.n > MAX_TEXT_TABLE_UNITS:
        raise CapacityError(f"text tables limited to n <= {MAX_TEXT_TABLE_UNITS}; use --format csv or json")
    if sig.name == "quaternion":
        tab = QUATERNION_TABLES
        print("note: quaternion tables are the classical hard-coded table; "
              "the signature squares [-1,-1] with lambda -1 generates the same table", file=sys.stderr)
    else:
        tab = tables(sig)
    dim = tab.dim
    if args.format == "json":
        doc = {"algebra": sig.label, "signature": sig.to_json(), **tab.to_json()}
        print(json.dumps(doc))
        return EXIT_OK
    if args.format == "csv":
        header = ["p\\q", *range(dim)]
        lines = _csv_rows(header, ([p, *tab.s[p].tolist()] for p in range(dim)))
        lines.append("")
        lines += _csv_rows(header, ([p, *tab.r[p].tolist()] for p in range(dim)))
        print("\n".join(lines))
        return EXIT_OK
    w = len(str(dim - 1))
    lw = max(w, 3) + 1
    head = "p\\q".ljust(lw) + " ".join(str(q).rjust(w) for q in range(dim))
    lines = [f"s(p,q) for {sig.label}", head]
    lines += [str(p).ljust(lw) + " ".join(_GLYPH[int(v)].rjust(w) for v in tab.s[p]) for p in range(dim)]
    lines += ["", "r(p,q)", head]
    lines += [str(p).ljust(lw) + " ".join(str(int(v)).rjust(w) for v in tab.r[p]) for p in range(dim)]
    print("\n".join(lines))
    return EXIT_OK


def cmd_diag(args, sig: AlgebraSignature) -> int:
    report = check_diagonal_conditions(sig)
    doc = report.to_json()
    T = build_T(sig) if report.verdict and sig.n <= MAX_SHOWN_T_UNITS else None
    if T is not None:
        doc["T"] = [format_coeffs(row, np.iscomplexobj(T)).split(",") for row in T]
    if args.format == "csv":
        lines = ["condition,holds"] + [f"{k},{str(v).lower()}" for k, v in report.conditions.items()]
        lines.append(f"verdict,{str(report.verdict).lower()}")
        print("\n".join(lines))
    else:
        lines = [f"algebra: {sig.label}", f"verdict: {str(report.verdict).lower()}"]
        lines += [f"  {k}: {'pass' if v else 'FAIL'}" for k, v in report.conditions.items()]
        if report.verdict:
            lines.append(f"nu: {format_coeffs(report.nu)}")
            if T is not None:
                lines.append("T:")
                lines += ["  " + format_coeffs(row, np.iscomplexobj(T)) for row in T]
        else:
            lines.append(f"failed: {report.failed}")
            lines.append(f"witness: {report.witness_text}")
        _emit(args, lines, doc)
    return EXIT_OK if report.verdict else EXIT_NEGATIVE


def cmd_mul(args, sig: AlgebraSignature) -> int:
    rng = np.random.default_rng(args.seed)
    x = _element(args.lhs, sig, rng, args.positive)
    y = _element(args.rhs, sig, rng, args.positive)
    if args.engine == "both":
        a, b = mul_naive(x, y), mul_diagonal(x, y)
        dev = max_deviation(a, b)
        doc = {"naive": format_mv(a).split(","), "diagonal": format_mv(b).split(","), "max_dev": dev}
        lines = [f"naive: {format_mv(a)}", f"diagonal: {format_mv(b)}", f"max_dev: {dev:.3e}"]
        if args.format == "csv":
            lines = ["engine,coefficients", f"naive,\"{format_mv(a)}\"", f"diagonal,\"{format_mv(b)}\"",
                     f"max_dev,{dev:.3e}"]
    else:
        z = mul_naive(x, y) if args.engine == "naive" else mul_diagonal(x, y)
        doc = {"engine": args.engine, "product": format_mv(z).split(",")}
        lines = [format_mv(z)]
    _emit(args, lines, doc)
    return EXIT_OK


def cmd_verify(args, sig: AlgebraSignature) -> int:
    results = run_suite(sig, seed=args.seed, cases=args.cases, tol=args.tol or 1e-9)
    counts = {k: sum(r.status == k for r in results) for k in (PASS, FAIL, SKIP)}
    if args.format == "json":
        print(json.dumps({"algebra": sig.label, "seed": args.seed, "counts": counts,
                          "results": [vars(r) for r in results]}, indent=2))
    elif args.format == "csv":
        print("\n".join(["property,status,detail"] + [f"{r.name},{r.status},\"{r.detail}\"" for r in results]))
    else:
        print(f"algebra: {sig.label} (seed {args.seed}, cases {args.cases})")
        print("\n".join(r.line() for r in results))
        print(f"{counts[PASS]} passed, {counts[FAIL]} failed, {counts[SKIP]} skipped")
    return EXIT_PROPERTY if counts[FAIL] else EXIT_OK


def cmd_bench(args, sig: AlgebraSignature) -> int:
    require_diagonal(sig)
    sizes = args.sweep or [sig.n]
    if any(k < 0 or k > sig.n for k in sizes):
        raise UsageError(f"sweep sizes must lie in [0, {sig.n}]")
    rows = bench_sweep(sig, sizes, reps=args.reps, seed=args.seed)
    if args.format == "json":
        print(json.dumps({"algebra": sig.label, "rows": [r.as_dict() for r in rows]}, indent=2))
    elif args.format == "csv":
        print("\n".join(_csv_rows(COLUMNS, ([getattr(r, c) for c in COLUMNS] for r in rows))))
    else:
        print(f"{'n':>3} {'dim':>6} {'backend':>7} {'naive ns/op':>14} {'diag ns/op':>12} {'speedup':>9} {'max dev':>10}")
        for r in rows:
            print(f"{r.n:>3} {r.dim:>6} {r.backend:>7} {r.naive_ns:>14.0f} {r.diagonal_ns:>12.0f} "
                  f"{r.speedup:>8.1f}x {r.max_dev:>10.2e}")
    return EXIT_OK


def cmd_conj(args, sig: AlgebraSignature) -> int:
    if args.expr is None and not args.decompose:
        raise UsageError("conj needs --expr or --decompose")
    rng = np.random.default_rng(args.seed)
    x = _element(args.x, sig, rng, args.positive)
    lines: list[str] = []
    doc: dict = {"algebra": sig.label}
    if args.expr is not None:
        try:
            expr = ConjugateExpr.parse(args.expr, sig.n)
        except DomainError as exc:
            raise UsageError(str(exc)) from None
        value = eval_expr(x, expr)
        doc["expr"] = str(expr)
        doc["value"] = format_mv(value).split(",")
        lines.append(format_mv(value))
    if args.decompose:
        factors = polar_decompose(x)
        dev = max_deviation(product(factors), x)
        doc["factors"] = [format_mv(f).split(",") for f in factors]
        doc["product_dev"] = dev
        lines += [f"factor {k}: {format_mv(f)}" for k, f in enumerate(factors)]
        lines.append(f"product_dev: {dev:.3e}")
        if args.tol is not None and dev > args.tol:
            _emit(args, lines, doc)
            return EXIT_PROPERTY
    _emit(args, lines, doc)
    return EXIT_OK


COMMANDS = {
    "tables": cmd_tables,
    "diag": cmd_diag,
    "mul": cmd_mul,
    "verify": cmd_verify,
    "bench": cmd_bench,
    "conj": cmd_conj,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.backend:
            kernels.set_backend(args.backend)
        sig = _algebra(args.algebra)
        return COMMANDS[args.command](args, sig)
    except UsageError as exc:
        print(f"hyperxor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HyperxorError as exc:
        print(f"hyperxor: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
