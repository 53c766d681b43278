"""Command-line entry point: ``trichebyshev {coeffs,gram,eval-grid,verify,project}``.

Exit codes: 0 success, 1 a verification failed inside its hypothesis,
2 usage or domain error.
"""

from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import math
import sys
from fractions import Fraction
from typing import Callable

from . import verification
from .approx import project
from .bernstein import eval_bbpoly, lattice_points
from .exactnum import rational_to_str
from .simplex_basis import coeffs_closed_form
from .weighted_ip import gram_matrix

MAX_EXACT_DEGREE = 20


class UsageError(Exception):
    pass


def parse_gamma(text: str) -> Fraction | float:
    """Exact Fraction for integer or p/q syntax, float for decimals."""
    text = text.strip()
    try:
        if "." in text or "e" in text.lower():
            raise ValueError
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        try:
            return float(text)
        except ValueError:
            raise UsageError(f"cannot parse gamma {text!r}") from None


_FUNCS: dict[str, Callable] = {
    name: getattr(math, name)
    for name in ("exp", "log", "sqrt", "sin", "cos", "tan", "sinh", "cosh", "tanh", "atan")
}
_CONSTS = {"pi": math.pi, "e": math.e}
_ALLOWED = (
    ast.Expression, ast.BinOp, ast.UnaryOp, ast.Call, ast.Name, ast.Load, ast.Constant,
    ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.USub, ast.UAdd,
)


def compile_function(expr: str) -> Callable:
    """Turn an arithmetic expression in u, v, w into a callable on BaryPoint."""
    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError as exc:
        raise UsageError(f"bad function expression: {exc.msg}") from None
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise UsageError(f"unsupported syntax in function: {type(node).__name__}")
        if isinstance(node, ast.Name) and node.id not in {"u", "v", "w", *_FUNCS, *_CONSTS}:
            raise UsageError(f"unknown name in function: {node.id}")
        if isinstance(node, ast.Call) and not (
            isinstance(node.func, ast.Name) and node.func.id in _FUNCS
        ):
            raise UsageError("only the math functions " + ", ".join(_FUNCS) + " may be called")
    code = compile(tree, "<function>", "eval")
    namespace = {"__builtins__": {}, **_FUNCS, **_CONSTS}

    def f(pt):
        return eval(code, namespace, {"u": pt.u, "v": pt.v, "w": pt.w})

    return f


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _check_nr(n: int | None, r: int | None) -> tuple[int, int]:
    if n is None or r is None:
        raise UsageError("--n and --r are required")
    if not 0 <= r <= n:
        raise UsageError(f"need 0 <= r <= n, got n={n}, r={r}")
    if n > MAX_EXACT_DEGREE:
        raise UsageError(f"n={n} exceeds the supported limit {MAX_EXACT_DEGREE}")
    return n, r


def cmd_coeffs(args) -> tuple[int, str]:
    n, r = _check_nr(args.n, args.r)
    poly = coeffs_closed_form(n, r)
    if args.format == "json":
        return 0, _dump_json({"n": n, "r": r, **poly.bb.to_json()})
    rows = [(i, j, k, rational_to_str(c)) for i, j, k, c in poly.coefficient_rows()]
    return 0, _csv(["i", "j", "k", "value"], rows)


def cmd_gram(args) -> tuple[int, str]:
    n = args.n
    if n is None or n < 0:
        raise UsageError("--n must be a non-negative integer")
    gamma = parse_gamma(args.gamma)
    exact = isinstance(gamma, Fraction) and gamma.denominator == 1 and gamma >= 0
    if exact:
        if n > MAX_EXACT_DEGREE:
            raise UsageError(f"n={n} exceeds the supported limit {MAX_EXACT_DEGREE}")
        gm = gram_matrix(n, gamma, "exact")
    else:
        if not float(gamma) > -1:
            raise UsageError(f"gamma must exceed -1, got {args.gamma}")
        gm = gram_matrix(n, float(gamma), "quadrature", args.nodes or n + 2)
    if args.format == "json":
        return 0, _dump_json(gm.to_json())
    return 0, gm.to_csv()


def cmd_eval_grid(args) -> tuple[int, str]:
    n, r = _check_nr(args.n, args.r)
    if args.resolution is None or args.resolution < 2:
        raise UsageError("--resolution must be >= 2")
    poly = coeffs_closed_form(n, r).bb
    # resolution counts lattice points along each edge
    rows = []
    for pt in lattice_points(args.resolution - 1):
        rows.append((float(pt.u), float(pt.v), float(pt.w), float(eval_bbpoly(poly, pt))))
    if args.format == "json":
        return 0, _dump_json(
            {"n": n, "r": r, "resolution": args.resolution,
             "points": [dict(zip(("u", "v", "w", "value"), row)) for row in rows]}
        )
    return 0, _csv(["u", "v", "w", "value"], [tuple(repr(x) for x in row) for row in rows])


def cmd_verify(args) -> tuple[int, str]:
    n = args.n
    if n is None or n < 0:
        raise UsageError("--n must be a non-negative integer")
    if n > MAX_EXACT_DEGREE:
        raise UsageError(f"n={n} exceeds the supported exact limit {MAX_EXACT_DEGREE}")
    gamma = parse_gamma(args.gamma)
    if not (isinstance(gamma, Fraction) and gamma.denominator == 1 and gamma >= 0):
        raise UsageError("verify runs the exact oracle and needs a non-negative integer gamma")
    report = verification.run_suite(n, int(gamma))
    return (0 if report["all_pass"] else 1), _dump_json(report)


def cmd_project(args) -> tuple[int, str]:
    n = args.n
    if n is None or n < 0:
        raise UsageError("--n must be a non-negative integer")
    if not args.f:
        raise UsageError("--f is required, e.g. --f 'exp(u)*v'")
    gamma = float(parse_gamma(args.gamma))
    if gamma < 1:
        raise UsageError(f"projection needs gamma >= 1, got {args.gamma}")
    nodes = args.nodes or max(20, 2 * n + 2)
    result = project(compile_function(args.f), n, gamma, nodes)
    if args.format == "json":
        return 0, _dump_json(result.to_json())
    rows = [(m, r, repr(c)) for (m, r), c in result.coefficients.items()]
    return 0, _csv(["m", "r", "value"], rows)


COMMANDS = {
    "coeffs": cmd_coeffs,
    "gram": cmd_gram,
    "eval-grid": cmd_eval_grid,
    "verify": cmd_verify,
    "project": cmd_project,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trichebyshev",
        description="Chebyshev-I weighted orthogonal polynomials on the triangle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format="csv"):
        p.add_argument("--format", choices=("csv", "json"), default=default_format)
        p.add_argument("--out", metavar="PATH", help="write here instead of stdout")

    p = sub.add_parser("coeffs", help="Bernstein-Bezier coefficients of T_{n,r}")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    common(p)

    p = sub.add_parser("gram", help="Gram matrix of the basis up to degree n")
    p.add_argument("--n", type=int)
    p.add_argument("--gamma", default="1")
    p.add_argument("--nodes", type=int)
    common(p)

    p = sub.add_parser("eval-grid", help="values of T_{n,r} on a barycentric lattice")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--resolution", type=int, default=11)
    common(p)

    p = sub.add_parser("verify", help="exact verification suite up to degree n")
    p.add_argument("--n", type=int)
    p.add_argument("--gamma", default="1")
    common(p, default_format="json")

    p = sub.add_parser("project", help="weighted least-squares projection of a function")
    p.add_argument("--n", type=int)
    p.add_argument("--gamma", default="1")
    p.add_argument("--nodes", type=int)
    p.add_argument("--f", help="expression in u, v, w, e.g. 'exp(u)*sin(pi*v)'")
    common(p, default_format="json")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.format == "csv":
        parser.error("verify emits a JSON report; --format csv is not supported")
    try:
        code, text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
