"""Command-line front end.

Expressions use the generator names ``a as b bs`` (Fun_q(SU(2))), ``k kinv e es``
(U_q(su(2))) and the sphere aliases ``A B Bs``.  ``*`` is the product;
``star(...)`` is the involution.  Exit status: 0 when everything checked
passes, 1 on a failed check or mathematical error, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .classical import AN_NAMES, SU2_NAMES, quantum_limit_an, quantum_limit_su2
from .coeff import CoefficientError
from .double import DegreeCapError, NotInvariantError
from .expr import ParseError
from .hopf import antipode, antipode_inv, coproduct
from .ncpoly import Element
from .verify import SCOPE_ALIASES, SCOPES, Context, Report, run_suite

VERIFY_ALIASES = {
    "verify-13a": "13a",
    "verify-13b": "13b",
    "verify-laws": "structure",
    "verify-limits": "limits",
    "verify-brackets": "brackets",
}


# names that begin with "-" need "--" before them; this one has a dash-free spelling
LIMIT_ALIASES = {"iR2-R1": "-R1+iR2"}


class UsageError(Exception):
    pass


def _parse_in(ctx: Context, text: str, algebra: str) -> Element:
    """Parse in the named algebra, or in whichever one knows every generator."""
    order = {"funq": ("F",), "uq": ("U",), "auto": ("F", "U")}[algebra]
    first = None
    for attr in order:
        try:
            return getattr(ctx, attr).parse(text)
        except ParseError as exc:
            first = first or exc
    raise UsageError(_describe_parse_error(first))


def _describe_parse_error(exc: ParseError) -> str:
    if not exc.text:
        return str(exc)
    return f"{exc}\n  {exc.text}\n  {' ' * exc.position}^"


def _render(x, pretty: bool) -> str:
    return x.pretty() if pretty and hasattr(x, "pretty") else str(x)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--degree-cap", type=int, default=8, metavar="N", help="sphere expansion degree cap")
    common.add_argument("--pretty", action="store_true", help="display a*, k^-1 instead of parseable names")

    parser = argparse.ArgumentParser(prog="qlorentz", description="Exact computations in the q-Lorentz group.")
    sub = parser.add_subparsers(dest="command", required=True)

    def expr_command(name, help_text, algebra=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("expr")
        if algebra:
            p.add_argument("--algebra", choices=("auto", "funq", "uq"), default="auto")
        return p

    expr_command("nf", "normal form")
    expr_command("coproduct", "coproduct of an element")
    p = expr_command("antipode", "antipode of an element")
    p.add_argument("--inverse", action="store_true", help="apply the inverse antipode")
    expr_command("star", "involution of an element")
    expr_command("podles-check", "is the element in the Podles sphere?", algebra=False)
    expr_command("expand-sphere", "expand in the sphere basis A^k B^m, A^k Bs^n", algebra=False)

    p = sub.add_parser("pair", parents=[common], help="<U, f>")
    p.add_argument("u")
    p.add_argument("f")

    p = sub.add_parser("act", parents=[common], help="action of U_q(su(2)) or Fun_q(SU(2)) on Fun_q(SU(2))")
    p.add_argument("x", help="element of either algebra")
    p.add_argument("h")

    for name, names in (("limit-su2", SU2_NAMES + ("-R3",) + tuple(LIMIT_ALIASES)), ("limit-an", AN_NAMES)):
        p = sub.add_parser(
            name, parents=[common], help="q -> 1 limit of the action",
            epilog='names starting with "-" go after "--", e.g. limit-su2 -- -R3 B',
        )
        p.add_argument("name", choices=names)
        p.add_argument("h")

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("scope", choices=SCOPES + tuple(SCOPE_ALIASES))
    for alias in VERIFY_ALIASES:
        sub.add_parser(alias, parents=[common], help=f"verify {VERIFY_ALIASES[alias]}")
    return parser


def _emit(args, command: str, payload: dict, text: str, out) -> None:
    if args.format == "json":
        out.write(json.dumps({"command": command, **payload}, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def report_text(report: Report) -> str:
    lines = []
    for c in report.checks:
        lines.append(f"{c.status.upper():4} {c.name}")
        if not c.passed:
            lines.append(f"     lhs: {c.lhs}")
            lines.append(f"     rhs: {c.rhs}")
            if c.detail:
                lines.append(f"     {c.detail}")
    lines.append(f"{report.passed}/{len(report.checks)} checks passed ({report.scope})")
    return "\n".join(lines)


def _run(args, ctx: Context, out) -> int:
    cmd = args.command
    pretty = args.pretty

    if cmd == "verify" or cmd in VERIFY_ALIASES:
        report = run_suite(VERIFY_ALIASES.get(cmd, getattr(args, "scope", None)), ctx)
        if args.format == "json":
            out.write(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
        else:
            out.write(report_text(report) + "\n")
        return 0 if report.ok else 1

    if cmd in ("nf", "coproduct", "antipode", "star"):
        x = _parse_in(ctx, args.expr, args.algebra)
        if cmd == "nf":
            result = x
        elif cmd == "coproduct":
            result = coproduct(x)
        elif cmd == "antipode":
            result = antipode_inv(x) if args.inverse else antipode(x)
        else:
            result = x.star()
        _emit(args, cmd, {"input": args.expr, "algebra": x.presentation.name, "result": str(result)},
              _render(result, pretty), out)
        return 0

    if cmd == "pair":
        u = _parse_in(ctx, args.u, "uq")
        f = _parse_in(ctx, args.f, "funq")
        value = ctx.pairing.pair(u, f)
        _emit(args, cmd, {"u": args.u, "f": args.f, "result": str(value)}, str(value), out)
        return 0

    if cmd == "act":
        x = _parse_in(ctx, args.x, "auto")
        h = _parse_in(ctx, args.h, "funq")
        result = ctx.double.act(x, h)
        payload = {"x": args.x, "h": args.h, "result": str(result)}
        text = _render(result, pretty)
        if ctx.double.is_podles(result):
            sphere = ctx.sphere(result)
            payload["sphere"] = str(sphere)
            text += f"\n= {_render(sphere, pretty)}"
        _emit(args, cmd, payload, text, out)
        return 0

    if cmd == "podles-check":
        f = _parse_in(ctx, args.expr, "funq")
        inside = ctx.double.is_podles(f)
        _emit(args, cmd, {"input": args.expr, "result": inside}, str(inside).lower(), out)
        return 0 if inside else 1

    if cmd == "expand-sphere":
        f = _parse_in(ctx, args.expr, "funq")
        sphere = ctx.sphere(f)
        _emit(args, cmd, {"input": args.expr, "result": str(sphere)}, _render(sphere, pretty), out)
        return 0

    if cmd in ("limit-su2", "limit-an"):
        h = _parse_in(ctx, args.h, "funq")
        fn = quantum_limit_su2 if cmd == "limit-su2" else quantum_limit_an
        result = fn(LIMIT_ALIASES.get(args.name, args.name), h, ctx.double)
        _emit(args, cmd, {"name": args.name, "h": args.h, "result": str(result)}, str(result), out)
        return 0

    raise UsageError(f"unknown command {cmd}")


def main(argv: Sequence[str] | None = None, context: Context | None = None, *, out=None, err=None) -> int:
    """Entry point; ``context`` lets tests inject a modified rewriting system."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.degree_cap < 1:
        err.write("qlorentz: --degree-cap must be positive\n")
        return 2
    ctx = context or Context(degree_cap=args.degree_cap)
    if context is not None:
        ctx.degree_cap = args.degree_cap
    try:
        return _run(args, ctx, out)
    except UsageError as exc:
        err.write(f"qlorentz: {exc}\n")
        return 2
    except (NotInvariantError, DegreeCapError, CoefficientError, ValueError) as exc:
        err.write(f"qlorentz: {type(exc).__name__}: {exc}\n")
        return 1


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
