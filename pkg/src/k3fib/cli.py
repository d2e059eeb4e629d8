"""Command-line front end: ``k3fib verify|tate|divisor|twist``.

Exit status is 0 when every requested check passes, 1 when a check fails or
the input curve is degenerate, and 2 for bad arguments or unparsable input.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .catalog import FIBRATION_IDS, load_catalog, resolve_variant, verify_fibration
from .ellcurve import DegenerateCurveError, parse_curve, quadratic_twist
from .exactalg import ParseError, field_from_text, parse_ratfunc
from .kodaira import INFINITY, euler_sum, fiber_configuration, tate_at
from . import nslattice


class UsageError(Exception):
    pass


def _mw_text(rep):
    parts = [f"Z/{n}" for n in rep.torsion]
    parts += [f"<{h}>" for h in list(rep.heights.values())[: rep.rank]]
    return " + ".join(parts) if parts else "0"


def report_document(reports):
    return {
        "version": __version__,
        "fibrations": [
            {
                "id": r.id,
                "resolved_equation": r.resolved_equation,
                "fibers": [{"place": p, "type": t, "euler": e, "degree": d} for p, t, e, d in r.fibers],
                "mw": {"rank": r.rank, "torsion": list(r.torsion),
                       "heights": {k: str(v) for k, v in r.heights.items()},
                       "points": r.points},
                "checks": r.checks,
                "notes": r.notes,
            }
            for r in reports
        ],
        "pass": all(r.passed for r in reports),
    }


def _render_text(reports):
    lines = []
    for r in reports:
        lines.append(f"Fibration {r.id}: {'PASS' if r.passed else 'FAIL'}")
        lines.append(f"  equation   {r.resolved_equation}")
        lines.append(f"  parameter  {r.parameter}")
        lines.append(f"  fibers     {r.configuration}  (euler {r.euler})")
        for place, sym, e, d in r.fibers:
            lines.append(f"    {place}: {sym}" + (f" (degree {d})" if d > 1 else ""))
        lines.append(f"  MW         {_mw_text(r)}")
        for name, h in r.heights.items():
            lines.append(f"    height {name} = {h}")
        for name, p in r.points.items():
            lines.append(f"    point {name} = {p}")
        failed = [k for k, v in r.checks.items() if v is False]
        passed = [k for k, v in r.checks.items() if v]
        lines.append(f"  checks     passed: {', '.join(passed)}")
        if failed:
            lines.append(f"             FAILED: {', '.join(failed)}")
        for n in r.notes:
            lines.append(f"  note: {n}")
    return "\n".join(lines) + "\n"


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run_verify(args):
    ids = FIBRATION_IDS if args.fibration == "all" else (int(args.fibration),)
    records = load_catalog()
    reports = [verify_fibration(records[i], records) for i in ids]
    if args.format == "json":
        text = json.dumps(report_document(reports), indent=2) + "\n"
    else:
        text = _render_text(reports)
    _emit(text, args.out)
    return 0 if all(r.passed for r in reports) else 1


def _parse_field(text):
    if not text:
        return None
    try:
        return field_from_text(text)
    except (ParseError, ValueError) as exc:
        raise UsageError(f"bad --base-field: {exc}") from None


def _parse_curve_arg(text, K):
    try:
        return parse_curve(text, K)
    except DegenerateCurveError:
        raise
    except (ParseError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --curve: {exc}") from None


def _rational_only(E):
    for c in E.coeffs:
        for p in (c.num, c.den):
            if any(hasattr(x, "field") and not x.is_rational() for x in p.coeffs):
                raise UsageError("tate needs coefficients in Q(u); the curve uses the extension generator")


def run_tate(args):
    K = _parse_field(args.base_field)
    try:
        E = _parse_curve_arg(args.curve, K)
    except DegenerateCurveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _rational_only(E)
    config = fiber_configuration(E)
    rows = list(config)
    if not any(fd.place.is_infinity for fd in rows):
        rows.append(tate_at(E, INFINITY))
    lines = ["place; kodaira; ord_delta; components; euler"]
    for fd in rows:
        lines.append(f"{fd.place}; {fd.kodaira}; {fd.ord_delta}; {fd.components}; {fd.euler}")
    total = euler_sum(config)
    lines.append(f"euler sum: {total}")
    if total != 24:
        lines.append("warning: euler sum is not 24, so this is not an elliptic K3 surface")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def run_divisor(args):
    divs = nslattice.load_divisors()
    lines, ok = [], True

    def show(name, d):
        nonlocal ok
        zero = d.zero
        parts = []
        for part, cls, terms in (("zero", d.zero, d.zero_terms), ("polar", d.polar, d.polar_terms)):
            if not terms:
                continue
            try:
                parts.append(f"  {part} part: {nslattice.recognize_fiber(cls)}")
            except nslattice.FiberMismatch as exc:
                parts.append(f"  {part} part: not a fiber ({exc.kind}): {exc}")
                if not args.fix_typos or part != "zero":
                    ok = False
                    continue
                fixes = nslattice.find_corrections(terms, d.polar)
                if len(fixes) != 1:
                    ok = False
                    parts.append(f"  no unique minimal correction ({len(fixes)} found)")
                    continue
                fix = fixes[0]
                zero = fix.divisor
                parts.append(f"  correction: {'; '.join(fix.edits)}")
                parts.append(f"  corrected zero part: {fix.divisor} -> {fix.kodaira}")
        triv = nslattice.numerically_trivial(zero - d.polar)
        ok &= triv
        lines.append(f"({name}): numerically trivial = {triv}")
        lines.extend(parts)

    if args.check == "func":
        for name in nslattice.FUNC_NAMES:
            show(name, divs[name])
    elif args.check == "div4":
        d = divs["div4"]
        try:
            lines.append(f"fiber class: {nslattice.recognize_fiber(d.zero)}")
        except nslattice.FiberMismatch as exc:
            ok = False
            lines.append(f"fiber class: not a fiber ({exc})")
    else:
        show(args.check, divs[args.check])
    lines.append(f"gram rank: {nslattice.gram_rank()}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


def run_twist(args):
    K = _parse_field(args.base_field)
    try:
        d = parse_ratfunc(args.d, K)
    except (ParseError, ValueError) as exc:
        raise UsageError(f"bad --d: {exc}") from None
    if args.curve:
        try:
            E = _parse_curve_arg(args.curve, K)
        except DegenerateCurveError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        if not E.has_short_shape():
            E = E.short_form()
        _emit(f"{quadratic_twist(E, d).literal()}\n", args.out)
        return 0
    records = load_catalog()
    E6 = resolve_variant(records[6])[1]
    E2 = resolve_variant(records[2])[1]
    tw = quadratic_twist(E6, d)
    same = tw.same_equation(E2)
    _emit(f"twist of fibration 6 by {d}: {tw.literal()}\n"
          f"fibration 2:               {E2.literal()}\n"
          f"equal: {same}\n", args.out)
    return 0 if same else 1


def build_parser():
    p = argparse.ArgumentParser(prog="k3fib", description="Verify the Jacobian fibrations of X3.")
    p.add_argument("--version", action="version", version=f"k3fib {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="verify catalog fibrations")
    v.add_argument("--fibration", default="all", choices=["all"] + [str(i) for i in FIBRATION_IDS])
    v.add_argument("--format", default="text", choices=["text", "json"])
    v.add_argument("--out")
    v.set_defaults(func=run_verify)

    t = sub.add_parser("tate", help="fiber table of a curve over Q(u)")
    t.add_argument("--curve", required=True, help='"a1;a2;a3;a4;a6"')
    t.add_argument("--base-field", help='monic polynomial in a, e.g. "a^3-4"')
    t.add_argument("--out")
    t.set_defaults(func=run_tate)

    d = sub.add_parser("divisor", help="lattice checks of the function divisors")
    d.add_argument("--check", required=True, choices=["func", "div1", "div3", "div4"])
    d.add_argument("--fix-typos", action="store_true")
    d.add_argument("--out")
    d.set_defaults(func=run_divisor)

    w = sub.add_parser("twist", help="quadratic twist; by default fibration 6 by u against fibration 2")
    w.add_argument("--curve")
    w.add_argument("--d", default="u")
    w.add_argument("--base-field")
    w.add_argument("--out")
    w.set_defaults(func=run_twist)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"k3fib: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
