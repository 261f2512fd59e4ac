"""Command-line front end: ``stfib {seq,poly,binom,catalan,series,verify}``.

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import List, Optional, Sequence

from .catalan import GF_KINDS, catalan_poly, gf_coefficients
from .deformed import rational_power_series
from .errors import StFibError
from .exact import format_rational
from .fib import (SPECIALIZATIONS, SpecializationKind, fib_poly, fibonomial, fibotorial,
                  lucas_poly, specialize)
from .real_index import EvalContext
from .verify import SUITES, run_suite

SEQ_KINDS = tuple(SPECIALIZATIONS) + ("pq_numbers", "pq_lucas_sequence", "chebyshev_u",
                                      "fibonacci_polys")
PRECISION_NOTE = "parameters parsed as exact decimals; numeric results in IEEE-754 double precision"


def _decimal(text: str) -> Fraction:
    try:
        d = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a decimal number: {text!r}") from None
    if not d.is_finite():
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return Fraction(d)


def _nonzero_decimal(text: str) -> Fraction:
    val = _decimal(text)
    if val == 0:
        raise argparse.ArgumentTypeError("must be nonzero")
    return val


def _nonneg_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def _fmt_number(val) -> str:
    if isinstance(val, Fraction):
        return str(val.numerator) if val.denominator == 1 else format_rational(val)
    return str(val)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stfib", description="(s,t)-Fibonacci calculus tables and checks")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("text", "csv", "json"), default="text"):
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--out", help="write to this file instead of stdout")

    def point(sp, required=False):
        sp.add_argument("--s", type=_nonzero_decimal, required=required)
        sp.add_argument("--t", type=_nonzero_decimal, required=required)

    sp = sub.add_parser("seq", help="first N terms of a named specialization")
    sp.add_argument("--kind", choices=SEQ_KINDS, required=True)
    sp.add_argument("--n", type=_nonneg_int, required=True, help="number of terms")
    sp.add_argument("--which", choices=("fib", "lucas"), default="fib")
    for name in ("p", "q", "P", "Q", "x0"):
        sp.add_argument(f"--{name}", type=_decimal)
    common(sp)

    sp = sub.add_parser("poly", help="(s,t)-Fibonacci, Lucas or fibotorial polynomial")
    sp.add_argument("--which", choices=("fib", "lucas", "fibotorial"), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--table", action="store_true", help="print rows 0..n")
    common(sp)

    sp = sub.add_parser("binom", help="fibonomial triangle, rows 0..n")
    sp.add_argument("--n", type=_nonneg_int, required=True)
    point(sp)
    common(sp)

    sp = sub.add_parser("catalan", help="generalized Catalan polynomials C_0..C_n")
    sp.add_argument("--n", type=_nonneg_int, required=True)
    point(sp)
    common(sp)

    sp = sub.add_parser("series", help="series coefficients with both sides and residuals")
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--gf", choices=GF_KINDS)
    grp.add_argument("--power", metavar="N/M", help="coefficients of (1 (+)_{1,v} x)^(N/M)")
    sp.add_argument("--N", type=_nonneg_int, required=True)
    point(sp, required=True)
    sp.add_argument("--v", type=_decimal, required=True)
    common(sp, ("csv", "json"), "csv")

    sp = sub.add_parser("verify", help="run identity checks; JSON lines, exit 1 on failure")
    sp.add_argument("--suite", choices=("all",) + tuple(SUITES), default="all")
    sp.add_argument("--n", type=_nonneg_int)
    sp.add_argument("--out")
    return p


# -- commands -----------------------------------------------------------------

def _csv(rows: Sequence[Sequence], header: Sequence[str], note: Optional[str] = None) -> str:
    buf = io.StringIO()
    if note:
        buf.write(f"# {note}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def cmd_seq(args) -> str:
    params = ()
    if args.kind == "pq_numbers":
        params = (args.p, args.q)
    elif args.kind == "pq_lucas_sequence":
        params = (args.P, args.Q)
    elif args.kind in ("chebyshev_u", "fibonacci_polys"):
        params = (args.x0,) if args.x0 is not None else ()
    if any(v is None for v in params):
        raise _Usage(f"--kind {args.kind} needs its parameters")
    kind = SpecializationKind(args.kind, params)
    values = [specialize(kind, n, args.which) for n in range(args.n)]
    text = [_fmt_number(v) for v in values]
    if args.format == "csv":
        return _csv(list(enumerate(text)), ["n", "value"])
    if args.format == "json":
        return _json({"kind": args.kind, "which": args.which, "values": text})
    return ",".join(text) + "\n"


def cmd_poly(args) -> str:
    fn = {"fib": fib_poly, "lucas": lucas_poly, "fibotorial": fibotorial}[args.which]
    ns = range(0, args.n + 1) if args.table else [args.n]
    polys = [(n, fn(n)) for n in ns]
    if args.format == "csv":
        return _csv([(n, str(p), json.dumps(p.to_json_obj())) for n, p in polys],
                    ["n", "text", "terms"])
    if args.format == "json":
        return _json({"which": args.which,
                      "rows": [{"n": n, "text": str(p), "terms": p.to_json_obj()} for n, p in polys]})
    if args.table:
        return "".join(f"{n}: {p}\n" for n, p in polys)
    return f"{polys[0][1]}\n"


def _maybe_eval(poly, args):
    if args.s is None and args.t is None:
        return str(poly)
    if args.s is None or args.t is None:
        raise _Usage("give both --s and --t")
    return _fmt_number(poly.evaluate(args.s, args.t))


def _point_note(args) -> Optional[str]:
    if getattr(args, "s", None) is None:
        return None
    parts = [f"{k}={format_rational(getattr(args, k))}" for k in ("s", "t", "v")
             if getattr(args, k, None) is not None]
    return " ".join(parts) + f" ({PRECISION_NOTE})"


def cmd_binom(args) -> str:
    rows = [(n, k, _maybe_eval(fibonomial(n, k), args)) for n in range(args.n + 1) for k in range(n + 1)]
    if args.format == "csv":
        return _csv(rows, ["n", "k", "value"], _point_note(args))
    if args.format == "json":
        return _json({"rows": [[v for m, _, v in rows if m == n] for n in range(args.n + 1)]})
    return "".join(f"{n}: " + " | ".join(v for m, _, v in rows if m == n) + "\n"
                   for n in range(args.n + 1))


def cmd_catalan(args) -> str:
    rows = [(n, _maybe_eval(catalan_poly(n).value, args)) for n in range(args.n + 1)]
    if args.format == "csv":
        return _csv(rows, ["n", "value"], _point_note(args))
    if args.format == "json":
        return _json({"values": [v for _, v in rows]})
    return "".join(f"{n}: {v}\n" for n, v in rows)


def cmd_series(args) -> str:
    ctx = EvalContext(float(args.s), float(args.t))
    v = float(args.v)
    note = _point_note(args)
    if args.gf:
        rep = gf_coefficients(args.gf, max(args.N, 1), v, ctx)
        rows = [r for r in rep.rows()][: args.N + 1]
        header = ["n", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "rel_err"]
        extra = {"gf": args.gf, "max_rel_err": max(r[-1] for r in rows),
                 "hypothesis_violated": rep.hypothesis_violated}
    else:
        try:
            num, _, den = args.power.partition("/")
            n, m = int(num), int(den or 1)
        except ValueError:
            raise _Usage("--power expects N/M with integers N, M") from None
        ser = rational_power_series(n, m, v, args.N, ctx)
        rows = [(k, c.real, c.imag) for k, c in enumerate(ser)]
        header = ["n", "re", "im"]
        extra = {"power": f"{n}/{m}", "hypothesis_violated": ser.meta["hypothesis_violated"]}
    if args.format == "json":
        return _json(extra | {"precision": note, "columns": header, "rows": [list(r) for r in rows]})
    return _csv([[r[0]] + [repr(float(x)) for x in r[1:]] for r in rows], header, note)


def cmd_verify(args) -> tuple:
    rows = run_suite(args.suite, args.n)
    text = "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)
    failed = [r for r in rows if not r["pass"]]
    summary = f"{len(rows) - len(failed)}/{len(rows)} checks passed"
    return text, summary, not failed


class _Usage(Exception):
    pass


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)   # exits with status 2 on bad flags
    try:
        if args.command == "verify":
            text, summary, ok = cmd_verify(args)
            print(summary, file=sys.stderr)
            status = 0 if ok else 1
        else:
            text = {"seq": cmd_seq, "poly": cmd_poly, "binom": cmd_binom,
                    "catalan": cmd_catalan, "series": cmd_series}[args.command](args)
            status = 0
    except (_Usage, StFibError, ValueError) as exc:
        print(f"stfib {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
