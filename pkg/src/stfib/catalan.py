"""Central fibonomials, generalized Catalan polynomials, the L_n normalizers and
the deformed generating functions built from half-integer fibonomials."""

from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from .calculus import TruncatedSeries, st_derivative_series
from .deformed import rational_power_series
from .errors import ParameterError, SingularParameterError, UsageError
from .exact import BivarLaurentPoly
from .fib import central_fibonomial, fib_poly
from .real_index import EvalContext, cpow, fib_fn, fibonomial_fn, lucas_fn, rel_err


def central_binomial(n: int) -> BivarLaurentPoly:
    """{2n choose n}."""
    return central_fibonomial(n)


@dataclass(frozen=True)
class CatalanPoly:
    n: int
    value: BivarLaurentPoly

    def __str__(self):
        return str(self.value)


def catalan_poly(n: int) -> CatalanPoly:
    """C_n = {2n choose n} / {n+1}, exact (IdentityViolation if not divisible)."""
    if n < 0:
        raise ParameterError("n must be >= 0")
    return CatalanPoly(n, central_binomial(n).exact_div(fib_poly(n + 1)))


def _log_exact(val: Fraction) -> complex:
    """Complex log of an exact rational, with no float overflow."""
    if val == 0:
        return complex(-math.inf)
    mag = math.log(abs(val.numerator)) - math.log(val.denominator)
    return complex(mag, math.pi if val < 0 else 0.0)


def _central_exact(n: int, ctx: EvalContext) -> Fraction:
    """{2n choose n} at the float parameters as an exact rational, via the
    recurrence values (much cheaper than the symbolic polynomial for large n)."""
    s, t = Fraction(ctx.s), Fraction(ctx.t)
    fib = [Fraction(0), Fraction(1)]
    while len(fib) <= 2 * n:
        fib.append(s * fib[-1] + t * fib[-2])
    out = Fraction(1)
    for i in range(1, n + 1):
        out = out * fib[n + i] / fib[i]
    return out


def _at(poly: BivarLaurentPoly, ctx: EvalContext) -> float:
    """Exact rational evaluation at the float parameters, rounded once."""
    return float(poly.evaluate(Fraction(ctx.s), Fraction(ctx.t)))


@dataclass(frozen=True)
class LnValue:
    n: int
    value: complex
    ctx: EvalContext


def ln_value(n: int, ctx: EvalContext) -> LnValue:
    """L_n = (-t)^(-n^2/2) 4^n / (<n>! prod_{k<n} (phi^(k+1/2) + phi'^(k+1/2))).

    Accumulated in log space so large n neither overflows nor underflows early.
    """
    return LnValue(n, cmath.exp(_ln_log(n, ctx)), ctx)


def _ln_log(n: int, ctx: EvalContext) -> complex:
    if n < 0:
        raise ParameterError("n must be >= 0")
    log = -n * n / 2 * cmath.log(-ctx.t) if n else 0j
    log += n * math.log(4)
    for k in range(1, n + 1):
        val = lucas_fn(k, ctx)
        if val == 0:
            raise SingularParameterError(f"<{k}> vanishes")
        log -= cmath.log(val)
    for k in range(n):
        val = cpow(ctx.phi, k + 0.5) + cpow(ctx.phi_prime, k + 0.5)
        if val == 0:
            raise SingularParameterError(f"phi^{k}.5 + phi'^{k}.5 vanishes")
        log -= cmath.log(val)
    return log


def ln_recurrence_residual(n: int, ctx: EvalContext) -> float:
    """L_{n+1} against 4 (-t)^-(n+1/2) L_n / (<n+1> (phi^(n+1/2) + phi'^(n+1/2)))."""
    h = n + 0.5
    step = 4 * cpow(-ctx.t, -h) / (lucas_fn(n + 1, ctx)
                                   * (cpow(ctx.phi, h) + cpow(ctx.phi_prime, h)))
    return rel_err(ln_value(n + 1, ctx).value, step * ln_value(n, ctx).value)


@dataclass(frozen=True)
class HalfBinomial:
    n: int
    upper: str          # "1/2" or "-1/2"
    lhs: complex
    rhs: complex

    @property
    def residual(self) -> float:
        return rel_err(self.lhs, self.rhs)


def half_binomial(n: int, ctx: EvalContext, upper: str = "1/2") -> HalfBinomial:
    """{1/2 choose n} (n >= 1) or {-1/2 choose n} (n >= 0) beside its closed form."""
    if upper == "1/2":
        if n < 1:
            raise ParameterError("the 1/2 form needs n >= 1")
        lhs = fibonomial_fn(0.5, n, ctx)
        rhs = (fib_fn(0.5, ctx) * float(_central_exact(n, ctx)) * (-1) ** (n - 1)
               / (4 ** (n - 1) * lucas_fn(n, ctx) * fib_fn(2 * n - 1, ctx))
               * ln_value(n - 1, ctx).value)
    elif upper == "-1/2":
        if n < 0:
            raise ParameterError("n must be >= 0")
        lhs = fibonomial_fn(-0.5, n, ctx)
        rhs = (-1) ** n / 4 ** n * float(_central_exact(n, ctx)) * ln_value(n, ctx).value
    else:
        raise UsageError("upper must be '1/2' or '-1/2'")
    return HalfBinomial(n, upper, lhs, rhs)


# -- generating functions -----------------------------------------------------

GF_KINDS = ("sqrt", "recip_sqrt", "catalan", "n_catalan", "weighted_catalan")


@dataclass
class GFReport:
    kind: str
    lhs: TruncatedSeries
    rhs: TruncatedSeries
    rel_errs: List[float]

    @property
    def max_rel_err(self) -> float:
        return max(self.rel_errs)

    @property
    def hypothesis_violated(self) -> bool:
        return bool(self.lhs.meta.get("hypothesis_violated"))

    def rows(self):
        for n, (a, b, e) in enumerate(zip(self.lhs, self.rhs, self.rel_errs)):
            a, b = complex(a), complex(b)
            yield n, a.real, a.imag, b.real, b.imag, e

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "rel_err"])
        for row in self.rows():
            w.writerow([row[0]] + [repr(float(x)) for x in row[1:]])
        return buf.getvalue()


def _c2(n: int) -> int:
    return n * (n - 1) // 2


def _sqrt_lhs(N: int, v, ctx) -> TruncatedSeries:
    """(1 (+)_{1,v} 4x)^(1/2) from the fibonomial series."""
    return rational_power_series(1, 2, v, N, ctx).scale_x(4)


def _recip_lhs(N: int, v, ctx) -> TruncatedSeries:
    """(1 (-)_{1,v} 4x)^(-1/2)."""
    return rational_power_series(-1, 2, v, N, ctx).scale_x(-4)


def _catalan_lhs(N: int, v, ctx) -> TruncatedSeries:
    """(1 - (1 (-)_{1,v} 4x)^(1/2)) / (2x), as an index shift."""
    root = _sqrt_lhs(N + 1, v, ctx).negate_x()
    return ((1 - root) * 0.5).shift_down()


def gf_coefficients(kind: str, N: int, v, ctx: EvalContext) -> GFReport:
    """Coefficients 0..N of both sides of a generating-function identity."""
    if N < 1:
        raise ParameterError("N must be >= 1")
    v = complex(v)
    h = fib_fn(0.5, ctx)
    cat = [_at(catalan_poly(n).value, ctx) for n in range(N + 2)]
    L = [ln_value(n, ctx).value for n in range(N + 2)]
    if kind == "sqrt":
        lhs = _sqrt_lhs(N, v, ctx)
        rhs = [1.0 + 0j] + [
            4 * h * float(_central_exact(n, ctx)) * (-1) ** (n - 1) * L[n - 1]
            / (lucas_fn(n, ctx) * fib_fn(2 * n - 1, ctx)) * v ** _c2(n)
            for n in range(1, N + 1)]
    elif kind == "recip_sqrt":
        lhs = _recip_lhs(N, v, ctx)
        rhs = [float(_central_exact(n, ctx)) * L[n] * v ** _c2(n) for n in range(N + 1)]
    elif kind == "catalan":
        lhs = _catalan_lhs(N, v, ctx)
        rhs = [2 * h * cat[n] * L[n] * v ** _c2(n + 1) for n in range(N + 1)]
    elif kind == "n_catalan":
        lhs = st_derivative_series(_catalan_lhs(N, v, ctx), ctx).shift_up()
        rhs = [2 * h * cat[n] * fib_fn(n, ctx) * L[n] * v ** _c2(n + 1) for n in range(N + 1)]
    elif kind == "weighted_catalan":
        lhs = ((_recip_lhs(N + 1, v, ctx) - 1) * 0.5).shift_down()
        rhs = [0.5 * cat[n] * fib_fn(2 * n + 1, ctx) * lucas_fn(n + 1, ctx) * L[n + 1]
               * v ** _c2(n + 1) for n in range(N + 1)]
    else:
        raise UsageError(f"unknown generating function {kind!r}; expected one of {', '.join(GF_KINDS)}")
    rhs = TruncatedSeries(rhs, N)
    return GFReport(kind, lhs, rhs, [rel_err(a, b) for a, b in zip(lhs, rhs)])


SQRT2_KINDS = ("sqrt2_a", "sqrt2_b", "sqrt_two_thirds", "even_part")


def sqrt2_analog_values(kind: str, N: int, v, ctx: EvalContext) -> complex:
    """Partial sums (terms 0..N) of the deformed analogs of sqrt(2) and sqrt(2/3).

    sqrt2_a: sqrt series at x = 1/4; sqrt2_b: reciprocal series at x = 1/8;
    sqrt_two_thirds: reciprocal series at x = -1/8; even_part: the terms of even
    degree of the reciprocal series at x = 1/8, i.e. sum central(2n) L_2n v^C(2n,2) / 64^n.
    """
    v = complex(v)
    if kind == "sqrt2_a":
        return _sqrt_lhs(N, v, ctx).evaluate(0.25)
    if kind == "sqrt2_b":
        return _recip_lhs(N, v, ctx).evaluate(0.125)
    if kind == "sqrt_two_thirds":
        return _recip_lhs(N, v, ctx).evaluate(-0.125)
    if kind == "even_part":
        total = 0j
        for n in range(N // 2 + 1):
            log = (_log_exact(_central_exact(2 * n, ctx)) + _ln_log(2 * n, ctx)
                   + (_c2(2 * n) * cmath.log(v) if n else 0) - n * math.log(64))
            total += cmath.exp(log)
        return total
    raise UsageError(f"unknown kind {kind!r}; expected one of {', '.join(SQRT2_KINDS)}")


def even_part_residual(N: int, v, ctx: EvalContext) -> float:
    """even_part against the average of the x = 1/8 and x = -1/8 reciprocal series."""
    avg = (sqrt2_analog_values("sqrt2_b", N, v, ctx)
           + sqrt2_analog_values("sqrt_two_thirds", N, v, ctx)) / 2
    return rel_err(sqrt2_analog_values("even_part", N, v, ctx), avg)
