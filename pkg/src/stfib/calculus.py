"""The (s,t)-derivative on truncated power series and on numeric functions.

On series the operator is the exact coefficient map c_n -> {n} c_n (shifted
down one place).  The numeric two-point form

    (D f)(x) = (f(phi x) - f(phi' x)) / ((phi - phi') x)

is the secondary, tolerance-checked path.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from . import kernels
from .errors import DomainError, ParameterError
from .exact import BivarLaurentPoly
from .fib import fib_poly
from .real_index import EvalContext, fib_fn, rel_err, to_pair

NumericFn = Callable[[complex], complex]


def _zero_like(c):
    if isinstance(c, BivarLaurentPoly):
        return BivarLaurentPoly()
    if isinstance(c, complex):
        return 0j
    if isinstance(c, float):
        return 0.0
    return 0


class TruncatedSeries:
    """c_0 + c_1 x + ... + c_N x^N, all arithmetic truncated at order N.

    Coefficients may be exact (int, Fraction, BivarLaurentPoly) or complex.
    ``meta`` carries flags such as a violated convergence hypothesis.
    """

    __slots__ = ("coeffs", "order", "meta")

    def __init__(self, coeffs: Sequence, order: Optional[int] = None, meta=None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        zero = _zero_like(coeffs[0]) if coeffs else 0
        coeffs = coeffs[: order + 1] + [zero] * (order + 1 - len(coeffs))
        self.coeffs = coeffs
        self.order = order
        self.meta = dict(meta or {})

    def __len__(self):
        return self.order + 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def _binary_order(self, other: "TruncatedSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            out = list(self.coeffs)
            out[0] = out[0] + other
            return TruncatedSeries(out, self.order, self.meta)
        n = self._binary_order(other)
        return TruncatedSeries([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order, self.meta)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs], self.order, self.meta)
        n = self._binary_order(other)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            acc = a[0] * b[k]
            for i in range(1, k + 1):
                acc = acc + a[i] * b[k - i]
            out.append(acc)
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def scale_x(self, c) -> "TruncatedSeries":
        """Series of f(c x)."""
        out, ck = [], 1
        for coeff in self.coeffs:
            out.append(coeff * ck)
            ck = ck * c
        return TruncatedSeries(out, self.order, self.meta)

    def negate_x(self) -> "TruncatedSeries":
        return self.scale_x(-1)

    def shift_down(self) -> "TruncatedSeries":
        """(f(x) - f(0)) / x; the order drops by one."""
        if self.order < 1:
            raise ValueError("cannot divide an order-0 series by x")
        return TruncatedSeries(self.coeffs[1:], self.order - 1, self.meta)

    def shift_up(self) -> "TruncatedSeries":
        """x * f(x); the order rises by one."""
        return TruncatedSeries([_zero_like(self.coeffs[0])] + self.coeffs, self.order + 1, self.meta)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """f(g(x)) for g with zero constant term (Horner in the series ring)."""
        if inner.coeffs[0] != 0:
            raise ValueError("composition needs an inner series with zero constant term")
        n = self._binary_order(inner)
        inner = TruncatedSeries(inner.coeffs, n)
        acc = TruncatedSeries([self.coeffs[n]], n)
        for k in range(n - 1, -1, -1):
            acc = acc * inner + self.coeffs[k]
        return acc

    def evaluate(self, x) -> complex:
        if all(isinstance(c, (int, float, complex, Fraction)) for c in self.coeffs):
            if isinstance(x, Fraction) or all(isinstance(c, (int, Fraction)) for c in self.coeffs) \
                    and isinstance(x, (int, Fraction)):
                acc = 0
                for c in reversed(self.coeffs):
                    acc = acc * x + c
                return acc
            return kernels.horner(self.coeffs, x)
        acc = _zero_like(self.coeffs[0])
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def partial_sums(self, x) -> List[complex]:
        return kernels.partial_sums(self.coeffs, x)

    def to_json_obj(self) -> dict:
        def enc(c):
            if isinstance(c, BivarLaurentPoly):
                return c.to_json_obj()
            if isinstance(c, (int, Fraction)):
                c = Fraction(c)
                return f"{c.numerator}/{c.denominator}"
            return to_pair(c)
        return {"order": self.order, "coeffs": [enc(c) for c in self.coeffs]}

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def __repr__(self):
        return f"TruncatedSeries(order={self.order}, coeffs={self.coeffs!r})"


def _fib_scalars(count: int, ctx):
    """{0}..{count-1} symbolically (ctx None), exactly at a rational point
    (ctx a pair), or numerically (ctx an EvalContext)."""
    if ctx is None:
        return [fib_poly(n) for n in range(count)]
    if isinstance(ctx, EvalContext):
        return [fib_fn(n, ctx) for n in range(count)]
    s, t = (Fraction(v) for v in ctx)
    out = []
    for n in range(count):
        val = fib_poly(n).evaluate(s, t)
        out.append(val.numerator if val.denominator == 1 else val)
    return out


def st_derivative_series(series: TruncatedSeries, ctx=None) -> TruncatedSeries:
    """Exact D_{s,t}: coefficient c_n becomes {n} c_n at position n-1.

    ``ctx`` is None (coefficients times the polynomials {n}), a rational pair
    (s, t) (exact values; the pair (2, -1) gives the ordinary derivative), or an
    EvalContext (complex values).
    """
    if series.order < 1:
        raise ValueError("the series must have order >= 1")
    fibs = _fib_scalars(series.order + 1, ctx)
    out = [fibs[n] * series.coeffs[n] for n in range(1, series.order + 1)]
    return TruncatedSeries(out, series.order - 1, series.meta)


def st_derivative_at(f: NumericFn, x, ctx: EvalContext, f_prime_at_zero=None) -> complex:
    """(f(phi x) - f(phi' x)) / ((phi - phi') x); at x = 0 returns the supplied f'(0)."""
    if ctx.degenerate:
        raise ParameterError("the two-point operator needs s^2 + 4t != 0")
    x = complex(x)
    if x == 0:
        if f_prime_at_zero is None:
            raise DomainError("D_{s,t} at x = 0 needs f'(0)")
        return complex(f_prime_at_zero)
    return (f(ctx.phi * x) - f(ctx.phi_prime * x)) / ((ctx.phi - ctx.phi_prime) * x)


def st_derivative_iter(f: NumericFn, k: int, x, ctx: EvalContext) -> complex:
    """D^k f at x by nesting the two-point formula (2^k evaluations of f)."""
    if k == 0:
        return complex(f(x))
    inner = lambda z: st_derivative_iter(f, k - 1, z, ctx)  # noqa: E731
    return st_derivative_at(inner, x, ctx)


def rule_residuals(f: NumericFn, g: NumericFn, x, ctx: EvalContext,
                   a: complex = 2.0, b: complex = -3.0) -> dict:
    """Relative residuals of linearity, both product rules and both quotient rules."""
    x = complex(x)
    phi, phip = ctx.phi * x, ctx.phi_prime * x
    D = lambda h: st_derivative_at(h, x, ctx)  # noqa: E731
    Df, Dg = D(f), D(g)
    g_phi, g_phip = g(phi), g(phip)
    if g_phi == 0 or g_phip == 0:
        raise DomainError("quotient rules need g(phi x) and g(phi' x) nonzero")

    lin = D(lambda z: a * f(z) + b * g(z))
    prod = D(lambda z: f(z) * g(z))
    quot = D(lambda z: f(z) / g(z))
    denom = g_phi * g_phip
    return {
        "linearity": rel_err(lin, a * Df + b * Dg),
        "product_1": rel_err(prod, f(phi) * Dg + g_phip * Df),
        "product_2": rel_err(prod, f(phip) * Dg + g_phi * Df),
        "quotient_1": rel_err(quot, (g_phi * Df - f(phi) * Dg) / denom),
        "quotient_2": rel_err(quot, (g_phip * Df - f(phip) * Dg) / denom),
    }
