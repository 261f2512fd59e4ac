"""(u,v)-deformed (s,t)-binomial powers and series.

    (x (+)_{u,v} y)^(alpha) = sum_k {alpha choose k} u^C(alpha-k,2) v^C(k,2) x^(alpha-k) y^k

Integer powers are handled exactly in :class:`DeformedPoly`, a polynomial ring in
u, v, x, y, z, a over Z[s, t, 1/t][phi].  Complex powers are truncated series
evaluated with principal-branch powers; every u != 1 series is routed through
the u = 1 series via

    (x (+)_{u,v} y)^(alpha) = x^alpha u^C(alpha,2) (1 (+)_{1,uv} u^(1-alpha) y/x)^(alpha).
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import kernels
from .calculus import TruncatedSeries, st_derivative_at, st_derivative_iter
from .errors import (DomainError, HypothesisWarning, ParameterError,
                     UnsupportedRegimeError, UsageError)
from .exact import ONE, S, T, ZERO, BivarLaurentPoly
from .fib import fib_poly, fibonomial, fibotorial
from .real_index import (EvalContext, binom2, cpow, fib_fn, fibonomial_row,
                         rel_err)

MAX_TERMS = 512
PRODUCT_TOL = 1e-14

# -- exact ring ---------------------------------------------------------------

VARS = ("u", "v", "x", "y", "z", "a")
_NV = len(VARS)
_Coeff = Tuple[BivarLaurentPoly, BivarLaurentPoly]   # a + b*phi


def _cmul(p: _Coeff, q: _Coeff) -> _Coeff:
    a1, b1 = p
    a2, b2 = q
    bb = b1 * b2
    return a1 * a2 + bb * T, a1 * b2 + a2 * b1 + bb * S


def _cadd(p: _Coeff, q: _Coeff) -> _Coeff:
    return p[0] + q[0], p[1] + q[1]


def _czero(c: _Coeff) -> bool:
    return c[0].is_zero() and c[1].is_zero()


class DeformedPoly:
    """Sparse polynomial in u, v, x, y, z, a with coefficients a + b*phi.

    ``a`` and ``b`` are Laurent polynomials in (s, t); phi**2 = s*phi + t is
    applied on multiplication, so equality of two DeformedPoly values is an
    exact identity in (s, t).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[tuple, _Coeff]] = None):
        self.terms = {e: c for e, c in (terms or {}).items() if not _czero(c)}

    @classmethod
    def const(cls, c=1, phi_part=0) -> "DeformedPoly":
        a = BivarLaurentPoly._coerce(c)
        b = BivarLaurentPoly._coerce(phi_part)
        return cls({(0,) * _NV: (a, b)})

    @classmethod
    def var(cls, name: str) -> "DeformedPoly":
        e = [0] * _NV
        e[VARS.index(name)] = 1
        return cls({tuple(e): (ONE, ZERO)})

    @classmethod
    def phi(cls) -> "DeformedPoly":
        return cls.const(0, 1)

    @classmethod
    def phi_prime(cls) -> "DeformedPoly":
        return cls.const(S, -1)

    @staticmethod
    def _coerce(other) -> "DeformedPoly":
        return other if isinstance(other, DeformedPoly) else DeformedPoly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = _cadd(out[e], c) if e in out else c
        return DeformedPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return DeformedPoly({e: (-a, -b) for e, (a, b) in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: Dict[tuple, _Coeff] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                c = _cmul(c1, c2)
                out[e] = _cadd(out[e], c) if e in out else c
        return DeformedPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result, base = DeformedPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        diff = self - other
        return not diff.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, **exps) -> _Coeff:
        e = tuple(exps.get(name, 0) for name in VARS)
        return self.terms.get(e, (ZERO, ZERO))

    def subs(self, **mapping) -> "DeformedPoly":
        """Substitute DeformedPoly (or scalar) values for variables."""
        idx = {VARS.index(k): self._coerce(v) for k, v in mapping.items()}
        out = DeformedPoly()
        cache: Dict[tuple, DeformedPoly] = {}
        for e, c in self.terms.items():
            kept = [0 if i in idx else p for i, p in enumerate(e)]
            term = DeformedPoly({tuple(kept): c})
            for i, sub in idx.items():
                if e[i]:
                    key = (i, e[i])
                    if key not in cache:
                        cache[key] = sub ** e[i]
                    term = term * cache[key]
            out = out + term
        return out

    def st_derivative(self, name: str = "x") -> "DeformedPoly":
        """D_{s,t} in one variable: w^e -> {e} w^(e-1)."""
        i = VARS.index(name)
        out: Dict[tuple, _Coeff] = {}
        for e, (a, b) in self.terms.items():
            if e[i] == 0:
                continue
            f = fib_poly(e[i])
            ne = e[:i] + (e[i] - 1,) + e[i + 1:]
            out[ne] = (a * f, b * f)
        return DeformedPoly(out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            a, b = self.terms[e]
            mono = "*".join(f"{n}^{p}" if p > 1 else n for n, p in zip(VARS, e) if p)
            coeff = f"({a})" if b.is_zero() else f"(({a}) + ({b})*phi)"
            parts.append(coeff + ("*" + mono if mono else ""))
        return " + ".join(parts)

    __repr__ = __str__


U, V, X, Y, Z, A = (DeformedPoly.var(n) for n in VARS)


def _scalar_poly(p: BivarLaurentPoly) -> DeformedPoly:
    return DeformedPoly.const(p)


def _rescaled_poly(p: BivarLaurentPoly) -> DeformedPoly:
    """p(a s, a^2 t) with a kept as the variable ``a``."""
    out: Dict[tuple, _Coeff] = {}
    ia = VARS.index("a")
    for (i, j), c in p.items():
        e = [0] * _NV
        e[ia] = i + 2 * j
        mono = BivarLaurentPoly.monomial(i, j, c)
        key = tuple(e)
        out[key] = (out[key][0] + mono, ZERO) if key in out else (mono, ZERO)
    return DeformedPoly(out)


def power_symbolic(n: int, x=X, y=Y, u=U, v=V, coeff=_scalar_poly) -> DeformedPoly:
    """sum_k coeff({n choose k}) u^C(n-k,2) v^C(k,2) x^(n-k) y^k as a DeformedPoly."""
    if n < 0:
        raise ParameterError("the finite deformed power needs n >= 0")
    x, y, u, v = (DeformedPoly._coerce(w) for w in (x, y, u, v))
    out = DeformedPoly()
    for k in range(n + 1):
        term = coeff(fibonomial(n, k)) * u ** ((n - k) * (n - k - 1) // 2) * v ** (k * (k - 1) // 2)
        out = out + term * x ** (n - k) * y ** k
    return out


# -- parameters ---------------------------------------------------------------

@dataclass(frozen=True)
class DeformParams:
    u: complex = 1.0
    v: complex = 1.0

    def __post_init__(self):
        u, v = complex(self.u), complex(self.v)
        if u == 0:
            raise ParameterError("u must be nonzero")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)


@dataclass(frozen=True)
class SeriesQuery:
    alpha: complex
    x: complex
    y: complex
    terms: int
    max_terms: int = MAX_TERMS

    def __post_init__(self):
        if self.terms < 0:
            raise ParameterError("terms must be >= 0")
        if self.terms > self.max_terms:
            raise ParameterError(f"terms must be <= {self.max_terms}")
        for name in ("alpha", "x", "y"):
            object.__setattr__(self, name, complex(getattr(self, name)))


@dataclass
class SeriesResult:
    value: complex
    terms: List[complex]
    partial_sums: List[complex]
    meta: dict = field(default_factory=dict)


def _is_nonneg_int(alpha) -> bool:
    alpha = complex(alpha)
    return alpha.imag == 0 and alpha.real >= 0 and alpha.real == int(alpha.real)


def deformed_power_finite(n: int, x=None, y=None, d: Optional[DeformParams] = None,
                          ctx: Optional[EvalContext] = None):
    """The terminating power for integer n >= 0.

    Without ``ctx`` the result is a DeformedPoly (missing x, y, u, v stay
    symbolic).  With ``ctx`` it is a complex number.
    """
    if n < 0:
        raise ParameterError("n must be >= 0")
    if ctx is None:
        u = U if d is None else d.u
        v = V if d is None else d.v
        return power_symbolic(n, X if x is None else x, Y if y is None else y, u, v)
    d = d or DeformParams()
    x, y = complex(x), complex(y)
    s, t = Fraction(ctx.s), Fraction(ctx.t)
    total = 0j
    for k in range(n + 1):
        c = float(fibonomial(n, k).evaluate(s, t))
        total += c * d.u ** ((n - k) * (n - k - 1) // 2) * d.v ** (k * (k - 1) // 2) \
            * x ** (n - k) * y ** k
    return total


def _direct_terms(alpha, x, y, d: DeformParams, ctx: EvalContext, N: int) -> List[complex]:
    """Terms straight from the definition, independent of the u = 1 routing.

    The fibonomial and all powers are accumulated as logarithms, so a huge
    fibonomial times a tiny u-power never becomes inf * 0.  This is also the
    only route that accepts x = 0.
    """
    alpha, x, y = complex(alpha), complex(x), complex(y)
    if N > MAX_TERMS:
        raise ParameterError(f"N must be <= {MAX_TERMS}")
    if x == 0:
        row = fibonomial_row(alpha, N, ctx)
        out = []
        for k in range(N + 1):
            if row[k] == 0:
                out.append(0j)
                continue
            try:
                xp = cpow(x, alpha - k)
            except ZeroDivisionError:
                raise DomainError("x = 0 requires a nonnegative integer alpha") from None
            out.append(row[k] * cpow(d.u, binom2(alpha - k)) * cpow(d.v, k * (k - 1) // 2)
                       * xp * cpow(y, k))
        return out
    log_u, log_x = cmath.log(d.u), cmath.log(x)
    log_y = cmath.log(y) if y != 0 else None
    log_v = cmath.log(d.v) if d.v != 0 else None
    out, log_c = [], 0j
    for k in range(N + 1):
        if k:
            top = fib_fn(alpha - (k - 1), ctx)
            if top == 0 or log_c is None:
                log_c = None
            else:
                log_c += cmath.log(top) - cmath.log(fib_fn(k, ctx))
        if log_c is None or (k and log_y is None) or (k > 1 and log_v is None):
            out.append(0j)
            continue
        log = log_c + binom2(alpha - k) * log_u + (alpha - k) * log_x
        if k:
            log += k * log_y + (k * (k - 1) // 2) * (log_v if k > 1 else 0)
        out.append(cmath.exp(log) if log.real < 709 else complex(math.inf))
    return out


def series_terms(alpha, x, y, d: DeformParams, ctx: EvalContext, N: int) -> List[complex]:
    """Terms k = 0..N of (x (+)_{u,v} y)^(alpha)."""
    alpha, x, y = complex(alpha), complex(x), complex(y)
    if N > MAX_TERMS:
        raise ParameterError(f"N must be <= {MAX_TERMS}")
    if x == 0:
        return _direct_terms(alpha, x, y, d, ctx, N)
    coeffs = kernels.unit_series_coeffs(alpha, N, d.u * d.v, *ctx._kargs())
    if not all(kernels.isfinite(c) for c in coeffs):
        # overflowing coefficients (|uv| > |t|): the log-space route keeps inf * 0 out
        return _direct_terms(alpha, x, y, d, ctx, N)
    pre = cpow(x, alpha) * cpow(d.u, binom2(alpha))
    w = cpow(d.u, 1 - alpha) * y / x
    out, wk = [], 1.0 + 0j
    for c in coeffs:
        out.append(pre * c * wk)
        wk *= w
    return out


def series_value(alpha, x, y, u, v, ctx: EvalContext, N: int = 48) -> complex:
    return sum(series_terms(alpha, x, y, DeformParams(u, v), ctx, N))


def _branch_unsafe(alpha, x, d: DeformParams, ctx: EvalContext) -> bool:
    if _is_nonneg_int(alpha):
        return False
    x = complex(x)
    positive = lambda z: z.imag == 0 and z.real > 0  # noqa: E731
    return not (ctx.branch_safe and positive(d.u) and positive(x))


def deformed_series_partial(q: SeriesQuery, d: DeformParams, ctx: EvalContext) -> SeriesResult:
    """Partial sum up to q.terms, with the term list and running sums."""
    terms = series_terms(q.alpha, q.x, q.y, d, ctx, q.terms)
    sums, acc = [], 0j
    for term in terms:
        acc += term
        sums.append(acc)
    meta = {"branch_unsafe": _branch_unsafe(q.alpha, q.x, d, ctx), "N": q.terms}
    return SeriesResult(acc, terms, sums, meta)


def reduce_to_unit_residual(alpha, x, d: DeformParams, ctx: EvalContext, N: int = 48) -> float:
    """(1 (+)_{u,v} x) against u^C(alpha,2) (1 (+)_{1,uv} u^(1-alpha) x), the left side
    summed term by term from the definition."""
    alpha = complex(alpha)
    lhs = sum(_direct_terms(alpha, 1.0, x, d, ctx, N))
    inner = sum(_direct_terms(alpha, 1.0, cpow(d.u, 1 - alpha) * x,
                              DeformParams(1.0, d.u * d.v), ctx, N))
    return rel_err(lhs, cpow(d.u, binom2(alpha)) * inner)


# -- products with u = phi, v = phi' -----------------------------------------

def deformed_product_phi(n: int, x, y, ctx: EvalContext) -> complex:
    """prod_{k<n} (phi^k x + phi'^k y)."""
    if n < 0:
        raise ParameterError("n must be >= 0")
    out = 1.0 + 0j
    pk = ppk = 1.0 + 0j
    for _ in range(n):
        out *= pk * x + ppk * y
        pk *= ctx.phi
        ppk *= ctx.phi_prime
    return out


@dataclass
class ProductResult:
    value: complex
    K: int
    tail_bound: float
    converged: bool


def infinite_product_phi(x, y, ctx: EvalContext, K: Optional[int] = None) -> ProductResult:
    """prod_{k<K} (1 + q^k y/x): the infinite product with the divergent factor
    prod phi^k x removed.  K defaults to the first index with |q|^K |y/x| < 1e-14."""
    x, y = complex(x), complex(y)
    if x == 0:
        raise DomainError("the normalized product needs x != 0")
    w, aq = y / x, abs(ctx.q)
    converging = aq < 1
    if K is None:
        if not converging:
            raise ParameterError("|q| >= 1: the product diverges, pass K explicitly")
        K, bound = 0, max(abs(w), 1.0)
        while bound >= PRODUCT_TOL:
            bound *= aq
            K += 1
    out, qk = 1.0 + 0j, 1.0 + 0j
    for _ in range(K):
        out *= 1 + qk * w
        qk *= ctx.q
    if converging:
        tail = abs(w) * aq ** K / (1 - aq)
        tail = tail / (1 - tail) if tail < 1 else math.inf
    else:
        tail = math.inf
    return ProductResult(out, K, tail, converging)


def phi_power_via_products(alpha, x, y, ctx: EvalContext, K: Optional[int] = None) -> complex:
    """(x (+)_{phi,phi'} y)^(alpha) = phi^C(alpha,2) x^alpha P(y/x) / P(q^alpha y/x)."""
    alpha = complex(alpha)
    num = infinite_product_phi(x, y, ctx, K).value
    den = infinite_product_phi(x, cpow(ctx.q, alpha) * complex(y), ctx, K).value
    return cpow(ctx.phi, binom2(alpha)) * cpow(x, alpha) * num / den


# -- convergence --------------------------------------------------------------

@dataclass(frozen=True)
class Convergence:
    regime: str                 # "entire", "disk" or "point_only"
    radius: Optional[float]
    q: complex


def classify_convergence(alpha, d: DeformParams, ctx: EvalContext,
                         tol: float = 1e-12) -> Convergence:
    """Regime of (1 (+)_{u,v} x)^(alpha) from |uv| against |t|.

    The degenerate case uses |q| = 1 with radius |u^(alpha-1)| / |phi^(alpha-1)|.
    """
    alpha = complex(alpha)
    aq = abs(ctx.q)
    if not ctx.degenerate and abs(aq - 1) <= tol:
        raise UnsupportedRegimeError("|q| = 1 is not covered")
    uv, at = abs(d.u * d.v), abs(ctx.t)
    if abs(uv - at) <= tol * at:
        if ctx.degenerate:
            radius = abs(cpow(d.u, alpha - 1)) / abs(cpow(ctx.phi, alpha - 1))
        elif aq < 1:
            radius = abs(ctx.phi / ctx.phi_prime * cpow(d.u / ctx.phi_prime, alpha - 1))
        else:
            radius = abs(ctx.phi_prime / d.u * cpow(d.u / ctx.phi, alpha))
        return Convergence("disk", radius, ctx.q)
    return Convergence("entire" if uv < at else "point_only", None, ctx.q)


# -- rational powers ----------------------------------------------------------

def rational_power_series(n: int, m: int, v, N: int, ctx: EvalContext) -> TruncatedSeries:
    """(1 (+)_{1,v} x)^(n/m) up to x^N; negative n gives the reciprocal series."""
    if m < 1:
        raise ParameterError("m must be >= 1")
    v = complex(v)
    meta = {"hypothesis_violated": False}
    if abs(v) > abs(ctx.t) * (1 + 1e-12):
        warnings.warn(f"|v| = {abs(v)} exceeds |t| = {abs(ctx.t)}", HypothesisWarning, stacklevel=2)
        meta["hypothesis_violated"] = True
    coeffs = kernels.unit_series_coeffs(n / m, N, v, *ctx._kargs())
    return TruncatedSeries(coeffs, N, meta)


# -- theorem residuals --------------------------------------------------------

THEOREM_KINDS = ("add_shift_1", "add_shift_2", "homogeneity", "rescale", "swap", "y_zero",
                 "x_zero", "deriv_x", "deriv_y", "deriv_minus", "deriv_k", "root_shift")


def theorem_residuals(kind: str, ctx: EvalContext, alpha, *, x=1.0, y=0.3, u=1.0, v=0.5,
                      z=2.0, scale=2.0, a=0.4, k=2, form="y", N=48) -> float:
    """Relative residual of a series identity, both sides truncated at N.

    ``a`` is the fixed argument of the derivative identities, ``scale`` the
    factor of the (a s, a^2 t) rescaling and ``form`` picks the iterated
    derivative identity ("x", "y" or "minus").
    """
    alpha = complex(alpha)
    S_ = lambda al, xx, yy, uu=u, vv=v, c=ctx: sum(  # noqa: E731
        series_terms(al, xx, yy, DeformParams(uu, vv), c, N))
    phi, phip = ctx.phi, ctx.phi_prime

    if kind == "add_shift_1":
        return rel_err(S_(alpha + 1, x, y),
                       x * S_(alpha, u * x, phi * y) + y * S_(alpha, phip * x, v * y))
    if kind == "add_shift_2":
        return rel_err(S_(alpha + 1, x, y),
                       x * S_(alpha, u * x, phip * y) + y * S_(alpha, phi * x, v * y))
    if kind == "homogeneity":
        return rel_err(cpow(z, alpha) * S_(alpha, x, y), S_(alpha, z * x, z * y))
    if kind == "rescale":
        scaled = ctx.with_params(scale * ctx.s, scale * scale * ctx.t)
        return rel_err(S_(alpha, x, y, scale * u, scale * v, scaled),
                       cpow(scale, binom2(alpha)) * S_(alpha, x, y))
    if kind == "swap":
        return rel_err(S_(alpha, x, y), S_(alpha, y, x, v, u))
    if kind == "y_zero":
        return rel_err(S_(alpha, x, 0.0), cpow(u, binom2(alpha)) * cpow(x, alpha))
    if kind == "x_zero":
        try:
            lhs = S_(alpha, 0.0, y)
        except DomainError:
            return math.inf
        return rel_err(lhs, cpow(v, binom2(alpha)) * cpow(y, alpha))
    if kind == "deriv_x":
        lhs = st_derivative_at(lambda w: S_(alpha, w, a), x, ctx)
        return rel_err(lhs, fib_fn(alpha, ctx) * S_(alpha - 1, u * x, a))
    if kind == "deriv_y":
        lhs = st_derivative_at(lambda w: S_(alpha, a, w), x, ctx)
        return rel_err(lhs, fib_fn(alpha, ctx) * S_(alpha - 1, a, v * x))
    if kind == "deriv_minus":
        lhs = st_derivative_at(lambda w: S_(alpha, a, -w), x, ctx)
        return rel_err(lhs, -fib_fn(alpha, ctx) * S_(alpha - 1, a, -v * x))
    if kind == "deriv_k":
        fk = _fibotorial_value(k, ctx) * fibonomial_row(alpha, k, ctx)[k]
        if form == "x":
            lhs = st_derivative_iter(lambda w: S_(alpha, w, a), k, x, ctx)
            rhs = cpow(u, k * (k - 1) // 2) * fk * S_(alpha - k, cpow(u, k) * x, a)
        elif form == "y":
            lhs = st_derivative_iter(lambda w: S_(alpha, a, w), k, x, ctx)
            rhs = cpow(v, k * (k - 1) // 2) * fk * S_(alpha - k, a, cpow(v, k) * x)
        elif form == "minus":
            lhs = st_derivative_iter(lambda w: S_(alpha, a, -w), k, x, ctx)
            rhs = (-1) ** k * cpow(v, k * (k - 1) // 2) * fk * S_(alpha - k, a, -cpow(v, k) * x)
        else:
            raise UsageError(f"unknown deriv_k form {form!r}")
        return rel_err(lhs, rhs)
    if kind == "root_shift":
        return rel_err(S_(alpha + 1, 1.0, x, 1.0),
                       S_(alpha, 1.0, phi * x, 1.0) + x * S_(alpha, phip, v * x, 1.0))
    raise UsageError(f"unknown identity {kind!r}; expected one of {', '.join(THEOREM_KINDS)}")


def _fibotorial_value(k: int, ctx: EvalContext) -> complex:
    out = 1.0 + 0j
    for m in range(1, k + 1):
        out *= fib_fn(m, ctx)
    return out


def theorem_symbolic(kind: str, n: int, k: int = 2) -> bool:
    """Exact check of an identity at integer alpha = n in the DeformedPoly ring."""
    P = power_symbolic
    phi, phip = DeformedPoly.phi(), DeformedPoly.phi_prime()
    fib_n = DeformedPoly.const(fib_poly(n))
    if kind == "add_shift_1":
        return P(n + 1) == X * P(n, U * X, phi * Y) + Y * P(n, phip * X, V * Y)
    if kind == "add_shift_2":
        return P(n + 1) == X * P(n, U * X, phip * Y) + Y * P(n, phi * X, V * Y)
    if kind == "homogeneity":
        return Z ** n * P(n) == P(n, Z * X, Z * Y)
    if kind == "rescale":
        return P(n, u=A * U, v=A * V, coeff=_rescaled_poly) == A ** (n * (n - 1) // 2) * P(n)
    if kind == "swap":
        return P(n) == P(n, Y, X, V, U)
    if kind == "y_zero":
        return P(n, y=0) == U ** (n * (n - 1) // 2) * X ** n
    if kind == "x_zero":
        return P(n, x=0) == V ** (n * (n - 1) // 2) * Y ** n
    if n < 1:
        raise ParameterError("derivative identities need n >= 1")
    if kind == "deriv_x":
        return P(n, X, A).st_derivative("x") == fib_n * P(n - 1, U * X, A)
    if kind == "deriv_y":
        return P(n, A, X).st_derivative("x") == fib_n * P(n - 1, A, V * X)
    if kind == "deriv_minus":
        return P(n, A, -X).st_derivative("x") == -fib_n * P(n - 1, A, -(V * X))
    if kind in ("deriv_k_x", "deriv_k_y", "deriv_k_minus"):
        if not 0 <= k <= n:
            raise ParameterError("need 0 <= k <= n")
        coeff = DeformedPoly.const(fibotorial(k) * fibonomial(n, k))
        ck = k * (k - 1) // 2
        if kind == "deriv_k_x":
            lhs, rhs = P(n, X, A), U ** ck * coeff * P(n - k, U ** k * X, A)
        elif kind == "deriv_k_y":
            lhs, rhs = P(n, A, X), V ** ck * coeff * P(n - k, A, V ** k * X)
        else:
            lhs = P(n, A, -X)
            rhs = (-1) ** k * V ** ck * coeff * P(n - k, A, -(V ** k * X))
        for _ in range(k):
            lhs = lhs.st_derivative("x")
        return lhs == rhs
    raise UsageError(f"unknown identity {kind!r}")


SYMBOLIC_KINDS = ("add_shift_1", "add_shift_2", "homogeneity", "rescale", "swap", "y_zero",
                  "x_zero", "deriv_x", "deriv_y", "deriv_minus", "deriv_k_x", "deriv_k_y",
                  "deriv_k_minus")


# -- pantograph ---------------------------------------------------------------

def pantograph_residual(alpha, v, x, N: int, ctx: EvalContext) -> float:
    """Relative residual of (Df)(phi x/v) + phi'^(alpha-1) x (Df)(x/phi') = {alpha} f(x)
    for f = (1 (+)_{1,v} x)^(alpha) truncated at N, D acting on the series."""
    v, x, alpha = complex(v), complex(x), complex(alpha)
    if v == 0:
        raise ParameterError("v must be nonzero")
    coeffs = kernels.unit_series_coeffs(alpha, N, v, *ctx._kargs())
    dcoeffs = [fib_fn(j + 1, ctx) * coeffs[j + 1] for j in range(N)] or [0j]
    Df = lambda w: kernels.horner(dcoeffs, w)  # noqa: E731
    lhs = Df(ctx.phi * x / v) + cpow(ctx.phi_prime, alpha - 1) * x * Df(x / ctx.phi_prime)
    rhs = fib_fn(alpha, ctx) * kernels.horner(coeffs, x)
    return rel_err(lhs, rhs)
