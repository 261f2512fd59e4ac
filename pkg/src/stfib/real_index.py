"""Fibonacci/Lucas functions and fibonomials at complex index.

All non-integer powers use the principal branch z**a = exp(a Log z) with
arg z in (-pi, pi].  Identities whose truth depends on the branch (negative
index, parameter scaling) are only claimed at branch-safe points: s > 0, t < 0,
s**2 + 4t > 0, where phi > phi' > 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from . import kernels
from .errors import ParameterError, SingularParameterError

DEGENERATE_TOL = 1e-12
SINGULAR_TOL = 1e-13


def cpow(z, a) -> complex:
    """Principal-branch power, see module docstring."""
    return kernels.cpow(z, a)


def binom2(z):
    """C(z, 2) = z(z-1)/2, the analytic extension used for deformation exponents."""
    return z * (z - 1) / 2


def to_pair(z) -> list:
    """Serialize a complex value as [re, im]."""
    z = complex(z)
    return [z.real, z.imag]


def from_pair(pair) -> complex:
    return complex(pair[0], pair[1])


@dataclass(frozen=True)
class EvalContext:
    """Numeric (s, t) with the derived constants phi, phi' and q = phi'/phi.

    ``rtol`` is the tolerance used by the comparison helpers.
    """

    s: float
    t: float
    rtol: float = 1e-9
    phi: complex = field(init=False)
    phi_prime: complex = field(init=False)
    q: complex = field(init=False)
    degenerate: bool = field(init=False)

    def __post_init__(self):
        s, t = float(self.s), float(self.t)
        if not (math.isfinite(s) and math.isfinite(t)):
            raise ParameterError("s and t must be finite")
        if s == 0 or t == 0:
            raise ParameterError("s and t must be nonzero")
        disc = s * s + 4 * t
        degenerate = abs(disc) < DEGENERATE_TOL
        root = cmath.sqrt(complex(disc, 0.0))
        phi = (s + root) / 2 if not degenerate else complex(s / 2)
        # phi' = -t/phi avoids the cancellation in s - phi
        phi_prime = -t / phi if not degenerate else complex(s / 2)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "phi", complex(phi))
        object.__setattr__(self, "phi_prime", complex(phi_prime))
        object.__setattr__(self, "q", complex(phi_prime / phi))
        object.__setattr__(self, "degenerate", degenerate)

    @property
    def discriminant(self) -> float:
        return self.s * self.s + 4 * self.t

    @property
    def branch_safe(self) -> bool:
        """s > 0, t < 0 and a positive discriminant: phi > phi' > 0."""
        return self.s > 0 and self.t < 0 and self.discriminant > 0 and not self.degenerate

    @property
    def half_s(self) -> complex:
        return complex(self.s / 2)

    def _kargs(self):
        return self.phi, self.phi_prime, self.degenerate, self.half_s

    def close(self, a, b, rtol=None) -> bool:
        return rel_err(a, b) <= (self.rtol if rtol is None else rtol)

    def with_params(self, s, t) -> "EvalContext":
        return EvalContext(s, t, self.rtol)


def rel_err(a, b) -> float:
    """|a - b| / max(|a|, |b|), and 0 when both vanish."""
    a, b = complex(a), complex(b)
    scale = max(abs(a), abs(b))
    if scale == 0:
        return 0.0
    return abs(a - b) / scale


def fib_fn(alpha, ctx: EvalContext) -> complex:
    """{alpha} = (phi**alpha - phi'**alpha)/(phi - phi'); alpha*(s/2)**(alpha-1) if degenerate."""
    return kernels.fib_binet(alpha, *ctx._kargs())


def lucas_fn(alpha, ctx: EvalContext) -> complex:
    """<alpha> = phi**alpha + phi'**alpha; 2*(s/2)**alpha if degenerate."""
    return kernels.lucas_binet(alpha, *ctx._kargs())


def _check_denominators(k: int, ctx: EvalContext) -> None:
    for m in range(1, k + 1):
        val = fib_fn(m, ctx)
        scale = max(abs(ctx.phi), abs(ctx.phi_prime), 1.0) ** (m - 1)
        if abs(val) < SINGULAR_TOL * scale:
            raise SingularParameterError(
                f"{{{m}}} vanishes at (s, t) = ({ctx.s}, {ctx.t})")


def fibotorial_value(k: int, ctx: EvalContext) -> complex:
    out = 1.0 + 0j
    for m in range(1, k + 1):
        out *= fib_fn(m, ctx)
    return out


def fibonomial_fn(alpha, k: int, ctx: EvalContext) -> complex:
    """{alpha choose k} = {alpha}{alpha-1}...{alpha-k+1} / {k}!."""
    if k < 0:
        return 0j
    if k == 0:
        return 1.0 + 0j
    _check_denominators(k, ctx)
    return kernels.fibonomial_row(alpha, k, *ctx._kargs())[k]


def fibonomial_row(alpha, N: int, ctx: EvalContext) -> list:
    """[{alpha choose k} for k in 0..N]."""
    _check_denominators(N, ctx)
    return kernels.fibonomial_row(alpha, N, *ctx._kargs())


def neg_fibonomial_check(alpha, k: int, ctx: EvalContext) -> float:
    """Residual of {-alpha choose k} = (-1)^k (-t)^(-alpha k - C(k,2)) {alpha+k-1 choose k}.

    Meaningful at branch-safe points, where (-t) > 0.
    """
    alpha = complex(alpha)
    lhs = fibonomial_fn(-alpha, k, ctx)
    rhs = ((-1) ** k * cpow(-ctx.t, -alpha * k - k * (k - 1) // 2)
           * fibonomial_fn(alpha + k - 1, k, ctx))
    return rel_err(lhs, rhs)


def scale_check(alpha, k: int, a: float, ctx: EvalContext) -> float:
    """Residual of {alpha choose k} at (a s, a^2 t) = a^(k(alpha-k)) {alpha choose k} at (s, t)."""
    if not a > 0:
        raise ParameterError("scale_check is restricted to a > 0")
    alpha = complex(alpha)
    scaled = ctx.with_params(a * ctx.s, a * a * ctx.t)
    lhs = fibonomial_fn(alpha, k, scaled)
    rhs = cpow(a, k * (alpha - k)) * fibonomial_fn(alpha, k, ctx)
    return rel_err(lhs, rhs)


def pascal_residuals(alpha, k: int, ctx: EvalContext) -> tuple:
    """Residuals of both Pascal recurrences at complex index.

    {alpha+1 choose k} = phi^k {alpha choose k} + phi'^(alpha+1-k) {alpha choose k-1}
                       = phi'^k {alpha choose k} + phi^(alpha+1-k) {alpha choose k-1}
    """
    alpha = complex(alpha)
    target = fibonomial_fn(alpha + 1, k, ctx)
    upper, lower = fibonomial_fn(alpha, k, ctx), fibonomial_fn(alpha, k - 1, ctx)
    phi, phip = ctx.phi, ctx.phi_prime
    first = cpow(phi, k) * upper + cpow(phip, alpha + 1 - k) * lower
    second = cpow(phip, k) * upper + cpow(phi, alpha + 1 - k) * lower
    return rel_err(target, first), rel_err(target, second)
