"""Pure-Python hot kernels.

Same API as the compiled ``_ckernels`` module; :mod:`stfib.kernels` picks one at
import time.  Exact kernels work on ``{(i, j): coeff}`` dictionaries, numeric
kernels on Python ``complex``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

IMPLEMENTATION = "python"

# integer exponents up to this size use exact repeated squaring in cpow
_INT_POW_LIMIT = 1 << 20


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def poly_mul(p: dict, q: dict) -> dict:
    if len(p) > len(q):
        p, q = q, p
    out: dict = {}
    get = out.get
    qi = list(q.items())
    for (i1, j1), c1 in p.items():
        for (i2, j2), c2 in qi:
            k = (i1 + i2, j1 + j2)
            out[k] = get(k, 0) + c1 * c2
    return {k: _norm(c) for k, c in out.items() if c}


def poly_exact_div(p: dict, q: dict):
    """Exact quotient of polynomials (nonnegative exponents) or None.

    Multivariate long division by the lex-leading term of q; with an exact
    divisor every step is forced, so any leftover means q does not divide p.
    """
    lead = max(q)
    li, lj = lead
    lc = q[lead]
    rest = [(k, c) for k, c in q.items() if k != lead]
    rem = dict(p)
    quot: dict = {}
    while rem:
        top = max(rem)
        ti, tj = top
        if ti < li or tj < lj:
            return None
        c = rem.pop(top)
        if isinstance(c, int) and isinstance(lc, int) and c % lc == 0:
            f = c // lc
        else:
            f = _norm(Fraction(c) / lc)
        mi, mj = ti - li, tj - lj
        quot[(mi, mj)] = f
        for (i, j), qc in rest:
            k = (i + mi, j + mj)
            v = rem.get(k, 0) - f * qc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return {k: _norm(c) for k, c in quot.items()}


def cpow(z: complex, a: complex) -> complex:
    """z**a = exp(a * Log z) with the principal branch, arg in (-pi, pi].

    Integer exponents use repeated squaring and positive real bases use the
    real power, both of which agree with the principal branch.  Overflow gives
    inf, as in the compiled kernel.
    """
    try:
        return _cpow(z, a)
    except OverflowError:
        return complex(math.inf, 0.0)


def _cpow(z: complex, a: complex) -> complex:
    z = complex(z)
    a = complex(a)
    # a signed zero in the imaginary part would select arg = -pi
    z = complex(z.real, z.imag + 0.0)
    if a.imag == 0.0 and a.real == int(a.real) and abs(a.real) <= _INT_POW_LIMIT:
        n = int(a.real)
        if z == 0:
            if n == 0:
                return 1.0 + 0j
            if n > 0:
                return 0j
            raise ZeroDivisionError("0 raised to a negative power")
        if z.imag == 0.0:
            return complex(z.real ** n, 0.0)
        return z ** n
    if z == 0:
        if a.real > 0:
            return 0j
        raise ZeroDivisionError("0 raised to a power with nonpositive real part")
    if z.imag == 0.0 and z.real > 0.0 and a.imag == 0.0:
        return complex(z.real ** a.real, 0.0)
    return cmath.exp(a * cmath.log(z))


def _cexpm1(z: complex) -> complex:
    """exp(z) - 1 without cancellation for small |z|."""
    x, y = z.real, z.imag
    if y == 0.0:
        return complex(math.expm1(x), 0.0)
    h = math.sin(y / 2)
    return complex(math.expm1(x) * math.cos(y) - 2 * h * h, math.exp(x) * math.sin(y))


def _plog(z: complex) -> complex:
    z = complex(z)
    return cmath.log(complex(z.real, z.imag + 0.0))


def fib_binet(beta, phi, phip, degenerate, half_s) -> complex:
    """{beta} = (phi**beta - phi'**beta)/(phi - phi'), or the degenerate limit.

    Non-integer beta uses phi'**beta * expm1(beta (Log phi - Log phi')), which
    keeps full relative accuracy as beta approaches an integer.
    """
    beta = complex(beta)
    if degenerate:
        return beta * cpow(half_s, beta - 1)
    if beta.imag == 0.0 and beta.real == int(beta.real) and abs(beta.real) <= _INT_POW_LIMIT:
        return (cpow(phi, beta) - cpow(phip, beta)) / (phi - phip)
    return cpow(phip, beta) * _cexpm1(beta * (_plog(phi) - _plog(phip))) / (phi - phip)


def lucas_binet(beta, phi, phip, degenerate, half_s) -> complex:
    beta = complex(beta)
    if degenerate:
        return 2 * cpow(half_s, beta)
    return cpow(phi, beta) + cpow(phip, beta)


def fibonomial_row(alpha, N, phi, phip, degenerate, half_s) -> list:
    """[{alpha choose k} for k = 0..N] via c_k = c_{k-1} * {alpha-k+1} / {k}."""
    alpha = complex(alpha)
    row = [1.0 + 0j]
    c = 1.0 + 0j
    for k in range(1, N + 1):
        num = fib_binet(alpha - (k - 1), phi, phip, degenerate, half_s)
        den = fib_binet(k, phi, phip, degenerate, half_s)
        c = c * num / den
        row.append(c)
    return row


def unit_series_coeffs(alpha, N, v, phi, phip, degenerate, half_s) -> list:
    """Coefficients {alpha choose k} * v**C(k,2) of (1 (+)_{1,v} x)^(alpha).

    The v-power is folded into the running product (ratio v**k per step) so the
    coefficients neither overflow nor underflow when the fibotorial and the
    deformation balance each other.
    """
    alpha = complex(alpha)
    v = complex(v)
    out = [1.0 + 0j]
    c = 1.0 + 0j
    vk = 1.0 + 0j
    for k in range(N):
        num = fib_binet(alpha - k, phi, phip, degenerate, half_s)
        den = fib_binet(k + 1, phi, phip, degenerate, half_s)
        c = c * num / den * vk
        vk = vk * v
        out.append(c)
    return out


def horner(coeffs, x) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def partial_sums(coeffs, x) -> list:
    out = []
    acc = 0j
    xp = 1.0 + 0j
    for c in coeffs:
        acc += c * xp
        xp *= x
        out.append(acc)
    return out


def isfinite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)
