"""Integer-index (s,t)-Fibonacci and Lucas polynomials, fibotorials, fibonomials."""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional

from .errors import IdentityViolation, ParameterError, UnsupportedIndexError
from .exact import ONE, S, T, ZERO, BivarLaurentPoly, QuadExtElem, quad_phi_power

_lock = threading.Lock()
_fib_cache: Dict[int, BivarLaurentPoly] = {0: ZERO, 1: ONE}
_lucas_cache: Dict[int, BivarLaurentPoly] = {0: BivarLaurentPoly.const(2), 1: S}
_fact_cache: Dict[int, BivarLaurentPoly] = {0: ONE}


def _extend(cache: Dict[int, BivarLaurentPoly], n: int) -> BivarLaurentPoly:
    with _lock:
        top = max(cache)
        while top < n:
            cache[top + 1] = S * cache[top] + T * cache[top - 1]
            top += 1
        return cache[n]


def fib_poly(n: int) -> BivarLaurentPoly:
    """{n}_{s,t}: {0}=0, {1}=1, {n+2} = s{n+1} + t{n}.

    Negative n gives the Laurent polynomial -(-t)**n * {-n}, which is what the
    recurrence run backwards produces.
    """
    if n < 0:
        sign = -1 if n % 2 == 0 else 1   # -(-1)**n
        return fib_poly(-n) * (T ** n) * sign
    cached = _fib_cache.get(n)
    return cached if cached is not None else _extend(_fib_cache, n)


def lucas_poly(n: int) -> BivarLaurentPoly:
    """<n>_{s,t}: <0>=2, <1>=s, same recurrence."""
    if n < 0:
        raise UnsupportedIndexError("Lucas polynomials are defined here for n >= 0")
    cached = _lucas_cache.get(n)
    return cached if cached is not None else _extend(_lucas_cache, n)


def fibotorial(n: int) -> BivarLaurentPoly:
    """{n}! = {1}{2}...{n}, with {0}! = 1."""
    if n < 0:
        raise UnsupportedIndexError("fibotorial needs n >= 0")
    cached = _fact_cache.get(n)
    if cached is not None:
        return cached
    with _lock:
        top = max(_fact_cache)
        while top < n:
            _fact_cache[top + 1] = _fact_cache[top] * fib_poly(top + 1)
            top += 1
        return _fact_cache[n]


def lucas_factorial(n: int) -> BivarLaurentPoly:
    """<n>! = <1><2>...<n>."""
    out = ONE
    for k in range(1, n + 1):
        out = out * lucas_poly(k)
    return out


def fibonomial(n: int, k: int) -> BivarLaurentPoly:
    """{n choose k}_{s,t} by exact division of accumulated products.

    The numerator {n}{n-1}...{n-k+i} is divided by {i} after each factor; each
    partial quotient is itself a fibonomial, so every division must be exact and
    a failure raises IdentityViolation.
    """
    if n < 0:
        raise UnsupportedIndexError("fibonomial(n, k) needs n >= 0")
    if k < 0 or k > n:
        return ZERO
    k = min(k, n - k)
    acc = ONE
    for i in range(1, k + 1):
        acc = (acc * fib_poly(n - k + i)).exact_div(fib_poly(i))
    return acc


def central_fibonomial(n: int) -> BivarLaurentPoly:
    return fibonomial(2 * n, n)


# -- parameters and specializations ------------------------------------------

@dataclass(frozen=True)
class FibParams:
    """Either symbolic (s, t) or a numeric point with s, t nonzero and finite."""

    s: Optional[float] = None
    t: Optional[float] = None

    def __post_init__(self):
        if (self.s is None) != (self.t is None):
            raise ParameterError("give both s and t, or neither")
        if self.s is not None:
            for name, val in (("s", self.s), ("t", self.t)):
                if not math.isfinite(val):
                    raise ParameterError(f"{name} must be finite")
                if val == 0:
                    raise ParameterError(f"{name} must be nonzero")

    @property
    def symbolic(self) -> bool:
        return self.s is None

    @property
    def discriminant(self):
        return None if self.symbolic else self.s * self.s + 4 * self.t

    @property
    def degenerate(self) -> bool:
        return not self.symbolic and self.discriminant == 0


# tag -> (s, t) as exact rationals; parametrized tags are built by specialization_params
SPECIALIZATIONS = {
    "naturals": (2, -1),
    "fibonacci": (1, 1),
    "pell": (2, 1),
    "jacobsthal": (1, 2),
    "mersenne": (3, -2),
}


@dataclass(frozen=True)
class SpecializationKind:
    """A named point (or one-parameter family) of the (s, t) plane.

    ``tag`` is one of naturals, fibonacci, pell, jacobsthal, mersenne,
    pq_numbers (params p, q), pq_lucas_sequence (params P, Q),
    chebyshev_u (param x0, None keeps x symbolic) and fibonacci_polys (same).
    """

    tag: str
    params: tuple = ()

    def st(self):
        """The (s, t) pair, or None for a family evaluated symbolically."""
        if self.tag in SPECIALIZATIONS:
            return tuple(Fraction(v) for v in SPECIALIZATIONS[self.tag])
        if self.tag == "pq_numbers":
            p, q = (Fraction(v) for v in self.params)
            return p + q, -p * q
        if self.tag == "pq_lucas_sequence":
            P, Q = (Fraction(v) for v in self.params)
            return P, -Q
        if self.tag == "chebyshev_u":
            x0 = self.params[0] if self.params else None
            return None if x0 is None else (2 * Fraction(x0), Fraction(-1))
        if self.tag == "fibonacci_polys":
            x0 = self.params[0] if self.params else None
            return None if x0 is None else (Fraction(x0), Fraction(1))
        raise ParameterError(f"unknown specialization {self.tag!r}")


def specialize(kind: SpecializationKind, n: int, which: str = "fib"):
    """{n} (or <n> with which="lucas") at the tag's (s, t).

    Families with a free variable (chebyshev_u, fibonacci_polys without x0)
    return a polynomial in that variable, stored as a polynomial in s.
    """
    if n < 0:
        raise UnsupportedIndexError("specialize needs n >= 0")
    poly = fib_poly(n) if which == "fib" else lucas_poly(n)
    st = kind.st()
    if st is None:
        if kind.tag == "chebyshev_u":
            return poly.specialize_t(-1, s_scale=2)
        return poly.specialize_t(1)
    value = poly.evaluate(*st)
    return value.numerator if isinstance(value, Fraction) and value.denominator == 1 else value


def verify_pascal(n: int, k: int) -> bool:
    """Check both Pascal recurrences for {n+1 choose k} inside Z[s,t][phi].

    {n+1 choose k} = phi^k {n choose k} + phi'^(n+1-k) {n choose k-1}
                   = phi'^k {n choose k} + phi^(n+1-k) {n choose k-1}
    True iff both right sides have zero phi-part and scalar part equal to
    fibonomial(n+1, k).
    """
    if not 1 <= k <= n - 1:
        raise UnsupportedIndexError("verify_pascal needs 1 <= k <= n-1")
    target = QuadExtElem(fibonomial(n + 1, k))
    upper, lower = QuadExtElem(fibonomial(n, k)), QuadExtElem(fibonomial(n, k - 1))
    phi_k, phi_rest = quad_phi_power(k), quad_phi_power(n + 1 - k)
    first = phi_k * upper + phi_rest.conj() * lower
    second = phi_k.conj() * upper + phi_rest * lower
    return first == target and second == target
