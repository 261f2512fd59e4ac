"""Exact arithmetic: rationals, Laurent polynomials in (s, t), and Z[s,t][phi].

Coefficients are kept as ``int`` whenever the denominator is one and as
:class:`fractions.Fraction` otherwise; both are exact rationals, and the
integer fast path keeps the polynomial kernels cheap.
"""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

from .errors import IdentityViolation

BigRational = Fraction

Exponent = Tuple[int, int]
Scalar = Union[int, Fraction]


def _norm_scalar(c) -> Scalar:
    if isinstance(c, bool):
        c = int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        c = Fraction(c.numerator, c.denominator)
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        return _norm_scalar(Fraction(c))
    raise TypeError(f"not an exact rational: {c!r}")


def format_rational(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


class BivarLaurentPoly:
    """Finitely supported sum of c * s**i * t**j with i >= 0 and j any integer.

    Instances are immutable.  Zero coefficients are never stored, so equality is
    term-by-term comparison of the support.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, object] | None = None):
        clean: Dict[Exponent, Scalar] = {}
        if terms:
            for (i, j), c in terms.items():
                i, j = int(i), int(j)
                if i < 0:
                    raise ValueError("s-exponents must be nonnegative")
                c = _norm_scalar(c)
                if c:
                    clean[(i, j)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exponent, Scalar]) -> "BivarLaurentPoly":
        # trusted constructor: keys are int pairs, values nonzero normalized scalars
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # -- constructors ------------------------------------------------------
    @classmethod
    def const(cls, c) -> "BivarLaurentPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "BivarLaurentPoly":
        return cls({(i, j): c})

    @classmethod
    def s(cls) -> "BivarLaurentPoly":
        return cls({(1, 0): 1})

    @classmethod
    def t(cls) -> "BivarLaurentPoly":
        return cls({(0, 1): 1})

    # -- container protocol -------------------------------------------------
    def items(self) -> Iterator[Tuple[Exponent, Scalar]]:
        """Terms in canonical order (lexicographic in (i, j))."""
        return iter(sorted(self._terms.items()))

    def coefficient(self, i: int, j: int) -> Scalar:
        return self._terms.get((i, j), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0, 0)}

    def constant_value(self) -> Scalar:
        return self._terms.get((0, 0), 0)

    def min_t_exponent(self) -> int:
        return min(j for _, j in self._terms) if self._terms else 0

    def degree_s(self) -> int:
        return max((i for i, _ in self._terms), default=0)

    def is_nonnegative_integral(self) -> bool:
        return all(isinstance(c, int) and c >= 0 for c in self._terms.values())

    # -- ring operations ----------------------------------------------------
    @staticmethod
    def _coerce(other) -> "BivarLaurentPoly":
        if isinstance(other, BivarLaurentPoly):
            return other
        return BivarLaurentPoly.const(other)

    def __add__(self, other):
        if not isinstance(other, (BivarLaurentPoly, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = _norm_scalar(out.get(k, 0) + c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return BivarLaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return BivarLaurentPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (BivarLaurentPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _norm_scalar(other)
            if not c:
                return BivarLaurentPoly._raw({})
            return BivarLaurentPoly._raw(
                {k: _norm_scalar(v * c) for k, v in self._terms.items()})
        if not isinstance(other, BivarLaurentPoly):
            return NotImplemented
        from . import kernels
        return BivarLaurentPoly._raw(kernels.poly_mul(self._terms, other._terms))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._terms) != 1:
                raise IdentityViolation("only monomials have Laurent inverses")
            ((i, j), c), = self._terms.items()
            if i:
                raise IdentityViolation("s is not invertible in the Laurent ring")
            return BivarLaurentPoly({(0, j * n): Fraction(1) / Fraction(c) ** (-n)})
        result = BivarLaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exact_div(self, divisor) -> "BivarLaurentPoly":
        """Return r with r * divisor == self, or raise IdentityViolation."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise IdentityViolation("division by the zero polynomial")
        if self.is_zero():
            return self
        if len(divisor._terms) == 1:
            ((di, dj), dc), = divisor._terms.items()
            out = {}
            for (i, j), c in self._terms.items():
                if i < di:
                    raise IdentityViolation(f"{divisor} does not divide {self}")
                out[(i - di, j - dj)] = _norm_scalar(Fraction(c) / dc)
            return BivarLaurentPoly._raw(out)
        from . import kernels
        # shift t-exponents so both operands are ordinary polynomials; a quotient
        # of t-free-at-the-bottom polynomials needs no negative powers of t
        ps, qs = self.min_t_exponent(), divisor.min_t_exponent()
        p0 = {(i, j - ps): c for (i, j), c in self._terms.items()}
        q0 = {(i, j - qs): c for (i, j), c in divisor._terms.items()}
        quotient = kernels.poly_exact_div(p0, q0)
        if quotient is None:
            raise IdentityViolation(f"{divisor} does not divide {self}")
        shift = ps - qs
        return BivarLaurentPoly._raw({(i, j + shift): c for (i, j), c in quotient.items()})

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BivarLaurentPoly.const(other)
        if not isinstance(other, BivarLaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation and substitution ----------------------------------------
    def evaluate(self, s, t):
        """Evaluate at numbers; exact when s and t are exact rationals."""
        total = 0
        for (i, j), c in self._terms.items():
            total += c * s ** i * t ** j
        return total

    def rescale(self, s_factor, t_factor) -> "BivarLaurentPoly":
        """Substitute s -> s_factor * s and t -> t_factor * t (exact factors)."""
        return BivarLaurentPoly(
            {(i, j): Fraction(c) * Fraction(s_factor) ** i * Fraction(t_factor) ** j
             for (i, j), c in self._terms.items()})

    def specialize_t(self, t_value, s_scale=1) -> "BivarLaurentPoly":
        """Fix t to a number and substitute s -> s_scale * s.

        The result is a polynomial in s alone, read as a polynomial in the
        residual variable of a one-parameter family (e.g. x for s = 2x, t = -1).
        """
        out: Dict[Exponent, Fraction] = {}
        t_value, s_scale = Fraction(t_value), Fraction(s_scale)
        for (i, j), c in self._terms.items():
            out[(i, 0)] = out.get((i, 0), 0) + c * s_scale ** i * t_value ** j
        return BivarLaurentPoly(out)

    # -- serialization ------------------------------------------------------
    def to_json_obj(self) -> list:
        return [[i, j, format_rational(c)] for (i, j), c in self.items()]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Iterable) -> "BivarLaurentPoly":
        terms: Dict[Exponent, Fraction] = {}
        for i, j, c in obj:
            terms[(int(i), int(j))] = terms.get((int(i), int(j)), 0) + Fraction(c)
        return cls(terms)

    @classmethod
    def from_json(cls, text: str) -> "BivarLaurentPoly":
        return cls.from_json_obj(json.loads(text))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        # descending powers of s, then ascending powers of t, as in printed tables
        keys = sorted(self._terms, key=lambda k: (-k[0], k[1]))
        parts = []
        for i, j in keys:
            c = self._terms[(i, j)]
            mono = ""
            if i:
                mono += "s" if i == 1 else f"s^{i}"
            if j:
                mono += "t" if j == 1 else (f"t^{j}" if j > 0 else f"t^({j})")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            else:
                body = f"{mag}{mono}" if isinstance(mag, int) else f"({mag}){mono}"
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"BivarLaurentPoly({self})"


S = BivarLaurentPoly.s()
T = BivarLaurentPoly.t()
ONE = BivarLaurentPoly.const(1)
ZERO = BivarLaurentPoly()


def poly_arith(op: str, p: BivarLaurentPoly, q: BivarLaurentPoly) -> BivarLaurentPoly:
    """Dispatch ``add``, ``mul`` or ``exact_div`` on two Laurent polynomials."""
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "exact_div":
        return p.exact_div(q)
    raise ValueError(f"unknown polynomial operation {op!r}")


class RationalFunction:
    """Quotient num/den of Laurent polynomials, kept unreduced.

    No gcd is taken (factorization is out of scope); the constructor only
    cancels the denominator when it divides the numerator exactly.
    Equality is decided by cross multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = BivarLaurentPoly._coerce(num)
        den = ONE if den is None else BivarLaurentPoly._coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den != ONE and not num.is_zero():
            try:
                num, den = num.exact_div(den), ONE
            except IdentityViolation:
                pass
        elif num.is_zero():
            den = ONE
        self.num = num
        self.den = den

    @staticmethod
    def _coerce(x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        return RationalFunction(x)

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, BivarLaurentPoly)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def as_poly(self) -> BivarLaurentPoly:
        if self.den != ONE:
            raise IdentityViolation(f"({self.num})/({self.den}) is not a polynomial")
        return self.num

    def evaluate(self, s, t):
        return self.num.evaluate(s, t) / self.den.evaluate(s, t)

    def __str__(self):
        return str(self.num) if self.den == ONE else f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


class QuadExtElem:
    """a + b*phi in the ring where phi**2 = s*phi + t.

    ``a`` and ``b`` are rational functions of (s, t).  The reduction rule is applied
    on every product, so the pair (a, b) is the unique representation.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = RationalFunction._coerce(a)
        self.b = RationalFunction._coerce(b)

    @classmethod
    def phi(cls) -> "QuadExtElem":
        return cls(0, 1)

    @classmethod
    def phi_prime(cls) -> "QuadExtElem":
        return cls(S, -1)

    @staticmethod
    def _coerce(x) -> "QuadExtElem":
        return x if isinstance(x, QuadExtElem) else QuadExtElem(x)

    def __add__(self, other):
        other = self._coerce(other)
        return QuadExtElem(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtElem(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return quad_mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("use quad_phi_power for negative powers of phi")
        result, base = QuadExtElem(1), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conj(self) -> "QuadExtElem":
        """Image under phi -> phi' = s - phi."""
        return QuadExtElem(self.a + self.b * S, -self.b)

    def norm(self) -> "QuadExtElem":
        return self * self.conj()

    def is_scalar(self) -> bool:
        return self.b.is_zero()

    def scalar(self) -> RationalFunction:
        if not self.is_scalar():
            raise IdentityViolation(f"{self} has a nonzero phi-component")
        return self.a

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, BivarLaurentPoly, RationalFunction)):
            other = QuadExtElem(other)
        if not isinstance(other, QuadExtElem):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    __hash__ = None

    def __str__(self):
        return f"({self.a}) + ({self.b})*phi"

    def __repr__(self):
        return f"QuadExtElem({self.a}, {self.b})"


def quad_mul(x: QuadExtElem, y: QuadExtElem) -> QuadExtElem:
    """Product reduced by phi**2 = s*phi + t."""
    bb = x.b * y.b
    return QuadExtElem(x.a * y.a + bb * T, x.a * y.b + x.b * y.a + bb * S)


def quad_phi_power(n: int) -> QuadExtElem:
    """phi**n as (t*{n-1}, {n}); negative n uses phi**-1 = (phi - s)/t."""
    base = QuadExtElem.phi()
    if n < 0:
        base = QuadExtElem(-S * T ** -1, T ** -1)
        n = -n
    return base ** n
