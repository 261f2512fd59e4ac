from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stfib.errors import IdentityViolation
from stfib.exact import (ONE, S, T, ZERO, BivarLaurentPoly, QuadExtElem, RationalFunction,
                         quad_phi_power)
from stfib.fib import fib_poly, lucas_poly

from strategies import nonzero_polys, polys, rational_points


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert p + ZERO == p and p * ONE == p
    assert p - p == ZERO


@given(polys, nonzero_polys)
def test_exact_div_roundtrip(p, q):
    assert (p * q).exact_div(q) == p


@given(polys, rational_points)
def test_evaluation_is_a_homomorphism(p, pt):
    q = p * p + S * p
    assert q.evaluate(*pt) == p.evaluate(*pt) ** 2 + pt[0] * p.evaluate(*pt)


@given(polys)
def test_json_roundtrip(p):
    assert BivarLaurentPoly.from_json(p.to_json()) == p


def test_exact_div_failure():
    with pytest.raises(IdentityViolation):
        (S * S + T).exact_div(S + 1)
    with pytest.raises(IdentityViolation):
        S.exact_div(ZERO)


def test_negative_s_exponent_rejected():
    with pytest.raises(ValueError):
        BivarLaurentPoly({(-1, 0): 1})


def test_laurent_in_t():
    p = T ** -2 * (S + T)
    assert p.coefficient(1, -2) == 1 and p.coefficient(0, -1) == 1
    assert p.evaluate(Fraction(2), Fraction(1, 2)) == Fraction(10)


def test_str_matches_table_style():
    assert str(lucas_poly(5)) == "s^5 + 5s^3t + 5st^2"
    assert str(S * Fraction(1, 2) - T ** -1) == "(1/2)s - t^(-1)"


@given(polys, polys, polys, polys)
def test_conj_is_ring_homomorphism(a, b, c, d):
    x, y = QuadExtElem(a, b), QuadExtElem(c, d)
    assert (x * y).conj() == x.conj() * y.conj()
    assert x.conj().conj() == x
    assert x.norm().is_scalar()


@pytest.mark.parametrize("n", range(-6, 25))
def test_phi_power(n):
    p = quad_phi_power(n)
    assert p * quad_phi_power(-n) == QuadExtElem(1)
    if n >= 0:
        assert p.b == fib_poly(n)
        assert p + p.conj() == QuadExtElem(lucas_poly(n))


def test_phi_relations():
    phi, phip = QuadExtElem.phi(), QuadExtElem.phi_prime()
    assert phi * phi == S * phi + T
    assert phi + phip == QuadExtElem(S)
    assert phi * phip == QuadExtElem(-T)


def test_rational_function():
    r = RationalFunction(S * S - T * T, S - T)
    assert r.is_polynomial() and r.as_poly() == S + T
    q = RationalFunction(ONE, S) + RationalFunction(ONE, T)
    assert q == RationalFunction(S + T, S * T)
    assert not q.is_polynomial()
    with pytest.raises(IdentityViolation):
        q.as_poly()
    with pytest.raises(ZeroDivisionError):
        RationalFunction(S, ZERO)
