from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stfib.errors import ParameterError, UnsupportedIndexError
from stfib.exact import S, T
from stfib.fib import (SPECIALIZATIONS, FibParams, SpecializationKind, central_fibonomial,
                       fib_poly, fibonomial, fibotorial, lucas_factorial, lucas_poly,
                       specialize, verify_pascal)

from strategies import rational_points


def int_seq(s, t, a0, a1, n):
    out = [a0, a1]
    while len(out) < n:
        out.append(s * out[-1] + t * out[-2])
    return out[:n]


@given(st.integers(0, 40), rational_points)
def test_recurrence_against_numbers(n, pt):
    s, t = pt
    assert fib_poly(n).evaluate(s, t) == int_seq(s, t, 0, 1, n + 1)[n]
    assert lucas_poly(n).evaluate(s, t) == int_seq(s, t, 2, s, n + 1)[n]


@pytest.mark.parametrize("n", range(-8, 2))
def test_backward_recurrence(n):
    assert fib_poly(n + 2) == S * fib_poly(n + 1) + T * fib_poly(n)


def test_negative_index_rejected():
    with pytest.raises(UnsupportedIndexError):
        lucas_poly(-1)


@pytest.mark.parametrize("tag", sorted(SPECIALIZATIONS))
def test_specializations(tag):
    s, t = SPECIALIZATIONS[tag]
    kind = SpecializationKind(tag)
    assert [specialize(kind, n) for n in range(21)] == int_seq(s, t, 0, 1, 21)
    assert [specialize(kind, n, "lucas") for n in range(21)] == int_seq(s, t, 2, s, 21)


def test_named_sequences():
    pell = SpecializationKind("pell")
    assert [specialize(pell, n) for n in range(9)] == [0, 1, 2, 5, 12, 29, 70, 169, 408]
    assert [specialize(pell, n, "lucas") for n in range(7)] == [2, 2, 6, 14, 34, 82, 198]
    jac = SpecializationKind("jacobsthal")
    assert [specialize(jac, n, "lucas") for n in range(8)] == [2, 1, 5, 7, 17, 31, 65, 127]
    assert [specialize(SpecializationKind("mersenne"), n) for n in range(7)] == [2 ** n - 1 for n in range(7)]
    assert [specialize(SpecializationKind("naturals"), n) for n in range(7)] == list(range(7))


def test_parametrized_families():
    pq = SpecializationKind("pq_numbers", (3, 2))      # (p^n - q^n)/(p - q)
    assert [specialize(pq, n) for n in range(6)] == [(3 ** n - 2 ** n) for n in range(6)]
    cheb = SpecializationKind("chebyshev_u", (Fraction(1, 2),))
    assert [specialize(cheb, n) for n in range(1, 7)] == [1, 1, 0, -1, -1, 0]
    sym = specialize(SpecializationKind("chebyshev_u"), 3)
    assert sym == S * S * 4 - 1                          # U_2(x) = 4x^2 - 1 in the free variable
    lucas_seq = SpecializationKind("pq_lucas_sequence", (1, -1))
    assert [specialize(lucas_seq, n) for n in range(8)] == [0, 1, 1, 2, 3, 5, 8, 13]


@pytest.mark.parametrize("n", range(31))
def test_doubling(n):
    assert fib_poly(2 * n) == lucas_poly(n) * fib_poly(n)


@pytest.mark.parametrize("n", range(21))
def test_discriminant(n):
    assert lucas_poly(n) ** 2 - (S * S + T * 4) * fib_poly(n) ** 2 == (-T) ** n * 4


@pytest.mark.parametrize("n", range(13))
def test_fibonomial_row(n):
    for k in range(n + 1):
        f = fibonomial(n, k)
        assert f.is_nonnegative_integral()
        assert f == fibonomial(n, n - k)
        assert f * fibotorial(k) * fibotorial(n - k) == fibotorial(n)


def test_fibonomial_out_of_range_is_zero():
    assert fibonomial(4, 5).is_zero() and fibonomial(4, -1).is_zero()


@pytest.mark.parametrize("n", range(2, 11))
def test_pascal(n):
    assert all(verify_pascal(n, k) for k in range(1, n))


def test_pascal_index_range():
    with pytest.raises(UnsupportedIndexError):
        verify_pascal(3, 0)


def test_fibonomial_classical_values():
    assert fibonomial(4, 2).evaluate(1, 1) == 6
    assert fibonomial(6, 3).evaluate(2, -1) == 20      # ordinary binomial at the degenerate point
    assert central_fibonomial(3) == fibonomial(6, 3)
    assert lucas_factorial(3) == lucas_poly(1) * lucas_poly(2) * lucas_poly(3)


def test_params():
    assert FibParams(2, -1).degenerate and FibParams().symbolic
    for bad in ((0, 1), (1, 0), (float("inf"), 1)):
        with pytest.raises(ParameterError):
            FibParams(*bad)
    with pytest.raises(ParameterError):
        FibParams(1, None)
