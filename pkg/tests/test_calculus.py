import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stfib.calculus import (TruncatedSeries, rule_residuals, st_derivative_at, st_derivative_iter,
                            st_derivative_series)
from stfib.errors import DomainError, ParameterError
from stfib.exact import S
from stfib.fib import fib_poly
from stfib.real_index import EvalContext, fib_fn

from strategies import branch_safe

FIB = EvalContext(1.0, 1.0)
C32 = EvalContext(3.0, -2.0)
frac_lists = st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=5), min_size=2, max_size=10)


def test_point_examples():
    assert st_derivative_at(lambda x: x ** 3, 2.0, FIB) == pytest.approx(8)
    assert st_derivative_at(lambda x: 7.0, 1.3, FIB) == 0
    assert st_derivative_at(cmath.exp, 1.0, C32) == pytest.approx(math.e ** 2 - math.e, rel=1e-12)


def test_series_examples():
    assert list(st_derivative_series(TruncatedSeries([0, 0, 1]))) == [0, S]
    assert list(st_derivative_series(TruncatedSeries([1, 1, 1, 1]), (1, 1))) == [1, 1, 2]
    assert all(c == 0 for c in st_derivative_series(TruncatedSeries([0, 0, 0, 0]), (1, 1)))


def test_zero_point_needs_derivative():
    with pytest.raises(DomainError):
        st_derivative_at(cmath.exp, 0.0, C32)
    assert st_derivative_at(cmath.exp, 0.0, C32, f_prime_at_zero=1.0) == 1.0


def test_degenerate_point_rejected_numerically():
    with pytest.raises(ParameterError):
        st_derivative_at(cmath.exp, 1.0, EvalContext(2.0, -1.0))


@given(frac_lists)
def test_degenerate_series_is_ordinary_derivative(coeffs):
    got = list(st_derivative_series(TruncatedSeries(coeffs), (2, -1)))
    assert got == [k * coeffs[k] for k in range(1, len(coeffs))]


@given(frac_lists, frac_lists, st.fractions(-5, 5), st.fractions(-5, 5))
def test_series_linearity(f, g, a, b):
    F, G = TruncatedSeries(f), TruncatedSeries(g)
    assert st_derivative_series(F * a + G * b) == st_derivative_series(F) * a + st_derivative_series(G) * b


@pytest.mark.parametrize("n", range(9))
def test_iterated_monomial(n):
    ser = TruncatedSeries([0] * n + [1])
    for k in range(n + 1):
        expected = 1
        for j in range(k):
            expected = fib_poly(n - j) * expected
        assert ser[n - k] == expected
        assert all(c == 0 for i, c in enumerate(ser) if i != n - k)
        if k < n:
            ser = st_derivative_series(ser)


@given(branch_safe, st.floats(0.2, 1.5), st.integers(0, 7))
def test_numeric_monomial_rule(pt, x, n):
    ctx = EvalContext(*pt)
    got = st_derivative_at(lambda z: z ** n, x, ctx)
    assert got == pytest.approx(fib_fn(n, ctx) * x ** (n - 1) if n else 0, rel=1e-9, abs=1e-12)


def test_series_operator_matches_numeric():
    ser = TruncatedSeries([1 / math.factorial(k) for k in range(30)])
    numeric = st_derivative_at(ser.evaluate, 0.6, C32)
    assert st_derivative_series(ser, C32).evaluate(0.6) == pytest.approx(numeric, rel=1e-10)


def test_iterated_numeric():
    ctx = EvalContext(1.0, -0.21)
    got = st_derivative_iter(lambda z: z ** 5, 3, 0.8, ctx)
    expected = fib_fn(5, ctx) * fib_fn(4, ctx) * fib_fn(3, ctx) * 0.8 ** 2
    assert got == pytest.approx(expected, rel=1e-9)


@pytest.mark.parametrize("f,g,x,ctx", [
    (lambda z: z ** 2, lambda z: z ** 3, 1.3, EvalContext(1.0, 1.0)),
    (cmath.exp, lambda z: z ** 2 + 1, 0.7, EvalContext(2.0, 1.0)),
    (cmath.exp, cmath.exp, 0.4, EvalContext(3.0, -2.0)),
])
def test_rules(f, g, x, ctx):
    res = rule_residuals(f, g, x, ctx)
    assert set(res) == {"linearity", "product_1", "product_2", "quotient_1", "quotient_2"}
    assert max(res.values()) <= 1e-9


def test_quotient_by_zero():
    with pytest.raises(DomainError):
        rule_residuals(cmath.exp, lambda z: 0.0, 0.5, C32)


def test_truncated_series_algebra():
    a = TruncatedSeries([1, 2, 3])
    b = TruncatedSeries([Fraction(1, 2), 0, 1, 5], order=3)
    assert (a * b).order == 2
    assert list(a * b) == [Fraction(1, 2), 1, Fraction(5, 2)]
    assert list(a.shift_down()) == [2, 3] and list(a.shift_up()) == [0, 1, 2, 3]
    assert list(a.scale_x(2)) == [1, 4, 12] and list(a.negate_x()) == [1, -2, 3]
    assert a.evaluate(Fraction(1, 2)) == Fraction(11, 4)
    assert a.to_json_obj()["order"] == 2
