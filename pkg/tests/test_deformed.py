import math
import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stfib.deformed import (SYMBOLIC_KINDS, A, DeformedPoly, DeformParams, SeriesQuery, U, V, X, Y,
                            _direct_terms, classify_convergence, deformed_power_finite,
                            deformed_product_phi, deformed_series_partial, infinite_product_phi,
                            pantograph_residual, phi_power_via_products, power_symbolic,
                            rational_power_series, reduce_to_unit_residual, series_terms,
                            theorem_residuals, theorem_symbolic)
from stfib.errors import (DomainError, HypothesisWarning, ParameterError, UnsupportedRegimeError,
                          UsageError)
from stfib.exact import S, T
from stfib.fib import fib_poly, fibonomial
from stfib.real_index import EvalContext, cpow, fib_fn, rel_err

from strategies import branch_safe

C32 = EvalContext(3.0, -2.0)
C121 = EvalContext(1.0, -0.21)
FIB = EvalContext(1.0, 1.0)


# -- exact ring ----------------------------------------------------------------

def test_phi_reduction():
    phi, phip = DeformedPoly.phi(), DeformedPoly.phi_prime()
    assert phi * phi == DeformedPoly.const(S) * phi + DeformedPoly.const(T)
    assert phi + phip == DeformedPoly.const(S)


def test_polynomial_derivative():
    assert (X ** 5).st_derivative("x") == DeformedPoly.const(fib_poly(5)) * X ** 4
    assert (Y * X ** 2).st_derivative("x") == DeformedPoly.const(S) * Y * X


def test_power_symbolic_small():
    p = power_symbolic(2)
    assert p == U * X ** 2 + DeformedPoly.const(S) * X * Y + V * Y ** 2
    assert deformed_power_finite(2) == p


@pytest.mark.parametrize("kind", SYMBOLIC_KINDS)
@pytest.mark.parametrize("n", range(1, 5))
def test_symbolic_identities(kind, n):
    if kind.startswith("deriv_k"):
        assert all(theorem_symbolic(kind, n, k) for k in range(n + 1))
    else:
        assert theorem_symbolic(kind, n)


def test_rescale_example():
    assert theorem_symbolic("rescale", 4)


def test_symbolic_errors():
    with pytest.raises(UsageError):
        theorem_symbolic("nope", 2)
    with pytest.raises(ParameterError):
        theorem_symbolic("deriv_x", 0)


# -- numeric series ------------------------------------------------------------

alphas = st.floats(-2.5, 4.5).map(lambda a: round(a, 4))
positive = st.floats(0.2, 2.0)


@given(branch_safe, alphas, positive, st.floats(0.05, 1.0), st.floats(-1.0, 1.0).map(lambda y: round(y, 6)))
def test_unit_routing_matches_definition(pt, alpha, u, v, y):
    ctx = EvalContext(*pt)
    d = DeformParams(u, v)
    routed = series_terms(alpha, 1.3, y, d, ctx, 20)
    direct = _direct_terms(alpha, 1.3, y, d, ctx, 20)
    for a, b in zip(routed, direct):
        assert a == b or abs(a - b) <= 1e-9 * max(abs(a), abs(b)) + 1e-250


@given(st.integers(0, 8), st.floats(0.5, 1.5), st.floats(-2, 2))
def test_termination(n, u, y):
    terms = series_terms(n, 1.1, y, DeformParams(u, 0.7), C32, n + 8)
    assert max(abs(c) for c in terms[n + 1:]) <= 1e-14
    assert sum(terms) == pytest.approx(deformed_power_finite(n, 1.1, y, DeformParams(u, 0.7), C32),
                                       rel=1e-12, abs=1e-12)


@given(branch_safe, st.integers(0, 8), st.complex_numbers(max_magnitude=2),
       st.complex_numbers(max_magnitude=2))
def test_gauss_reduction(pt, n, x, y):
    ctx = EvalContext(*pt)
    d = DeformParams(ctx.phi, ctx.phi_prime)
    lhs = deformed_power_finite(n, x, y, d, ctx)
    rhs = deformed_product_phi(n, x, y, ctx)
    scale = math.prod(abs(ctx.phi) ** k * abs(x) + abs(ctx.phi_prime) ** k * abs(y) for k in range(n))
    assert abs(lhs - rhs) <= 1e-11 * max(scale, 1e-300)


@pytest.mark.parametrize("alpha", [0.5, 2.5, -1.5, 3.0])
def test_product_form(alpha):
    d = DeformParams(C32.phi, C32.phi_prime)
    ser = sum(series_terms(alpha, 1.0, 0.2, d, C32, 200))
    assert rel_err(ser, phi_power_via_products(alpha, 1.0, 0.2, C32)) <= 1e-9


def test_infinite_product():
    res = infinite_product_phi(1.0, 0.3, C32)
    assert res.converged and res.tail_bound < 1e-13
    assert res.value == pytest.approx(math.prod(1 + 0.5 ** k * 0.3 for k in range(80)))
    with pytest.raises(ParameterError):
        infinite_product_phi(1.0, 0.3, EvalContext(-3.0, -2.0))   # |q| = 2 needs an explicit K
    with pytest.raises(DomainError):
        infinite_product_phi(0.0, 0.3, C32)
    flipped = infinite_product_phi(1.0, 0.3, EvalContext(-3.0, -2.0), K=5)
    assert not flipped.converged and flipped.K == 5 and flipped.tail_bound == math.inf


@pytest.mark.parametrize("ctx,u,v", [(C32, 1.2, 0.7), (C121, 0.5, 0.3)])
@pytest.mark.parametrize("alpha", [0.5, 2.5, -1.5])
def test_unit_reduction(ctx, u, v, alpha):
    assert reduce_to_unit_residual(alpha, 0.3, DeformParams(u, v), ctx) <= 1e-9


def test_theorem_examples():
    kw = dict(u=1.2, v=0.7, x=1.0, y=0.3)
    assert theorem_residuals("y_zero", C32, 2.5, **kw) <= 1e-12
    for kind in ("add_shift_1", "add_shift_2", "homogeneity", "rescale", "deriv_x", "deriv_y",
                 "deriv_minus"):
        assert theorem_residuals(kind, C32, 2.5, **kw) <= 1e-8, kind
    for form in ("x", "y", "minus"):
        assert theorem_residuals("deriv_k", C32, 2.5, k=3, form=form, **kw) <= 1e-7
    # integer powers terminate, so the swapped expansion is the same polynomial
    assert theorem_residuals("swap", C32, 3, **kw) <= 1e-12
    assert theorem_residuals("x_zero", C32, 3, **kw) <= 1e-12
    assert theorem_residuals("x_zero", C32, 2.5, **kw) == math.inf
    with pytest.raises(UsageError):
        theorem_residuals("nope", C32, 1.0)
    with pytest.raises(UsageError):
        theorem_residuals("deriv_k", C32, 2.5, form="z")


def test_fractional_swap_is_a_different_expansion():
    # the two sides converge (the series are entire here) but to different functions
    kw = dict(u=1.2, v=0.7, x=1.0, y=0.3)
    r48 = theorem_residuals("swap", C32, 2.5, N=48, **kw)
    r96 = theorem_residuals("swap", C32, 2.5, N=96, **kw)
    assert r48 > 1e-7 and abs(r48 - r96) < 1e-3 * r48


# -- convergence -----------------------------------------------------------------

def test_classifier_examples():
    assert classify_convergence(0.5, DeformParams(1, 0.5), FIB).regime == "entire"
    got = classify_convergence(2, DeformParams(1, 1), FIB)
    phi, phip = FIB.phi, FIB.phi_prime
    assert got.regime == "disk" and got.radius == pytest.approx(abs(phi / phip * (1 / phip)))
    assert classify_convergence(0.5, DeformParams(2, 1), FIB).regime == "point_only"
    with pytest.raises(UnsupportedRegimeError):
        classify_convergence(0.5, DeformParams(1, 1), EvalContext(1.0, -1.0))


def test_degenerate_disk_radius_matches_partial_sums():
    ctx = EvalContext(2.0, -1.0)
    d = DeformParams(1.0, 1.0)              # classical binomial series
    c = classify_convergence(0.5, d, ctx)
    assert c.regime == "disk" and c.radius == pytest.approx(1.0)
    inside = series_terms(0.5, 1.0, 0.5, d, ctx, 80)
    outside = series_terms(0.5, 1.0, 1.5, d, ctx, 80)
    assert abs(inside[-1]) < 1e-20 and abs(outside[-1]) > 1e10
    assert sum(inside) == pytest.approx(math.sqrt(1.5))


# -- rational powers ----------------------------------------------------------

def test_rational_power_examples():
    for m in (1, 2, 3, 5):
        ser = rational_power_series(m, m, 1.5, 12, C32)
        assert ser[0] == pytest.approx(1) and ser[1] == pytest.approx(1)
        assert max(abs(c) for c in list(ser)[2:]) <= 1e-12
    ser = rational_power_series(2, 1, 1.5, 6, C32)
    exact = [float(fibonomial(2, k).evaluate(3, -2)) * 1.5 ** (k * (k - 1) // 2) if k <= 2 else 0
             for k in range(7)]
    assert list(ser) == pytest.approx(exact)
    assert rational_power_series(1, 2, 2.0, 4, C32)[1] == pytest.approx(0.414213562, rel=1e-9)


def test_rational_power_hypothesis_flag():
    with pytest.warns(HypothesisWarning):
        ser = rational_power_series(1, 2, 3.0, 4, C32)
    assert ser.meta["hypothesis_violated"]
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert not rational_power_series(1, 2, 2.0, 4, C32).meta["hypothesis_violated"]
    with pytest.raises(ParameterError):
        rational_power_series(1, 0, 1.0, 4, C32)


# -- pantograph and plumbing --------------------------------------------------------

def test_pantograph_examples():
    assert pantograph_residual(1, 0.5, 0.05, 16, C32) <= 1e-15
    assert pantograph_residual(3, 0.5, 0.05, 64, C32) <= 1e-7
    assert pantograph_residual(2, 0.5, 0.05, 64, EvalContext(2.0, -1.0)) <= 1e-7
    res = [pantograph_residual(2.5, 0.5, 0.05, N, C32) for N in (16, 32, 64)]
    assert res[-1] <= 1e-7 and all(b <= 1.1 * a + 1e-15 for a, b in zip(res, res[1:]))
    with pytest.raises(ParameterError):
        pantograph_residual(2, 0, 0.05, 16, C32)


def test_series_query_and_meta():
    with pytest.raises(ParameterError):
        SeriesQuery(0.5, 1, 0.2, terms=-1)
    with pytest.raises(ParameterError):
        SeriesQuery(0.5, 1, 0.2, terms=10_000)
    with pytest.raises(ParameterError):
        DeformParams(0, 1)
    res = deformed_series_partial(SeriesQuery(0.5, 1.0, 0.2, 30), DeformParams(1.0, 0.5), C32)
    assert res.partial_sums[-1] == res.value and len(res.terms) == 31
    assert not res.meta["branch_unsafe"]
    res = deformed_series_partial(SeriesQuery(0.5, -1.0, 0.2, 30), DeformParams(1.0, 0.5), C32)
    assert res.meta["branch_unsafe"]


def test_x_zero_domain():
    with pytest.raises(DomainError):
        series_terms(2.5, 0.0, 0.3, DeformParams(1.2, 0.7), C32, 10)
    terms = series_terms(3, 0.0, 0.3, DeformParams(1.2, 0.7), C32, 10)
    assert sum(terms) == pytest.approx(0.7 ** 3 * 0.3 ** 3)
