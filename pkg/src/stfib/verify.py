"""Identity-verification suites.

Every check yields a row ``{identity, params, N, residual, pass}``; exact checks
report residual 0.0 on success and 1.0 on failure.  ``run_suite("all")`` walks
every suite.
"""

from __future__ import annotations

import cmath
import math
import random
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional

from .calculus import TruncatedSeries, rule_residuals, st_derivative_series
from .catalan import (GF_KINDS, catalan_poly, central_binomial, even_part_residual,
                      gf_coefficients, half_binomial, ln_recurrence_residual,
                      sqrt2_analog_values)
from .deformed import (SYMBOLIC_KINDS, DeformParams, classify_convergence,
                       deformed_power_finite, deformed_product_phi, pantograph_residual,
                       phi_power_via_products, reduce_to_unit_residual, series_terms,
                       theorem_residuals, theorem_symbolic)
from .errors import UsageError
from .exact import ONE, S, T, BivarLaurentPoly, QuadExtElem, quad_phi_power
from .fib import (SPECIALIZATIONS, SpecializationKind, fib_poly, fibonomial, lucas_poly,
                  specialize, verify_pascal)
from .real_index import EvalContext, cpow, fib_fn, lucas_fn, pascal_residuals, rel_err

Row = dict

BRANCH_SAFE = ((3.0, -2.0), (1.0, -0.21))


def row(identity: str, params: dict, N: Optional[int], residual: float, tol: float) -> Row:
    residual = float(residual)
    return {"identity": identity, "params": params, "N": N, "residual": residual,
            "pass": bool(residual <= tol)}


def exact_row(identity: str, params: dict, ok: bool, N: Optional[int] = None) -> Row:
    return row(identity, params, N, 0.0 if ok else 1.0, 0.0)


def _rng(seed: int = 20240611) -> random.Random:
    return random.Random(seed)


def random_poly(rng: random.Random, terms: int = 4, deg: int = 3) -> BivarLaurentPoly:
    out = {}
    for _ in range(terms):
        key = (rng.randint(0, deg), rng.randint(-2, deg))
        out[key] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return BivarLaurentPoly(out)


# -- suites -------------------------------------------------------------------

def suite_exact(n: Optional[int] = None) -> Iterator[Row]:
    rng = _rng()
    for i in range(n or 20):
        p, q, r = (random_poly(rng) for _ in range(3))
        ok = ((p * q) * r == p * (q * r) and p * (q + r) == p * q + p * r
              and p * q == q * p and p + q == q + p)
        yield exact_row("ring_axioms", {"sample": i}, ok)
        if not q.is_zero():
            yield exact_row("exact_div_roundtrip", {"sample": i}, (p * q).exact_div(q) == p)
        yield exact_row("json_roundtrip", {"sample": i},
                        BivarLaurentPoly.from_json(p.to_json()) == p)
        x = QuadExtElem(p, q)
        y = QuadExtElem(r, p)
        yield exact_row("conj_homomorphism", {"sample": i}, (x * y).conj() == x.conj() * y.conj())
        yield exact_row("norm_scalar", {"sample": i}, x.norm().is_scalar())
    for m in range(31):
        yield exact_row("phi_power_fib", {"n": m}, quad_phi_power(m).b == fib_poly(m))


def _int_recurrence(s: int, t: int, n: int, a0: int, a1: int) -> int:
    a, b = a0, a1
    for _ in range(n):
        a, b = b, s * b + t * a
    return a


def suite_fib(n: Optional[int] = None) -> Iterator[Row]:
    for m in range(31):
        yield exact_row("doubling", {"n": m}, fib_poly(2 * m) == lucas_poly(m) * fib_poly(m))
    for m in range(21):
        lhs = lucas_poly(m) ** 2 - (S ** 2 + T * 4) * fib_poly(m) ** 2
        yield exact_row("discriminant", {"n": m}, lhs == (T * -1) ** m * 4)
    for tag, (s, t) in SPECIALIZATIONS.items():
        ok = all(specialize(SpecializationKind(tag), m) == _int_recurrence(s, t, m, 0, 1)
                 and specialize(SpecializationKind(tag), m, "lucas") == _int_recurrence(s, t, m, 2, s)
                 for m in range(21))
        yield exact_row("specialization", {"kind": tag}, ok, 20)
    for m in range(13):
        for k in range(m + 1):
            f = fibonomial(m, k)
            ok = f.is_nonnegative_integral() and f == fibonomial(m, m - k)
            yield exact_row("fibonomial_nonneg_symmetric", {"n": m, "k": k}, ok)


def suite_pascal(n: Optional[int] = None) -> Iterator[Row]:
    top = n or 10
    for m in range(2, top + 1):
        for k in range(1, m):
            yield exact_row("pascal_quadratic_extension", {"n": m, "k": k}, verify_pascal(m, k))


def suite_real(n: Optional[int] = None) -> Iterator[Row]:
    rng = _rng(7)
    for s, t in BRANCH_SAFE:
        ctx = EvalContext(s, t)
        worst = 0.0
        for _ in range(50):
            a = complex(rng.uniform(-3, 3), rng.uniform(-1, 1))
            worst = max(worst, rel_err(fib_fn(2 * a, ctx), fib_fn(a, ctx) * lucas_fn(a, ctx)))
        yield row("doubling_complex_index", {"s": s, "t": t}, None, worst, 1e-10)
        recip = fib_fn(0.5, ctx) * (cpow(ctx.phi, 0.5) + cpow(ctx.phi_prime, 0.5))
        yield row("half_reciprocal", {"s": s, "t": t}, None, abs(recip - 1), 1e-10)
        worst = 0.0
        for _ in range(20):
            a = rng.uniform(-3, 3)
            worst = max(worst, rel_err(fib_fn(-a, ctx), -cpow(-t, -a) * fib_fn(a, ctx)))
        yield row("negative_index", {"s": s, "t": t}, None, worst, 1e-8)
        worst = 0.0
        for _ in range(20):
            a = complex(rng.uniform(-3, 3), rng.uniform(-1, 1))
            for k in range(1, 7):
                worst = max(worst, *pascal_residuals(a, k, ctx))
        yield row("pascal_complex_index", {"s": s, "t": t}, None, worst, 1e-8)
    worst = 0.0
    for _ in range(20):
        s, t = rng.uniform(0.5, 3), rng.uniform(-2, 2)
        if abs(s * s + 4 * t) < 1e-3:
            continue
        ctx = EvalContext(s, t)
        for m in range(26):
            exact = float(fib_poly(m).evaluate(Fraction(s), Fraction(t)))
            worst = max(worst, rel_err(fib_fn(m, ctx), exact))
    yield row("integer_agreement", {"points": 20}, 25, worst, 1e-9)


def _poly_series(rng, order=8):
    return TruncatedSeries([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(order + 1)])


def suite_calculus(n: Optional[int] = None) -> Iterator[Row]:
    rng = _rng(11)
    for i in range(10):
        f = _poly_series(rng)
        ordinary = [k * f[k] for k in range(1, f.order + 1)]
        yield exact_row("degenerate_is_ordinary", {"sample": i},
                        list(st_derivative_series(f, (2, -1))) == ordinary)
        g = _poly_series(rng)
        a, b = Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5))
        lhs = st_derivative_series(f * a + g * b)
        rhs = st_derivative_series(f) * a + st_derivative_series(g) * b
        yield exact_row("series_linearity", {"sample": i}, lhs == rhs)
    for m in range(9):
        for k in range(m + 1):
            ser = TruncatedSeries([0] * m + [1])
            for _ in range(k):
                ser = st_derivative_series(ser)
            falling = ONE
            for j in range(k):
                falling = falling * fib_poly(m - j)
            ok = all((c == falling) if idx == m - k else c == 0 for idx, c in enumerate(ser.coeffs))
            yield exact_row("iterated_derivative", {"n": m, "k": k}, ok)
    for s, t in BRANCH_SAFE:
        ctx = EvalContext(s, t)
        f = lambda z: cmath.exp(z) + z ** 3  # noqa: E731
        g = lambda z: 2 + cmath.cos(z)  # noqa: E731
        res = rule_residuals(f, g, 0.7, ctx)
        for name, r in res.items():
            yield row(f"rule_{name}", {"s": s, "t": t}, None, r, 1e-9)


FRACTIONAL_ALPHAS = (0.5, 2.5, -1.5)
DEFORM_POINTS = (
    ((3.0, -2.0), {"u": 1.2, "v": 0.7, "x": 1.0, "y": 0.3}),
    ((1.0, -0.21), {"u": 0.5, "v": 0.3, "x": 1.0, "y": 0.3}),
)
NUMERIC_KINDS = ("add_shift_1", "add_shift_2", "homogeneity", "rescale", "y_zero",
                 "deriv_x", "deriv_y", "deriv_minus")


def suite_deformed(n: Optional[int] = None) -> Iterator[Row]:
    top = 8 if n is None else n
    for kind in SYMBOLIC_KINDS:
        lo = 1 if kind.startswith("deriv") else 0
        for m in range(lo, top + 1):
            ks = range(1, min(m, 4) + 1) if kind.startswith("deriv_k") else [2]
            for k in ks:
                params = {"alpha": m} | ({"k": k} if kind.startswith("deriv_k") else {})
                yield exact_row(f"{kind}_symbolic", params, theorem_symbolic(kind, m, k))
    for (s, t), kw in DEFORM_POINTS:
        ctx = EvalContext(s, t)
        for alpha in FRACTIONAL_ALPHAS:
            base = {"s": s, "t": t, "alpha": alpha} | kw
            for kind in NUMERIC_KINDS:
                tol = 1e-9 if kind == "homogeneity" else 1e-8
                yield row(kind, base, 48, theorem_residuals(kind, ctx, alpha, **kw), tol)
            for form in ("x", "y", "minus"):
                for k in range(1, 5):
                    r = theorem_residuals("deriv_k", ctx, alpha, k=k, form=form, **kw)
                    yield row("deriv_k", base | {"k": k, "form": form}, 48, r, 1e-7)
            rv = min(kw["v"], abs(t) / 2)
            yield row("root_shift", base | {"v": rv}, 48,
                      theorem_residuals("root_shift", ctx, alpha, x=0.4, v=rv), 1e-8)
            yield row("reduce_to_unit", base, 48,
                      reduce_to_unit_residual(alpha, kw["y"], DeformParams(kw["u"], kw["v"]), ctx), 1e-9)
    # termination and the Gauss reduction
    rng = _rng(3)
    ctx = EvalContext(3.0, -2.0)
    for m in range(9):
        terms = series_terms(m, 1.3, 0.7, DeformParams(1.2, 0.7), ctx, m + 10)
        yield row("termination", {"alpha": m}, m + 10, max(abs(c) for c in terms[m + 1:]), 1e-14)
    worst = 0.0
    for _ in range(20):
        s, t = rng.uniform(1, 4), -rng.uniform(0.05, 0.2)
        c = EvalContext(s, t)
        x, y = complex(rng.uniform(-2, 2), rng.uniform(-2, 2)), complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        d = DeformParams(c.phi, c.phi_prime)
        for m in range(9):
            worst = max(worst, rel_err(deformed_power_finite(m, x, y, d, c),
                                       deformed_product_phi(m, x, y, c)))
    yield row("gauss_reduction", {"points": 20}, 8, worst, 1e-9)
    for alpha in FRACTIONAL_ALPHAS:
        ser = sum(series_terms(alpha, 1.0, 0.2, DeformParams(ctx.phi, ctx.phi_prime), ctx, 200))
        yield row("product_form", {"alpha": alpha, "s": 3.0, "t": -2.0, "y": 0.2}, 200,
                  rel_err(ser, phi_power_via_products(alpha, 1.0, 0.2, ctx)), 1e-9)
    yield from _convergence_rows()
    for (s, t), alpha, v, x in (((3.0, -2.0), 3, 0.5, 0.05), ((2.0, -1.0), 2, 0.5, 0.05),
                                ((3.0, -2.0), 2.5, 0.5, 0.05)):
        c = EvalContext(s, t)
        res = [pantograph_residual(alpha, v, x, N, c) for N in (16, 32, 64)]
        mono = all(b <= 1.1 * a + 1e-15 for a, b in zip(res, res[1:]))
        yield row("pantograph", {"s": s, "t": t, "alpha": alpha, "v": v, "x": x}, 64,
                  res[-1] if mono else math.inf, 1e-7)


CONVERGENCE_CASES = (
    # (s, t), u, v, alpha, expected regime
    ((1.0, 1.0), 1.0, 0.5, 0.5, "entire"),
    ((3.0, -2.0), 1.0, 1.0, 1.5, "entire"),
    ((1.0, 1.0), 1.0, 1.0, 2.0, "disk"),
    ((1.0, 1.0), 2.0, 1.0, 0.5, "point_only"),
    ((3.0, -2.0), 1.0, 3.0, 0.5, "point_only"),
)


def convergence_evidence(regime: str, alpha, d: DeformParams, ctx: EvalContext) -> float:
    """0.0 when partial sums behave as the regime predicts, else 1.0."""
    if regime == "entire":
        terms = series_terms(alpha, 1.0, 2.0, d, ctx, 60)
        return 0.0 if abs(sum(terms[41:])) < 1e-10 else 1.0
    if regime == "point_only":
        terms = series_terms(alpha, 1.0, 2.0, d, ctx, 40)
        return 0.0 if abs(terms[40]) > 10 * abs(terms[20]) else 1.0
    return 0.0


def _convergence_rows() -> Iterator[Row]:
    for (s, t), u, v, alpha, expected in CONVERGENCE_CASES:
        ctx, d = EvalContext(s, t), DeformParams(u, v)
        got = classify_convergence(alpha, d, ctx)
        ok = got.regime == expected and convergence_evidence(got.regime, alpha, d, ctx) == 0.0
        yield exact_row("convergence_regime", {"s": s, "t": t, "u": u, "v": v, "alpha": alpha,
                                               "regime": got.regime}, ok)


def suite_catalan(n: Optional[int] = None) -> Iterator[Row]:
    for m in range(13):
        try:
            c = catalan_poly(m)
            ok = c.value * fib_poly(m + 1) == central_binomial(m)
            ok = ok and (m > 10 or c.value.is_nonnegative_integral())
        except ArithmeticError:
            ok = False
        yield exact_row("catalan_divisibility", {"n": m}, ok)
    classical = [1, 1, 2, 5, 14, 42, 132]
    got = [catalan_poly(m).value.evaluate(2, -1) for m in range(7)]
    yield exact_row("catalan_classical_limit", {"s": 2, "t": -1}, got == classical, 6)
    for s, t in BRANCH_SAFE:
        ctx = EvalContext(s, t)
        for m in range(13):
            yield row("ln_recurrence", {"s": s, "t": t, "n": m}, None, ln_recurrence_residual(m, ctx), 1e-9)
            for upper in ("1/2", "-1/2"):
                if upper == "1/2" and m == 0:
                    continue
                yield row(f"half_binomial_{upper}", {"s": s, "t": t, "n": m}, None,
                          half_binomial(m, ctx, upper).residual, 1e-8)
    for (s, t), vs in (((3.0, -2.0), (2.0, 1.0)), ((1.0, -0.21), (0.21,))):
        ctx = EvalContext(s, t)
        for v in vs:
            for kind in GF_KINDS:
                yield row(f"gf_{kind}", {"s": s, "t": t, "v": v}, 10,
                          gf_coefficients(kind, 10, v, ctx).max_rel_err, 1e-8)
    ctx = EvalContext(2.0, -1.0)
    rep = gf_coefficients("catalan", 8, 1.0, ctx)
    yield row("gf_catalan_classical", {"s": 2, "t": -1, "v": 1}, 8,
              max(rel_err(a, c) for a, c in zip(rep.lhs, [1, 1, 2, 5, 14, 42, 132, 429, 1430])), 1e-8)
    yield row("n_catalan_closed_form_classical", {"x": 0.1}, 60, n_catalan_closed_form_residual(0.1), 1e-10)
    oracles = {"sqrt2_b": math.sqrt(2), "sqrt_two_thirds": math.sqrt(2 / 3),
               "even_part": (math.sqrt(2) + math.sqrt(2 / 3)) / 2}
    for kind, target in oracles.items():
        yield row(f"{kind}_classical", {"s": 2, "t": -1, "v": 1}, 60,
                  abs(sqrt2_analog_values(kind, 60, 1.0, ctx) - target), 1e-6)
    for (s, t), v in (((2.0, -1.0), 1.0), ((3.0, -2.0), 2.0)):
        yield row("even_part_average", {"s": s, "t": t, "v": v}, 60,
                  even_part_residual(60, v, EvalContext(s, t)), 1e-9)


def n_catalan_closed_form_residual(x: float, corrected: bool = True) -> float:
    """Closed form of sum n C_n x^n at the classical point against 40 series terms.

    With ``corrected`` the denominator is 2 x sqrt(1-4x); without it, 2 sqrt(1-4x).
    """
    r = math.sqrt(1 - 4 * x)
    closed = (2 * x - (1 - r) * r) / (2 * r * (x if corrected else 1.0))
    series = sum(m * math.comb(2 * m, m) // (m + 1) * x ** m for m in range(60))
    return rel_err(closed, series)


SUITES: Dict[str, Callable[[Optional[int]], Iterator[Row]]] = {
    "exact": suite_exact,
    "fib": suite_fib,
    "pascal": suite_pascal,
    "real": suite_real,
    "calculus": suite_calculus,
    "deformed": suite_deformed,
    "catalan": suite_catalan,
}


def run_suite(name: str, n: Optional[int] = None) -> List[Row]:
    if name == "all":
        return [r for fn in SUITES.values() for r in fn(None)]
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; expected all or one of {', '.join(SUITES)}")
    return list(SUITES[name](n))
