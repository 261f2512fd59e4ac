"""Generalized (s,t)-Fibonacci calculus.

Exact Fibonacci/Lucas polynomials and fibonomials in Z[s, t], complex-index
Fibonacci functions, the (s,t)-derivative, (u,v)-deformed binomial series and
the generalized Catalan generating functions.
"""

from . import kernels
from .calculus import TruncatedSeries, rule_residuals, st_derivative_at, st_derivative_series
from .catalan import (CatalanPoly, LnValue, catalan_poly, central_binomial, gf_coefficients,
                      half_binomial, ln_recurrence_residual, ln_value, sqrt2_analog_values)
from .deformed import (DeformedPoly, DeformParams, SeriesQuery, classify_convergence,
                       deformed_power_finite, deformed_product_phi, deformed_series_partial,
                       pantograph_residual, rational_power_series, theorem_residuals,
                       theorem_symbolic)
from .errors import (DomainError, HypothesisWarning, IdentityViolation, ParameterError,
                     SingularParameterError, StFibError, UnsupportedIndexError,
                     UnsupportedRegimeError, UsageError)
from .exact import BigRational, BivarLaurentPoly, QuadExtElem, RationalFunction, quad_phi_power
from .fib import (FibParams, SpecializationKind, central_fibonomial, fib_poly, fibonomial,
                  fibotorial, lucas_poly, specialize, verify_pascal)
from .real_index import (EvalContext, fib_fn, fibonomial_fn, lucas_fn, neg_fibonomial_check,
                         pascal_residuals, scale_check)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
