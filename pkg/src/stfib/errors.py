"""Exception hierarchy shared by every module of the package."""


class StFibError(Exception):
    """Base class for all package errors."""


class IdentityViolation(StFibError, ArithmeticError):
    """An exact division that an identity guarantees did not go through.

    Raised by exact polynomial division (and by everything built on it, such as
    fibonomial and Catalan construction).  Seeing it means an algebra bug, not
    bad input.
    """


class UnsupportedIndexError(StFibError, ValueError):
    """The requested index lies outside the supported range."""


class SingularParameterError(StFibError, ZeroDivisionError):
    """A denominator such as {m}_{s,t} vanishes at the numeric parameters."""


class DomainError(StFibError, ValueError):
    """An operator was evaluated outside its domain (e.g. D at x = 0)."""


class ParameterError(StFibError, ValueError):
    """Invalid deformation or evaluation parameters."""


class UnsupportedRegimeError(StFibError, ValueError):
    """The convergence theory does not cover this parameter regime (|q| = 1)."""


class UsageError(StFibError, ValueError):
    """Unknown operation name or malformed request."""


class HypothesisWarning(UserWarning):
    """A theorem hypothesis (such as |v| <= |t|) is violated; results are flagged."""
