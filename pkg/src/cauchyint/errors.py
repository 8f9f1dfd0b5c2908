"""Exception types raised across the package."""


class CauchyIntError(Exception):
    """Base class for all errors raised by cauchyint."""


class PreconditionError(CauchyIntError, ValueError):
    """An argument lies outside the documented domain of an operation."""


class DomainError(PreconditionError):
    """A real argument lies outside the interval an integrand is defined on."""


class BranchCutError(PreconditionError):
    """A logarithm argument is zero or lies on (or too close to) its cut."""


class RegionError(PreconditionError):
    """A point is too close to a cut or a ramification point to evaluate."""


class SpecError(PreconditionError):
    """A contour or verification configuration violates its invariants."""


class NoConvergence(CauchyIntError, ArithmeticError):
    """A truncated series did not reach its tolerance within ``max_terms``."""


class QuadratureError(CauchyIntError, ArithmeticError):
    """An adaptive quadrature did not meet its tolerance."""


class EvaluationError(QuadratureError):
    """An integrand returned a non-finite value."""
