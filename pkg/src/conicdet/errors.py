"""Exception types raised by the library."""


class ConicDetError(Exception):
    """Base class for all library errors."""


class DomainError(ConicDetError, ValueError):
    """An argument lies outside the domain of a function."""


class ValidationError(ConicDetError, ValueError):
    """Input data violates a named invariant.

    The ``invariant`` attribute carries a short human-readable name of the
    violated condition, used verbatim by the command-line interface.
    """

    def __init__(self, message, invariant=None):
        super().__init__(message)
        self.invariant = invariant


class ConvergenceError(ConicDetError, ArithmeticError):
    """A series or quadrature failed to reach its tolerance."""
