"""Exception types shared across the package."""

from __future__ import annotations


class OddZetaError(Exception):
    """Base class for all package-specific errors."""


class InvalidPrecisionError(OddZetaError, ValueError):
    """Requested precision is below the supported minimum."""


class UnsupportedConstantError(OddZetaError, ValueError):
    """Unknown fundamental-constant name."""


class ContextMismatchError(OddZetaError, ValueError):
    """Arithmetic attempted between values bound to different contexts."""


class PrecisionMismatchError(OddZetaError, ValueError):
    """Requested target precision exceeds what the context can certify."""


class MissingDependencyError(OddZetaError, ValueError):
    """A ladder value was requested before the levels it depends on exist."""


class DomainError(OddZetaError, ValueError):
    """Argument outside the mathematical domain (e.g. at or beyond a pole)."""


class TruncationInsufficientError(OddZetaError, ValueError):
    """Too few series terms to reach the convergent regime."""


class ReferenceNotFoundError(OddZetaError, KeyError):
    """No stored reference constant under the requested name."""


class NumericContractViolation(OddZetaError, ArithmeticError):
    """An internal certified bound or invariant failed to hold."""
