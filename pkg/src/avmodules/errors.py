"""Exception types shared across the package."""


class AlgebraError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(AlgebraError):
    """Matrix/vector shapes do not line up."""


class DomainError(AlgebraError):
    """An argument violates a mathematical precondition (zero parameter,
    repeated eigenvalue-like parameter, non-square matrix for det, ...)."""


class ScalarParseError(AlgebraError):
    """A scalar, generator, or element could not be parsed."""


class TruncationError(AlgebraError):
    """An action on a truncated highest-weight module left the cutoff
    window.  Raised loudly instead of silently dropping terms; callers
    choose windows large enough for their computation."""


class WindowError(AlgebraError):
    """A sampling or search window was too small for the requested
    computation (rank failed to stabilize, closure did not fit, ...)."""


class PreconditionError(AlgebraError):
    """A decision procedure was called on inputs outside its stated
    hypotheses (e.g. a reducible tensor factor)."""
