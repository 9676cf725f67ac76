"""Exception hierarchy shared by all modules."""


class AscurvesError(Exception):
    """Base class for library errors."""


class FieldError(AscurvesError, ValueError):
    """Invalid field parameters or an illegal field operation."""


class ContextMismatchError(AscurvesError, ValueError):
    """Operands belong to different field contexts."""


class EnumerationLimitError(AscurvesError, RuntimeError):
    """The requested enumeration exceeds the configured ceiling."""


class HypothesisError(AscurvesError, ValueError):
    """Parameters violate a construction's arithmetic hypotheses."""


class InvariantError(AscurvesError, RuntimeError):
    """An internal consistency check failed (indicates a bug)."""
