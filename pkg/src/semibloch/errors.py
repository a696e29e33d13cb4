"""Exception hierarchy."""


class SemiBlochError(Exception):
    """Base class for toolkit errors."""


class DomainError(SemiBlochError, ValueError):
    """Evaluation point or shift outside a signal's domain."""


class ParameterError(SemiBlochError, ValueError):
    """Invalid numeric parameter (nonpositive epsilon, T < 1, ...)."""


class PreconditionError(SemiBlochError, ValueError):
    """An operation's precondition does not hold for this input."""


class UnsupportedRepresentation(SemiBlochError, TypeError):
    """The operation is not defined for this signal representation."""


class NonSummableError(SemiBlochError, ValueError):
    """Kernel block norms show no decay."""


class ValidationError(SemiBlochError, ValueError):
    """A signal/kernel document violates the schema or a type invariant."""

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field
