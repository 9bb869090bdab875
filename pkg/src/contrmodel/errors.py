"""Exception hierarchy shared by every module."""


class ContrModelError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(ContrModelError, ValueError):
    """Shapes, fields or complexes of the operands do not match."""


class PreconditionError(ContrModelError):
    """An input violates a documented precondition (e.g. not an SDR)."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvariantViolation(ContrModelError):
    """An internal identity that must hold by construction failed."""


class FactorizationError(InvariantViolation):
    """The semifree tower did not stabilize within the stage cap."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ParseError(ContrModelError):
    """Malformed JSON input; ``location`` is a JSON-path-like string."""

    def __init__(self, location, message):
        super().__init__(f"{location}: {message}")
        self.location = location
