"""Exception hierarchy for shiftlab."""


class ShiftlabError(Exception):
    """Base class of every error raised by the library."""


class MalformedInputError(ShiftlabError, ValueError):
    """A cell, word or pattern could not be parsed."""


class InvalidNeighbourhoodError(ShiftlabError, ValueError):
    """A neighbourhood is not closed under the stabiliser."""


class SpecError(ShiftlabError, ValueError):
    """A subshift specification is inconsistent (e.g. unknown symbols)."""


class DomainError(ShiftlabError, ValueError):
    """A pattern was given to a map that cannot accept it."""


class UnsupportedError(ShiftlabError):
    """The requested operation is not available for this space or spec."""


class ResourceLimitError(ShiftlabError):
    """A computation would exceed the configured size guard."""


class GluingPreconditionError(ShiftlabError, ValueError):
    """A gluing piece violates the disjointness or agreement preconditions."""

    def __init__(self, index: int, reason: str):
        super().__init__(f"piece {index}: {reason}")
        self.index = index
        self.reason = reason


class ExchangePreconditionError(ShiftlabError, ValueError):
    """The inputs to an exchange of occurrences are not admissible."""


class ConfigError(ShiftlabError, ValueError):
    """A configuration file failed validation."""

    def __init__(self, message: str, field: str | None = None):
        prefix = f"{field}: " if field else ""
        super().__init__(prefix + message)
        self.field = field
