class NilorbitError(ValueError):
    """Domain error: bad input algebra, violated precondition."""


class DimensionMismatch(NilorbitError):
    pass


class NotNilpotent(NilorbitError):
    pass


class PreconditionError(NilorbitError):
    pass


class FormatError(NilorbitError):
    """Malformed JSON algebra, functional or subspace."""
