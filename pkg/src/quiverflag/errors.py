"""Exception types shared across the package."""


class QuiverFlagError(Exception):
    """Base class for all errors raised by quiverflag."""


class InvalidQuiver(QuiverFlagError, ValueError):
    pass


class CyclicQuiver(InvalidQuiver):
    pass


class MultipleSources(InvalidQuiver):
    pass


class UnreachableVertex(InvalidQuiver):
    pass


class InvalidDimensionVector(InvalidQuiver):
    pass


class EmptyModuli(QuiverFlagError):
    """Some vertex has r_i > s_i, so there are no stable representations."""


class PreconditionError(QuiverFlagError):
    """An operation was called on an input outside its domain."""


class NotStrict(PreconditionError):
    pass


class NotToric(PreconditionError):
    pass


class NotPointed(PreconditionError):
    pass


class NotWeaklyExceptional(PreconditionError):
    pass


class NotACharacter(PreconditionError):
    pass


class NotStable(PreconditionError):
    pass


class ShapeMismatch(PreconditionError, ValueError):
    pass


class OutOfBottRange(PreconditionError):
    """A weight entry lies below -(s_i - r_i), where the vanishing argument fails."""

    def __init__(self, vertex: int, entry: int, bound: int):
        self.vertex = vertex
        self.entry = entry
        self.bound = bound
        super().__init__(
            f"weight entry {entry} at vertex {vertex} is below the bound {bound}"
        )


class SearchBudgetExceeded(QuiverFlagError):
    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
