"""Exception hierarchy shared by every module."""


class GeodiscordError(Exception):
    """Base class for all package errors."""


class ValidationError(GeodiscordError, ValueError):
    """Malformed input: wrong shape, non-Hermitian matrix, bad parameter range."""


class PhysicalityError(GeodiscordError, ValueError):
    """A parameter set describes an operator with negative eigenvalues.

    ``violated`` lists human-readable descriptions of the failing constraints,
    e.g. ``"1-c1-c2-c3 = -2 < 0"``.
    """

    def __init__(self, message: str, violated: list[str] | None = None):
        super().__init__(message)
        self.violated = list(violated or [])


class PreconditionError(GeodiscordError, ValueError):
    """An operation was called outside its documented domain."""


class ConsistencyError(GeodiscordError, ArithmeticError):
    """A computed quantity left its mathematically admissible range."""
