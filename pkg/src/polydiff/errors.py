"""Exception hierarchy shared by every module."""


class PolyDiffError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(PolyDiffError, ValueError):
    """Operands live in spaces of different dimension."""


class InvalidSet(PolyDiffError, ValueError):
    """A set description violates its representation invariants."""


class EmptySetError(PolyDiffError):
    """An operation that needs a nonempty operand received an empty one."""


class NumericalFailure(PolyDiffError):
    """An iterative solver hit its iteration cap or failed certification.

    The best iterate found so far is attached as ``best`` (may be None).
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
