"""Exception types raised by the solver package."""


class SolverError(Exception):
    """Base class for focusedaco errors."""


class UnsupportedFormatError(SolverError):
    """Instance file uses a format or weight type we do not handle."""


class MalformedInputError(SolverError):
    """Instance file is self-inconsistent or truncated."""


class InvalidTourError(SolverError):
    """An order array is not a permutation of the instance nodes."""


class DegenerateInstanceError(SolverError):
    """Instance geometry breaks an operation (e.g. coincident points)."""


class DegenerateMoveError(SolverError):
    """Move arguments violate the move's preconditions."""


class ShapeMismatchError(SolverError):
    """File dimensions do not match the neighbor model."""


class CorruptFileError(SolverError):
    """File contents fail validation (negative, non-finite, missing edges)."""


class BoundViolationError(SolverError):
    """Pheromone bounds set to an empty interval."""


class NoFeasibleNodeError(SolverError):
    """Node selection requested with every node already visited."""
