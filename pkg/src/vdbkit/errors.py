"""Exception hierarchy shared by every vdbkit module."""


class VDBError(Exception):
    """Base class for all vdbkit errors."""


class GraphInputError(VDBError, ValueError):
    """Rejected graph construction input."""


class IndexOutOfRange(GraphInputError):
    pass


class SelfLoop(GraphInputError):
    pass


class DuplicateEdge(GraphInputError):
    pass


class GraphFormatError(GraphInputError):
    """Unparseable edge-list text."""


class Graph6Error(GraphInputError):
    """Undecodable graph6 data."""


class MalformedHeader(Graph6Error):
    pass


class TrailingGarbage(Graph6Error):
    pass


class NonCanonicalPadding(Graph6Error):
    pass


class NotConnected(VDBError, ValueError):
    pass


class InvalidMove(VDBError, ValueError):
    pass


class DomainError(VDBError, ValueError):
    """Argument outside the domain a function is defined on."""


class ParameterError(VDBError, ValueError):
    """Weight-family parameter outside its declared domain."""


class IndexOverflow(VDBError, OverflowError):
    """Exponential index weight too large to represent as a float."""


class HypothesisViolated(VDBError, ValueError):
    """(n, k) outside the range k >= 3, n >= 5(k - 1)."""


class Infeasible(VDBError, ValueError):
    pass


class RetriesExhausted(VDBError, RuntimeError):
    pass


class CapExceeded(VDBError, ValueError):
    """Requested enumeration beyond the supported size."""
