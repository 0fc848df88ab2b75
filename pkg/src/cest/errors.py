"""Exception types raised across the package."""


class CestError(Exception):
    """Base class for all package errors."""


class HypergraphError(CestError, ValueError):
    pass


class IndexOutOfRange(HypergraphError):
    pass


class DuplicateVertexInEdge(HypergraphError):
    pass


class DuplicateEdge(HypergraphError):
    pass


class IsolatedVertex(HypergraphError):
    pass


class ParseError(HypergraphError):
    """Malformed hypergraph file. ``lineno`` is 1-based (0 if unknown)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


class OddOrder(CestError, ValueError):
    pass


class DimensionMismatch(CestError, ValueError):
    pass


class TooLarge(CestError, ValueError):
    pass


class NonPositiveB(CestError, ArithmeticError):
    pass


class LineSearchFailed(CestError, ArithmeticError):
    pass


class BracketFailure(CestError, ArithmeticError):
    pass


class NotNonnegative(CestError, ValueError):
    pass


class NoConvergence(CestError, ArithmeticError):
    pass
