"""Exception hierarchy shared by every module of the package."""


class ChipFireError(Exception):
    """Base class for all errors raised by :mod:`chipfire`."""


class InputError(ChipFireError, ValueError):
    """Malformed graph, distribution or arc-set input."""


class LoopArc(InputError):
    pass


class VertexOutOfRange(InputError, IndexError):
    pass


class NotASubset(InputError):
    """An arc table is not dominated by the host graph's multiplicities."""


class DimensionMismatch(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class GraphClassError(ChipFireError, ValueError):
    """The graph lacks a structural property required by the operation."""


class NotStronglyConnected(GraphClassError):
    pass


class NotEulerian(GraphClassError):
    pass


class NotBidirected(GraphClassError):
    pass


class RankDeficient(ChipFireError, ArithmeticError):
    pass


class StepLimitExceeded(ChipFireError, RuntimeError):
    pass


class SizeLimitExceeded(ChipFireError, RuntimeError):
    pass
