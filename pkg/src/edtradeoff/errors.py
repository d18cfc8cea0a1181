"""Exception hierarchy shared by every module."""


class TradeoffError(Exception):
    """Base class for all errors raised by :mod:`edtradeoff`."""


class DimensionError(TradeoffError, ValueError):
    """Shapes or lengths of the inputs do not agree."""


class PreconditionError(TradeoffError, ValueError):
    """An input violates a documented precondition."""


class UnsupportedInputError(TradeoffError, ValueError):
    """The operation is not defined for this kind of input (e.g. a mixed state)."""


class DegenerateInputError(UnsupportedInputError):
    """The input sits on a degenerate point where the construction is undefined."""


class NoZEZDError(PreconditionError):
    """P does not majorize Q, so no zero-error zero-disturbance basis exists."""


class ResourceLimitError(TradeoffError):
    """The requested enumeration is larger than the configured guard."""


class ValidationError(TradeoffError, ValueError):
    """A parsed object failed a numerical validity check."""


class ParseError(TradeoffError, ValueError):
    """A problem file does not follow the schema.

    ``path`` names the offending field, e.g. ``basisA[1][0]``.
    """

    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
