"""Exception types shared across the package."""


class BetaBranchError(Exception):
    """Base class for domain errors raised by this package."""


class InverseOfZero(BetaBranchError, ZeroDivisionError):
    pass


class OutOfRange(BetaBranchError, ValueError):
    """A point lies outside ``[0, 1/(q-1)]``."""


class BaseOutOfRange(BetaBranchError, ValueError):
    """The base lies outside the interval on which an operation is valid."""


class NotInSwitch(BetaBranchError, ValueError):
    """A point was required to lie in the switch region and does not."""


class IncompleteGraph(BetaBranchError, RuntimeError):
    """A decision needs classifications that an incomplete state graph cannot give."""


class ParseError(BetaBranchError, ValueError):
    def __init__(self, message, text="", line=1, column=1):
        self.text = text
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")
