"""Exception hierarchy shared by all modules."""


class CsdivError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(CsdivError, ValueError):
    """An operation was called on an input outside its domain."""


class LengthTwo(PreconditionError):
    pass


class NotExceptional(PreconditionError):
    pass


class NotZero(PreconditionError):
    pass


class NotZeroPair(PreconditionError):
    pass


class WrongShape(PreconditionError):
    pass


class NotConcave(PreconditionError):
    pass


class NotSemidefinite(PreconditionError):
    pass


class NotNegativeDefinite(PreconditionError):
    pass


class NotFillable(PreconditionError):
    pass


class NotCuspShape(PreconditionError):
    pass


class BudgetInvalid(PreconditionError):
    pass


class DivisorSyntaxError(CsdivError, ValueError):
    """Raised by the divisor literal parser; ``pos`` is a 0-based column."""

    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at column {pos + 1}: {text!r}")
