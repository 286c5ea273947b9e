"""Exception hierarchy.

UsageError subclasses mark bad user input (CLI exit code 1). ResourceLimit
marks a configured guard firing (exit code 2). Everything else derived from
CharpError is an internal invariant violation (exit code 3).
"""


class CharpError(Exception):
    pass


class UsageError(CharpError):
    pass


class NotPrime(UsageError):
    pass


class EmptyVariableList(UsageError):
    pass


class DuplicateVariable(UsageError):
    pass


class BadVariableName(UsageError):
    pass


class PolySyntaxError(UsageError):
    """Malformed polynomial text; .position is the 0-based offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class UnknownVariable(PolySyntaxError):
    pass


class RingMismatch(CharpError):
    pass


class ZeroPolynomial(UsageError):
    pass


class UnitPolynomial(UsageError):
    pass


class OutOfInterval(UsageError):
    pass


class PartsMismatch(UsageError):
    pass


class ResourceLimit(CharpError):
    pass


class ChainNotMonotone(CharpError):
    pass
