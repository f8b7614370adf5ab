"""Exception hierarchy shared by all ahlab modules."""


class AhlabError(Exception):
    """Base class for every error raised by the math layer."""


class DivisionByZero(AhlabError, ZeroDivisionError):
    pass


class FieldTooSmall(AhlabError):
    pass


class CharacteristicTooSmall(AhlabError):
    pass


class RangeError(AhlabError, ValueError):
    pass


class DuplicatePoint(AhlabError, ValueError):
    pass


class DecompositionError(AhlabError, ValueError):
    pass


class RetryExhausted(AhlabError):
    pass


class NegativeDelta(AhlabError, ValueError):
    pass


class ExpansionStuck(AhlabError):
    pass


class CrossCheckMismatch(AhlabError):
    """Two independent computations of the same number disagree (a bug, not math)."""
