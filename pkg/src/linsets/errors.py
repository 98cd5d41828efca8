class LinsetError(Exception):
    """Base class for all errors raised by the package."""


class NotPrime(LinsetError, ValueError):
    pass


class FieldTooLarge(LinsetError):
    pass


class DivisionByZero(LinsetError, ZeroDivisionError):
    pass


class NotDivisor(LinsetError, ValueError):
    pass


class AmbientMismatch(LinsetError, ValueError):
    pass


class WrongAmbientRank(LinsetError, ValueError):
    pass


class BudgetExceeded(LinsetError):
    pass


class EmptySubspace(LinsetError, ValueError):
    pass


class RankNotMultipleOfN(LinsetError, ValueError):
    pass


class RankTooLarge(LinsetError, ValueError):
    pass


class HypothesisViolated(LinsetError):
    pass


class NotFqnLinear(LinsetError, ValueError):
    pass


class NotAdditive(LinsetError, ValueError):
    pass


class SizeMismatch(LinsetError, ValueError):
    pass
