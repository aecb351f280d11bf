"""Exception hierarchy shared by all modules."""


class SubgroupSumsError(ValueError):
    """Base class for every error raised by this package."""


class NotOddPrimePower(SubgroupSumsError):
    pass


class NotAUnit(SubgroupSumsError):
    pass


class NotAdmissible(SubgroupSumsError):
    pass


class OrderDoesNotDivide(SubgroupSumsError):
    pass


class DivisionByZeroPolynomial(SubgroupSumsError, ZeroDivisionError):
    pass


class ZeroPolynomial(SubgroupSumsError):
    pass


class DegreeTooLarge(SubgroupSumsError):
    pass


class ArityMismatch(SubgroupSumsError):
    pass


class RangeInconsistent(SubgroupSumsError):
    pass


class ModeRequiresCoprime(SubgroupSumsError):
    pass


class EmptyCloud(SubgroupSumsError):
    pass


class ResolutionTooLow(SubgroupSumsError):
    pass
