"""Exception hierarchy shared by every module."""


class MajorderError(Exception):
    """Base class for all library errors."""


class DimensionError(MajorderError, ValueError):
    pass


class NumericError(MajorderError, ArithmeticError):
    pass


class DomainError(MajorderError, ValueError):
    pass


class EmptyChainError(MajorderError, ValueError):
    pass


class WeightMismatchError(MajorderError, ValueError):
    pass


class ChainViolationError(MajorderError):
    """The support that must form a monotone chain does not.

    Carries the partially filled verdict so callers can see where the chain
    broke (``verdict.failing_index``).
    """

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class EmptyDomainError(MajorderError):
    pass


class CapabilityError(MajorderError):
    """The function model lacks something the check needs (gradient, dimension)."""


class DegenerateBoxError(MajorderError, ValueError):
    pass


class PreconditionError(MajorderError):
    """A theorem hypothesis on the instance does not hold.

    ``verdict`` holds the majorization verdict when the failing hypothesis is a
    majorization relation; ``detail`` names the violated link otherwise.
    """

    def __init__(self, message, verdict=None, detail=None):
        super().__init__(message)
        self.verdict = verdict
        self.detail = detail


class AmbiguousCaseError(PreconditionError):
    pass


class BoxTooSmallError(MajorderError):
    pass


class DomainEscapeError(MajorderError):
    pass
