"""Exception hierarchy shared by every module."""


class EhrhartError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class DegenerateInput(EhrhartError):
    pass


class DimensionTooLarge(EhrhartError):
    pass


class CenterNotInterior(EhrhartError):
    pass


class NotUnimodular(EhrhartError):
    pass


class Unbounded(EhrhartError):
    """Halfspace system does not describe a nonempty bounded polytope."""


class BadParams(EhrhartError):
    pass


class WorkCapExceeded(EhrhartError):
    def __init__(self, estimated: int, cap: int):
        super().__init__(
            f"enumeration would scan ~{estimated} candidate points, cap is {cap}"
        )
        self.estimated = estimated
        self.cap = cap


class CountMismatch(EhrhartError):
    pass


class NonIntegral(EhrhartError):
    pass


class NegativeEntry(EhrhartError):
    pass


class NotASimplex(EhrhartError):
    pass


class NoConvergence(EhrhartError):
    def __init__(self, message: str, residuals=None):
        super().__init__(message)
        self.residuals = residuals


class WrongDegree(EhrhartError):
    pass


class BracketFailure(EhrhartError):
    pass


class NotReflexive(EhrhartError):
    pass


class DimensionUnsupported(EhrhartError):
    pass


class ExhaustedAttempts(EhrhartError):
    pass


class UnknownClaim(EhrhartError):
    pass
