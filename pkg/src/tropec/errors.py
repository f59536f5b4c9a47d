"""Exception hierarchy.

Every domain error derives from :class:`TropecError` so callers (and the
command line front end) can catch them in one place. The class name doubles
as the machine-readable error code.
"""


class TropecError(Exception):
    """Base class for all domain errors."""

    @property
    def code(self):
        return type(self).__name__


class NotInvertible(TropecError, ZeroDivisionError):
    pass


class ResidueCharUnsupported(TropecError):
    pass


class ModelNotAdapted(TropecError):
    pass


class InvalidModel(TropecError, ValueError):
    pass


class NonIntegralSlope(TropecError):
    pass


class NotPrincipal(TropecError):
    pass


class SingularCurve(TropecError):
    pass


class TwistInfeasible(TropecError):
    pass


class CapExceeded(TropecError):
    pass


class NotTransvection(TropecError):
    pass


class HypothesisViolated(TropecError):
    def __init__(self, hypothesis, message=None):
        self.hypothesis = hypothesis
        super().__init__(message or hypothesis)


class NotNonIntegralJ(TropecError):
    pass


class UndefinedHasse(TropecError):
    pass


class ParseError(TropecError, ValueError):
    pass
