"""Exception hierarchy.  Every domain failure derives from :class:`JacringError`."""


class JacringError(Exception):
    """Base class for domain errors (CLI exit code 2)."""


class NotDivisible(JacringError):
    """A q-level of an exact division left a nonzero Laurent remainder."""


class NonIntegralInput(JacringError):
    pass


class PrecisionExceeded(JacringError):
    pass


class IntegralityViolation(JacringError):
    pass


class NonUnitConstantTerm(JacringError):
    pass


class UnsupportedCharacter(JacringError):
    pass


class StructureViolation(JacringError):
    pass


class NotWeak(JacringError):
    pass


class NotHomogeneous(JacringError):
    pass


class NotHolomorphic(JacringError):
    pass


class InsufficientData(JacringError):
    pass


class NonIntegral(JacringError):
    pass


class NotInRing(JacringError):
    """Input is not in the generated ring; ``obstruction`` says why."""

    def __init__(self, message, obstruction=None):
        super().__init__(message)
        self.obstruction = obstruction


class NotRealizable(NotInRing):
    pass
