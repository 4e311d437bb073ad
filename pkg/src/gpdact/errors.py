"""Exception types raised by the gpdact engine."""


class GpdActError(Exception):
    """Base class for all gpdact errors."""


class MissingComposite(GpdActError):
    pass


class AssociativityViolation(GpdActError):
    pass


class MissingInverse(GpdActError):
    pass


class NonUniqueIdentity(GpdActError):
    pass


class NotAGroup(GpdActError):
    pass


class EmptySet(GpdActError):
    pass


class NotSkeletal(GpdActError):
    pass


class InvalidElement(GpdActError):
    pass


class StageMismatch(GpdActError):
    pass


class NaturalityViolation(GpdActError):
    """A span table fails equivariance; args carry the failing (actions, s, t)."""


class TypeMismatch(GpdActError):
    pass


class WellDefinednessFailure(GpdActError):
    """A composite entry depends on the chosen class representative.

    Never expected for valid inputs; signals an engine fault and is
    surfaced, not swallowed.
    """


class CapExceeded(GpdActError):
    pass


class NonAbelian(GpdActError):
    pass


class Unnormalized(GpdActError):
    pass


class VerificationFailure(GpdActError):
    pass


class ParseError(GpdActError):
    pass
