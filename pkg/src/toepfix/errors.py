"""Domain error hierarchy.

Every error carries a stable SCREAMING_SNAKE code derived from its class
name, used verbatim by the CLI error objects.
"""

import re

_CAMEL = re.compile(r"(?<=[a-z0-9])(?=[A-Z])|(?<=[A-Z])(?=[A-Z][a-z])")


class ToepfixError(Exception):
    """Base class for all domain errors raised by this package."""

    @property
    def code(self) -> str:
        return _CAMEL.sub("_", type(self).__name__).upper()


# kernel construction and evaluation

class EmptyCoefficients(ToepfixError):
    pass


class ZeroLeadingCoefficient(ToepfixError):
    pass


class NegativeCoefficient(ToepfixError):
    pass


class MixedValueKinds(ToepfixError):
    pass


class OutOfDomain(ToepfixError):
    pass


# recurrence

class NonpositiveSeed(ToepfixError):
    pass


class ModeMismatch(ToepfixError):
    pass


class ArithmeticOverflow(ToepfixError):
    pass


class NotCritical(ToepfixError):
    pass


class ScaleNotAboveOne(ToepfixError):
    pass


# classification

class IndeterminateMass(ToepfixError):
    pass


class WrongBandDepth(ToepfixError):
    pass


class MomentNotSubunit(ToepfixError):
    pass


class ToleranceTooSmall(ToepfixError):
    pass


class ConvexityNotVerified(ToepfixError):
    pass


# generating functions

class PoleAtZ(ToepfixError):
    pass


class UnboundedTailNotBoundable(ToepfixError):
    pass


# asymptotics

class TraceTooShort(ToepfixError):
    pass


class PoleDetected(ToepfixError):
    pass


# stochastic oracles

class InvalidDistribution(ToepfixError):
    pass


class MeanAtLeastOne(ToepfixError):
    pass


class ZeroT0(ToepfixError):
    pass


class MuSupportExceedsN(ToepfixError):
    pass


class DriftNotNegative(ToepfixError):
    pass


class ZeroLeadingStep(ToepfixError):
    pass


class ConditioningEventTooRare(ToepfixError):
    """Raised when the conditioning event had too few hits.

    The unconditional estimate is still attached as ``.unconditional``.
    """

    def __init__(self, message, unconditional=None):
        super().__init__(message)
        self.unconditional = unconditional


class BoundaryNotResolved(ToepfixError):
    pass
