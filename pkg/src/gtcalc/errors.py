"""Exception hierarchy shared by every module."""


class GTError(ValueError):
    """Base class for all errors raised by gtcalc."""


# relations
class DimensionMismatch(GTError):
    pass


class DuplicateLabel(GTError):
    pass


class InvalidDensity(GTError):
    pass


class SearchSpaceTooLarge(GTError):
    pass


# morphisms
class MalformedMorphism(GTError):
    pass


class SourceTargetMismatch(GTError):
    pass


class NormExceedsKappa(GTError):
    pass


class FiniteObstruction(GTError):
    """A construction needs an infinite cardinal and has no finite witness."""

    def __init__(self, message, delta=None):
        super().__init__(message)
        self.delta = delta


# truncation models
class LengthMismatch(GTError):
    pass


class UniverseMismatch(GTError):
    pass


class TooFewElements(GTError):
    pass


class EmptySet(GTError):
    pass


class NotStrictlyExpanding(GTError):
    pass


class NotStrictlyIncreasing(GTError):
    pass


class ArityTooLarge(GTError):
    pass


class NotActuallyBad(GTError):
    pass


class StraddlingAgreement(GTError):
    """A solution interval spanning several bad intervals agrees with g."""


class NoAgreement(GTError):
    pass


class IndexOutOfRange(GTError):
    pass


class DuplicateBranch(GTError):
    pass


class UniverseExhausted(GTError):
    pass


class ThresholdTooLarge(GTError):
    pass


# diagram
class UnknownNode(GTError):
    pass


class UnsupportedFormat(GTError):
    pass
