"""Exception types shared across the package."""


class BellNogoError(Exception):
    """Base class for all validation errors raised by this package."""


class NegativeWeight(BellNogoError):
    pass


class WeightsNotNormalized(BellNogoError):
    pass


class DimensionMismatch(BellNogoError):
    pass


class NotSignValued(BellNogoError):
    """A value other than exactly +1 or -1 was given to a sign variable."""


class IdentityViolated(BellNogoError):
    """Some value of the first variable does not square to 1."""


class ProofChainBroken(BellNogoError):
    """A link of the Bell proof chain failed numerically. Indicates a bug."""


class NotHermitian(BellNogoError):
    pass


class NonRealAverage(BellNogoError):
    pass


class InvalidProblem(BellNogoError):
    pass


class TooLarge(BellNogoError):
    pass


class InvalidContext(BellNogoError):
    pass


class AngleMismatch(BellNogoError):
    pass


class InvalidCorrespondence(BellNogoError):
    pass
