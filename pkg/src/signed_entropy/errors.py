"""Exception hierarchy.

Two families, matching the CLI exit codes: ``InputError`` (exit 1) for
arguments that violate an operation's preconditions, and ``DomainError``
(exit 2) for numeric conditions met while computing.
"""


class SignedEntropyError(ValueError):
    """Base class for every error raised by this package."""


class InputError(SignedEntropyError):
    pass


class DomainError(SignedEntropyError):
    pass


class BadAlphaError(InputError):
    pass


class NegativeComponentError(InputError):
    pass


class LengthMismatchError(InputError):
    pass


class DimensionMismatchError(InputError):
    pass


class UnsupportedDimensionError(InputError):
    pass


class NotHermitianError(InputError):
    pass


class MixedSignWeightsError(InputError):
    """Mean-value check refused: the two weights have opposite signs."""


class ZeroWeightError(DomainError):
    """Total weight of a measure is (numerically) zero."""


class NonpositiveLogArgumentError(DomainError):
    pass


class WitnessNotFoundError(DomainError):
    """Witness search reached its floor without finding a negative entropy."""
