"""Exception hierarchy for dcdiff.

Every error derives from ValueError so callers that only care about
"bad input" can keep catching ValueError.
"""


class DcdiffError(ValueError):
    """Base class for all dcdiff errors."""


class DuplicateElement(DcdiffError):
    """A set would contain the same value twice."""


class EmptySet(DcdiffError):
    """An operation received an empty set."""


class TooSmall(DcdiffError):
    """A set has fewer elements than the operation needs."""


class IncompleteMap(DcdiffError):
    """A value table does not cover every point it is applied to."""


class InvalidMap(DcdiffError):
    """A point map specification is malformed."""


class HypothesisError(DcdiffError):
    """A theorem hypothesis required by an operation does not hold."""


class InvalidBlockCount(DcdiffError):
    """Block count outside 1..|C|."""


class SizeMismatch(DcdiffError):
    """Two sets that must have equal size do not."""


class InvalidSigma(DcdiffError):
    """A sigma map is not a permutation of 1..k-1."""


class NotPrime(DcdiffError):
    """A prime was required."""


class NeedOddSize(DcdiffError):
    """The Eulerian listing needs an odd number of vertices."""


class BudgetTooSmall(DcdiffError):
    """Width budget below the minimum width of a convex difference vector."""


class ConfigError(DcdiffError):
    """A suite configuration file is missing or invalid."""


class InvariantViolation(DcdiffError):
    """A counting inequality from a proof failed on valid input."""


class SetFileError(DcdiffError):
    """A set file could not be read or parsed."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class RecordCorrupt(DcdiffError):
    """A line of the record store is not a valid search record."""

    def __init__(self, path: str, line_number: int, message: str):
        self.path = path
        self.line_number = line_number
        super().__init__(f"line {line_number} of {path}: {message}")


class InvalidSeed(DcdiffError):
    """A random seed outside the unsigned 64-bit range."""
