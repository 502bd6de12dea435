"""
Exception hierarchy for star-covers.

Every error raised for bad input derives from StarCoverError, which is itself a
ValueError so callers that only know about built-in exceptions keep working.
The CLI maps these to exit code 2.
"""


class StarCoverError(ValueError):
    """Base class for all input and consistency errors."""


class ConfigurationError(StarCoverError):
    """A configuration value could not be parsed."""


class DegreeMismatchError(StarCoverError):
    """Two permutations (or a permutation and a group) have different degrees."""


class GuardExceededError(StarCoverError):
    """An input is larger than the configured enumeration limit."""


class NotASubgroupError(StarCoverError):
    """A set of group elements is not a subgroup of the expected group."""


class NotNormalError(StarCoverError):
    """A subgroup is required to be normal but is not."""


class GraphFormatError(StarCoverError):
    """Malformed graph JSON; the message carries the offending location."""


class EdgeNotFoundError(StarCoverError):
    """An edge that should be deleted or looked up does not exist."""


class HalfEdgeError(StarCoverError):
    """A group orbit identifies a dart with its own reverse."""


class WalkError(StarCoverError):
    """A dart sequence is not a walk of the required shape."""


class NotS3Error(StarCoverError):
    """A group is not isomorphic to the symmetric group on three letters."""


class InexactDivisionError(StarCoverError):
    """A polynomial division that must be exact left a remainder."""


class LatticeError(StarCoverError):
    """Degenerate sublattice or a half-turn that inverts a dart."""


class InconsistentLabelingError(StarCoverError):
    """Edge-weight path products disagree on some vertex."""


class GraphHypothesisError(StarCoverError):
    """A graph violates the hypotheses of a zeta computation."""
