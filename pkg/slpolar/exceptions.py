"""Errors raised by the verifier."""


class SlPolarError(Exception):
    """Base error for every failure the verifier reports."""


class NoSolutionError(SlPolarError):
    """Error to indicate an inconsistent linear system."""


class SingularMatrixError(SlPolarError):
    """Error to indicate a matrix that cannot be inverted."""


class DimensionMismatchError(SlPolarError):
    """Error to indicate vectors or matrices of incompatible sizes."""


class DuplicateNodesError(SlPolarError):
    """Error to indicate repeated interpolation nodes."""


class RankOutOfRangeError(SlPolarError):
    """Error to indicate an unsupported n for sl(n)."""


class NotInAlgebraError(SlPolarError):
    """Error to indicate a matrix that is not in sl(n)."""


class NotNilpotentError(SlPolarError):
    """Error to indicate a conjugating element that is not ad-nilpotent."""


class WeylRankError(SlPolarError):
    """Error to indicate a Weyl group too large to enumerate."""


class CompositionMismatchError(SlPolarError):
    """Error to indicate a Levi composition that does not sum to n."""


class NotInParabolicError(SlPolarError):
    """Error to indicate an element outside the parabolic subalgebra."""


class NotInNilradicalError(SlPolarError):
    """Error to indicate an element outside the nilpotent radical."""


class DegenerateSamplingError(SlPolarError):
    """Error to indicate that sampling kept landing on a degenerate locus."""


class InvariantIndexError(SlPolarError):
    """Error to indicate an invariant index outside 1..n-1."""


class ConfigError(SlPolarError):
    """Error to indicate an invalid run configuration."""
