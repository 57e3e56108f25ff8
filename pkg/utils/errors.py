"""Exception hierarchy shared by every framewidth module.

The CLI maps validation-type errors to exit status 2 and everything else
derived from :class:`FrameWidthError` to exit status 3.
"""


class FrameWidthError(Exception):
    """Base class for all expected framewidth failures."""

    exit_status = 3


class ConfigurationError(FrameWidthError):
    """Invalid configuration or unsupported construction request.

    Args:
        message (str): Human readable description
        field (str): Name of the offending configuration field, if any
    """

    exit_status = 2

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field

    def as_diagnostic(self):
        """Return the machine-readable form printed by the CLI."""
        return {"error": type(self).__name__, "field": self.field, "message": str(self)}


class ParameterError(ConfigurationError):
    """A numeric parameter violates a precondition (p <= 0, t-condition, ...)."""


class UsageError(ConfigurationError):
    """An operation was called with unusable arguments (e.g. empty probe list)."""


class NumericError(FrameWidthError):
    """A numerical procedure did not converge or produced non-finite values."""


class ResolutionError(FrameWidthError):
    """Requested level exceeds what the sampling grid can resolve."""


class WeightDomainError(FrameWidthError):
    """A stored coefficient index has no weight."""


class SizeError(FrameWidthError):
    """Problem too large for an exhaustive procedure."""


class FitError(FrameWidthError):
    """Rate fit impossible (too few samples, nonpositive errors)."""


class SpectralError(FrameWidthError):
    """Finite section is rank deficient; carries the singular value diagnostic."""

    def __init__(self, message, singular_values=None):
        super().__init__(message)
        self.singular_values = singular_values


class InvertibilityError(FrameWidthError):
    """An operator declared as an isomorphism is singular."""


class AdmissibilityError(FrameWidthError):
    """A construction cannot meet the requested admissibility constant."""


class GeometryError(FrameWidthError):
    """Domain geometry violates a precondition (box touching the boundary, ...)."""


class RegularityError(FrameWidthError):
    """Wavelet regularity r is too small for the requested smoothness."""


class MeanZeroError(FrameWidthError):
    """Input violates the mean-zero constraint <f, 1> = 0."""


class IndexDomainError(FrameWidthError, IndexError):
    """Coefficient index outside the frame's index family."""
