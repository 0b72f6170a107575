"""Exception types shared across the package.

Track format problems derive from TrackError, failures of the selection
pipeline from SelectionError, and plain argument misuse from ValueError so
callers can catch the built-in type.
"""


class TrackError(Exception):
    """A feature-track file could not be written, read, or validated."""


class ValidationError(TrackError):
    """A track or header violates a structural invariant."""


class BadMagicError(TrackError):
    """The file does not start with the FTRK magic bytes."""


class UnsupportedVersionError(TrackError):
    """The file declares a format version this reader does not support."""


class TruncatedPayloadError(TrackError):
    """The file ends before the payload declared by its header."""


class NonFiniteDataError(TrackError):
    """The payload contains NaN or infinite values."""


class SelectionError(Exception):
    """The selection pipeline cannot run on the given inputs."""


class InsufficientDurationError(SelectionError):
    """The track is shorter than one candidate segment."""


class TrackMismatchError(SelectionError):
    """Audio and landmark tracks disagree on fps or frame count."""


class OutOfRangeError(ValueError):
    """A window does not fit inside the track it is applied to."""


class TooFewFramesError(ValueError):
    """Diversity metrics need at least two feature rows."""


class BadComponentCountError(ValueError):
    """Requested component count is outside [1, dim]."""


class BadClusterCountError(ValueError):
    """Requested cluster count is outside [1, frame count]."""


class TooFewLandmarksError(ValueError):
    """Lip analysis needs the 68-point scheme (indices 48..67)."""


class SignalTooShortError(ValueError):
    """Spectral analysis needs at least four samples."""


class TooFewPointsError(ValueError):
    """Regression needs more points than fitted coefficients."""


class ZeroVarianceError(ValueError):
    """The response variable has zero variance; R^2 is undefined."""


class BadSpecError(ValueError):
    """A synthesis spec is internally inconsistent."""
