"""Extraction failures."""


class ExtractionError(Exception):
    """A video could not be converted into feature tracks."""


class DecodeError(ExtractionError):
    """The container or one of its streams could not be decoded."""


class NoAudioStreamError(ExtractionError):
    """The container has no audio stream."""


class FaceNotFoundError(ExtractionError):
    """Landmark detection failed on more than 5% of the frames."""
