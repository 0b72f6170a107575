"""Media adapter: aligned audio-feature and landmark tracks from videos."""

from .audio import FilterbankConfig, frame_aligned_features, mel_filterbank
from .avi import iter_video_frames, read_avi_audio, video_fps, write_avi
from .errors import DecodeError, ExtractionError, FaceNotFoundError, NoAudioStreamError
from .extractor import (
    ExtractorConfig,
    extract,
    extract_audio_features,
    extract_landmarks,
    probe_video,
)
from .fixtures import render_clip
from .landmarks import (
    BrightCentroidDetector,
    LandmarkDetector,
    LandmarkStats,
    landmarks_from_frames,
)

__version__ = "0.1.0"

__all__ = [
    "BrightCentroidDetector",
    "DecodeError",
    "ExtractionError",
    "ExtractorConfig",
    "FaceNotFoundError",
    "FilterbankConfig",
    "LandmarkDetector",
    "LandmarkStats",
    "NoAudioStreamError",
    "extract",
    "extract_audio_features",
    "extract_landmarks",
    "frame_aligned_features",
    "iter_video_frames",
    "landmarks_from_frames",
    "mel_filterbank",
    "probe_video",
    "read_avi_audio",
    "render_clip",
    "video_fps",
    "write_avi",
]
