"""Orchestration: a reference video in, an aligned FTRK track pair out.

Both tracks carry one row per decoded video frame and share the container's
frame rate, so they always pass the selection core's pairing checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from isexplore.track_store import (
    AudioFeatureTrack,
    LandmarkTrack,
    save_track,
    write_sidecar,
)

from .audio import FilterbankConfig, frame_aligned_features
from .avi import iter_video_frames, read_avi_audio, video_fps
from .errors import DecodeError
from .landmarks import BrightCentroidDetector, LandmarkDetector, LandmarkStats, landmarks_from_frames

AUDIO_BACKENDS = ("baseline", "pluggable")

# pluggable encoder: (mono samples, sample_rate, frame_count, fps) -> (frame_count, d)
AudioEncoder = Callable[[np.ndarray, int, int, float], np.ndarray]


@dataclass(frozen=True)
class ExtractorConfig:
    audio_backend: str = "baseline"
    audio_encoder: Optional[AudioEncoder] = None
    filterbank: FilterbankConfig = field(default_factory=FilterbankConfig)
    landmark_detector: LandmarkDetector = field(default_factory=BrightCentroidDetector)
    target_fps: Optional[float] = None  # overrides container fps metadata only

    def __post_init__(self):
        if self.audio_backend not in AUDIO_BACKENDS:
            raise ValueError(f"audio_backend must be one of {AUDIO_BACKENDS}")
        if self.audio_backend == "pluggable" and self.audio_encoder is None:
            raise ValueError("pluggable audio backend needs an audio_encoder")
        if self.target_fps is not None and self.target_fps <= 0:
            raise ValueError(f"target_fps must be > 0, got {self.target_fps}")


def probe_video(video_path, cfg: ExtractorConfig = ExtractorConfig()) -> tuple[int, float]:
    """Frame count (by decoding) and frame rate of the video stream."""
    fps = cfg.target_fps or video_fps(video_path)
    count = sum(1 for _ in iter_video_frames(video_path))
    if count == 0:
        raise DecodeError(f"{video_path} decodes to zero frames")
    return count, fps


def extract_audio_features(
    video_path, cfg: ExtractorConfig = ExtractorConfig()
) -> AudioFeatureTrack:
    """One feature row per video frame; deterministic with the baseline
    backend. Raises NoAudioStreamError when the container has no audio."""
    frame_count, fps = probe_video(video_path, cfg)
    samples, sample_rate = read_avi_audio(video_path)
    if cfg.audio_backend == "baseline":
        features = frame_aligned_features(samples, sample_rate, frame_count, fps, cfg.filterbank)
    else:
        features = np.asarray(cfg.audio_encoder(samples, sample_rate, frame_count, fps))
        if features.ndim != 2 or features.shape[0] != frame_count:
            raise DecodeError(
                f"pluggable encoder returned shape {features.shape}, "
                f"need ({frame_count}, d)"
            )
    return AudioFeatureTrack.from_data(features.astype(np.float32), fps)


def extract_landmarks(
    video_path, cfg: ExtractorConfig = ExtractorConfig()
) -> tuple[LandmarkTrack, LandmarkStats]:
    """One 68x2 row per video frame; failed detections are forward-filled and
    counted in the returned stats."""
    fps = cfg.target_fps or video_fps(video_path)
    rows, stats = landmarks_from_frames(iter_video_frames(video_path), cfg.landmark_detector)
    return LandmarkTrack.from_data(rows.astype(np.float32), fps), stats


def extract(video_path, out_dir, cfg: ExtractorConfig = ExtractorConfig()) -> dict:
    """Extract both tracks and write audio.ftrk / landmarks.ftrk plus their
    provenance sidecars under ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    audio = extract_audio_features(video_path, cfg)
    landmarks, stats = extract_landmarks(video_path, cfg)

    audio_path = out_dir / "audio.ftrk"
    landmark_path = out_dir / "landmarks.ftrk"
    save_track(audio, audio_path)
    save_track(landmarks, landmark_path)
    audio_backend = (
        "filterbank-baseline" if cfg.audio_backend == "baseline" else "pluggable-encoder"
    )
    write_sidecar(audio_path, source=str(video_path), extractor=audio_backend)
    write_sidecar(
        landmark_path,
        source=str(video_path),
        extractor=type(cfg.landmark_detector).__name__,
    )
    return {
        "audio": audio_path,
        "landmarks": landmark_path,
        "frame_count": audio.header.frame_count,
        "fps": audio.header.fps,
        "landmark_stats": stats,
    }
