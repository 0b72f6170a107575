"""Fixed-length, fixed-stride candidate windows over a track timeline."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDurationError, OutOfRangeError
from .track_store import Track


@dataclass(frozen=True)
class CandidateWindow:
    """One candidate segment: frames [start_frame, start_frame + len_frames)."""

    index: int
    start_frame: int
    len_frames: int
    start_s: float
    end_s: float

    def __post_init__(self):
        if self.start_frame < 0:
            raise ValueError(f"start_frame must be >= 0, got {self.start_frame}")
        if self.len_frames < 2:
            raise ValueError(f"len_frames must be >= 2, got {self.len_frames}")

    @property
    def stop_frame(self) -> int:
        return self.start_frame + self.len_frames


def _to_frames(seconds: float, fps: float) -> int:
    # round-half-up keeps 0.5-frame ties stable at non-integer frame rates
    return int(np.floor(seconds * fps + 0.5))


def build_candidates(
    total_frames: int, fps: float, segment_len_s: float, stride_s: float
) -> list[CandidateWindow]:
    """Cut the pool of fixed-length candidates at a fixed stride.

    Windows start at frames 0, S, 2S, ... with S = round(stride_s * fps) and
    length L = round(segment_len_s * fps); the trailing partial segment is
    dropped, so the count is floor((total_frames - L) / S) + 1.
    """
    if fps <= 0:
        raise ValueError(f"fps must be > 0, got {fps}")
    if segment_len_s <= 0 or stride_s <= 0:
        raise ValueError("segment_len_s and stride_s must be > 0")
    length = _to_frames(segment_len_s, fps)
    stride = _to_frames(stride_s, fps)
    if length < 2:
        raise ValueError(f"segment of {segment_len_s}s spans {length} frames, need >= 2")
    if stride < 1:
        raise ValueError(f"stride of {stride_s}s spans no full frame at {fps} fps")
    if total_frames < length:
        raise InsufficientDurationError(
            f"track has {total_frames} frames, one segment needs {length}"
        )
    count = (total_frames - length) // stride + 1
    windows = []
    for i in range(count):
        start = i * stride
        windows.append(
            CandidateWindow(
                index=i,
                start_frame=start,
                len_frames=length,
                start_s=start / fps,
                end_s=(start + length) / fps,
            )
        )
    return windows


def slice_track(track: Track, window: CandidateWindow) -> np.ndarray:
    """Read-only view of the window's frames; no copy."""
    total = track.header.frame_count
    if window.start_frame < 0 or window.stop_frame > total:
        raise OutOfRangeError(
            f"window [{window.start_frame}, {window.stop_frame}) outside track of {total} frames"
        )
    return track.data[window.start_frame : window.stop_frame]
