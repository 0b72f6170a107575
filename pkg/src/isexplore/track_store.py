"""FTRK binary container for per-frame feature tracks.

The format decouples media/ML extraction from the selection core: extractors
write one file per modality, the selector memory-maps or reads them back
bit-exactly. Layout (little-endian, 32 bytes of header):

    magic "FTRK" (4) | version u16 | kind u8 | pad u8 = 0 |
    fps f64 | frame_count u64 | dim u64 | payload f32[]

Payload is row-major: frame, then point (landmarks only), then coordinate.
An optional ".meta.json" sidecar (same basename) records provenance; it is
informational and never parsed by the selection math.
"""

from __future__ import annotations

import enum
import json
import math
import struct
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import BinaryIO, Union

import numpy as np

from .errors import (
    BadMagicError,
    NonFiniteDataError,
    TruncatedPayloadError,
    UnsupportedVersionError,
    ValidationError,
)

MAGIC = b"FTRK"
FORMAT_VERSION = 1
HEADER_SIZE = 32
_HEADER = struct.Struct("<4sHBBdQQ")


class TrackKind(enum.IntEnum):
    AUDIO_FEATURES = 0
    LANDMARKS_2D = 1


@dataclass(frozen=True)
class TrackHeader:
    kind: TrackKind
    fps: float
    frame_count: int
    dim: int
    version: int = FORMAT_VERSION

    def __post_init__(self):
        if self.kind not in (TrackKind.AUDIO_FEATURES, TrackKind.LANDMARKS_2D):
            raise ValidationError(f"unknown track kind {self.kind!r}")
        if not (math.isfinite(self.fps) and self.fps > 0):
            raise ValidationError(f"fps must be finite and > 0, got {self.fps!r}")
        if self.frame_count < 1:
            raise ValidationError(f"frame_count must be >= 1, got {self.frame_count}")
        if self.dim < 1:
            raise ValidationError(f"dim must be >= 1, got {self.dim}")

    @property
    def values_per_frame(self) -> int:
        return self.dim * (2 if self.kind == TrackKind.LANDMARKS_2D else 1)

    @property
    def payload_bytes(self) -> int:
        return self.frame_count * self.values_per_frame * 4


def _freeze(data: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(data, dtype=np.float32)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class AudioFeatureTrack:
    """Per-video-frame audio feature vectors, shape (frame_count, dim)."""

    header: TrackHeader
    data: np.ndarray

    def __post_init__(self):
        if self.header.kind != TrackKind.AUDIO_FEATURES:
            raise ValidationError("header kind must be AUDIO_FEATURES")
        object.__setattr__(self, "data", _freeze(self.data))
        if self.data.shape != (self.header.frame_count, self.header.dim):
            raise ValidationError(
                f"data shape {self.data.shape} does not match header "
                f"({self.header.frame_count}, {self.header.dim})"
            )
        if not np.isfinite(self.data).all():
            raise ValidationError("audio feature data contains NaN or Inf")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AudioFeatureTrack)
            and self.header == other.header
            and np.array_equal(self.data, other.data)
        )

    @classmethod
    def from_data(cls, data, fps: float) -> "AudioFeatureTrack":
        arr = np.asarray(data, dtype=np.float32)
        if arr.ndim != 2:
            raise ValidationError(f"audio data must be 2-D (T, d), got shape {arr.shape}")
        header = TrackHeader(TrackKind.AUDIO_FEATURES, float(fps), arr.shape[0], arr.shape[1])
        return cls(header, arr)


@dataclass(frozen=True, eq=False)
class LandmarkTrack:
    """Per-frame 2-D facial landmarks, shape (frame_count, points, 2)."""

    header: TrackHeader
    data: np.ndarray

    def __post_init__(self):
        if self.header.kind != TrackKind.LANDMARKS_2D:
            raise ValidationError("header kind must be LANDMARKS_2D")
        object.__setattr__(self, "data", _freeze(self.data))
        if self.data.shape != (self.header.frame_count, self.header.dim, 2):
            raise ValidationError(
                f"data shape {self.data.shape} does not match header "
                f"({self.header.frame_count}, {self.header.dim}, 2)"
            )
        if not np.isfinite(self.data).all():
            raise ValidationError("landmark data contains NaN or Inf")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LandmarkTrack)
            and self.header == other.header
            and np.array_equal(self.data, other.data)
        )

    @classmethod
    def from_data(cls, data, fps: float) -> "LandmarkTrack":
        arr = np.asarray(data, dtype=np.float32)
        if arr.ndim != 3 or arr.shape[2] != 2:
            raise ValidationError(f"landmark data must be (T, P, 2), got shape {arr.shape}")
        header = TrackHeader(TrackKind.LANDMARKS_2D, float(fps), arr.shape[0], arr.shape[1])
        return cls(header, arr)


Track = Union[AudioFeatureTrack, LandmarkTrack]


def write_track(track: Track, sink: BinaryIO) -> int:
    """Serialize a track to ``sink``; returns the number of bytes written.

    Raises ValidationError if the track somehow carries non-finite data and
    lets the sink's own OSError propagate on write failure.
    """
    if not np.isfinite(track.data).all():
        raise ValidationError("refusing to write non-finite track data")
    h = track.header
    header_bytes = _HEADER.pack(MAGIC, h.version, int(h.kind), 0, h.fps, h.frame_count, h.dim)
    payload = np.ascontiguousarray(track.data, dtype="<f4").tobytes()
    sink.write(header_bytes)
    sink.write(payload)
    return len(header_bytes) + len(payload)


def read_track(source: BinaryIO) -> Track:
    """Parse a track from ``source``, validating layout, length, and payload."""
    head = source.read(HEADER_SIZE)
    if len(head) < len(MAGIC) or head[: len(MAGIC)] != MAGIC:
        raise BadMagicError(f"bad magic {head[:len(MAGIC)]!r}, expected {MAGIC!r}")
    if len(head) < HEADER_SIZE:
        raise TruncatedPayloadError(f"header truncated at {len(head)} bytes")
    _, version, kind_raw, pad, fps, frame_count, dim = _HEADER.unpack(head)
    if version != FORMAT_VERSION:
        raise UnsupportedVersionError(f"unsupported format version {version}")
    if pad != 0:
        raise ValidationError(f"nonzero pad byte {pad}")
    try:
        kind = TrackKind(kind_raw)
    except ValueError:
        raise ValidationError(f"unknown track kind byte {kind_raw}") from None
    header = TrackHeader(kind, fps, frame_count, dim, version)

    payload = source.read(header.payload_bytes)
    if len(payload) < header.payload_bytes:
        raise TruncatedPayloadError(
            f"payload has {len(payload)} bytes, header declares {header.payload_bytes}"
        )
    if source.read(1):
        raise ValidationError("trailing bytes after declared payload")

    flat = np.frombuffer(payload, dtype="<f4").astype(np.float32)
    if not np.isfinite(flat).all():
        raise NonFiniteDataError("payload contains NaN or Inf")
    if kind == TrackKind.AUDIO_FEATURES:
        return AudioFeatureTrack(header, flat.reshape(frame_count, dim))
    return LandmarkTrack(header, flat.reshape(frame_count, dim, 2))


def save_track(track: Track, path) -> int:
    with open(path, "wb") as f:
        return write_track(track, f)


def load_track(path) -> Track:
    with open(path, "rb") as f:
        return read_track(f)


def sidecar_path(track_path) -> Path:
    return Path(track_path).with_suffix(".meta.json")


def write_sidecar(track_path, source: str | None = None, extractor: str | None = None) -> Path:
    """Write the informational ".meta.json" sidecar next to a track file."""
    meta = {
        "source": source,
        "extractor": extractor,
        "created_utc": datetime.now(timezone.utc).isoformat(),
    }
    path = sidecar_path(track_path)
    path.write_text(json.dumps(meta, indent=2) + "\n")
    return path


def read_sidecar(track_path) -> dict | None:
    path = sidecar_path(track_path)
    if not path.exists():
        return None
    try:
        return json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return None
