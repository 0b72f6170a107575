"""Synthetic feature and landmark tracks with planted ground truth.

Profiles are piecewise per-second: audio rows are drawn around a fixed mean
with a per-second variance level, mouth landmarks sit on a 20-point ellipse
whose radius is modulated by a per-second mix of one low- and one
high-frequency sinusoid, and the face center follows a per-second pose
program (static, linear drift, or high-frequency jitter). A "plant" is a
contiguous region designed to win the selection (high audio variance, slow
lips, still head); recovery trials check whether a strategy finds it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .selector import SelectionConfig, SelectionReport, run_strategy
from .track_store import AudioFeatureTrack, LandmarkTrack
from .windowing import CandidateWindow
from .errors import BadSpecError

POSE_MODES = ("static", "linear", "jitter")

FACE_CENTER_START = (120.0, 120.0)
FACE_RADIUS = 45.0
MOUTH_OFFSET = (0.0, 18.0)
MOUTH_RX = 12.0
MOUTH_RY = 8.0


@dataclass(frozen=True)
class PoseSegment:
    """One second of head-center trajectory.

    jitter is a horizontal sinusoidal sway; its speed series then carries
    genuine spectral content at twice the sway frequency and above, unlike a
    circular wobble whose speed would be constant.
    """

    mode: str = "static"
    vx: float = 0.0  # px/s, linear mode
    vy: float = 0.0
    freq_hz: float = 0.0  # jitter mode
    amp: float = 0.0  # px, jitter mode

    def __post_init__(self):
        if self.mode not in POSE_MODES:
            raise BadSpecError(f"pose mode must be one of {POSE_MODES}, got {self.mode!r}")
        if self.amp < 0:
            raise BadSpecError(f"jitter amplitude must be >= 0, got {self.amp}")
        if self.mode == "jitter" and self.freq_hz <= 0:
            raise BadSpecError("jitter needs freq_hz > 0")


@dataclass(frozen=True)
class SynthSpec:
    duration_s: float
    fps: float = 25.0
    feature_dim: int = 16
    audio_variance: tuple[float, ...] = (1.0,)
    lip_low_amp: tuple[float, ...] = (1.0,)
    lip_high_amp: tuple[float, ...] = (0.0,)
    pose: tuple[PoseSegment, ...] = (PoseSegment(),)
    lip_low_hz: float = 1.0
    lip_high_hz: float = 10.0
    seed: int = 0

    def __post_init__(self):
        if self.duration_s <= 0 or self.fps <= 0:
            raise BadSpecError("duration_s and fps must be > 0")
        if self.feature_dim < 1:
            raise BadSpecError(f"feature_dim must be >= 1, got {self.feature_dim}")
        if self.lip_low_hz <= 0 or self.lip_high_hz <= 0:
            raise BadSpecError("lip frequencies must be > 0")
        n = self.n_seconds
        for name in ("audio_variance", "lip_low_amp", "lip_high_amp", "pose"):
            profile = getattr(self, name)
            if len(profile) not in (1, n):
                raise BadSpecError(f"{name} must have 1 or {n} entries, got {len(profile)}")
        if any(v < 0 for v in self.audio_variance):
            raise BadSpecError("audio variance levels must be >= 0")
        if any(a < 0 for a in self.lip_low_amp) or any(a < 0 for a in self.lip_high_amp):
            raise BadSpecError("lip amplitudes must be >= 0")

    @property
    def n_seconds(self) -> int:
        return int(math.ceil(self.duration_s - 1e-9))

    @property
    def frame_count(self) -> int:
        return int(math.floor(self.duration_s * self.fps + 0.5))


def _per_second(profile: tuple, n: int) -> list:
    return list(profile) * n if len(profile) == 1 else list(profile)


def spec_to_dict(spec: SynthSpec) -> dict:
    return {
        "duration_s": spec.duration_s,
        "fps": spec.fps,
        "feature_dim": spec.feature_dim,
        "seed": spec.seed,
        "audio_variance": list(spec.audio_variance),
        "lip_low_amp": list(spec.lip_low_amp),
        "lip_high_amp": list(spec.lip_high_amp),
        "lip_low_hz": spec.lip_low_hz,
        "lip_high_hz": spec.lip_high_hz,
        "pose": [
            {"mode": p.mode, "vx": p.vx, "vy": p.vy, "freq_hz": p.freq_hz, "amp": p.amp}
            for p in spec.pose
        ],
    }


def spec_from_dict(raw: dict) -> SynthSpec:
    if not isinstance(raw, dict):
        raise BadSpecError("spec must be a JSON object")
    try:
        pose_raw = raw.get("pose", [{"mode": "static"}])
        pose = tuple(PoseSegment(**{k: v for k, v in p.items()}) for p in pose_raw)
        return SynthSpec(
            duration_s=float(raw["duration_s"]),
            fps=float(raw.get("fps", 25.0)),
            feature_dim=int(raw.get("feature_dim", 16)),
            audio_variance=tuple(float(v) for v in raw.get("audio_variance", [1.0])),
            lip_low_amp=tuple(float(v) for v in raw.get("lip_low_amp", [1.0])),
            lip_high_amp=tuple(float(v) for v in raw.get("lip_high_amp", [0.0])),
            pose=pose,
            lip_low_hz=float(raw.get("lip_low_hz", 1.0)),
            lip_high_hz=float(raw.get("lip_high_hz", 10.0)),
            seed=int(raw.get("seed", 0)),
        )
    except BadSpecError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise BadSpecError(f"invalid spec: {exc}") from exc


def generate_tracks(spec: SynthSpec) -> tuple[AudioFeatureTrack, LandmarkTrack]:
    """Deterministically synthesize an aligned audio/landmark track pair."""
    frames = spec.frame_count
    n_sec = spec.n_seconds
    t = np.arange(frames) / spec.fps
    sec = np.minimum(t.astype(np.int64), n_sec - 1)

    rng = np.random.default_rng(spec.seed)
    std = np.sqrt(np.asarray(_per_second(spec.audio_variance, n_sec)))[sec]
    audio = std[:, None] * rng.standard_normal((frames, spec.feature_dim))

    pose = _per_second(spec.pose, n_sec)
    velocity = np.zeros((frames, 2))
    jitter = np.zeros((frames, 2))
    for f in range(frames):
        seg = pose[sec[f]]
        if seg.mode == "linear":
            velocity[f] = (seg.vx / spec.fps, seg.vy / spec.fps)
        elif seg.mode == "jitter":
            jitter[f] = (seg.amp * math.sin(2.0 * math.pi * seg.freq_hz * t[f]), 0.0)
    center = np.asarray(FACE_CENTER_START) + np.vstack(
        [np.zeros(2), np.cumsum(velocity[:-1], axis=0)]
    )
    center += jitter

    low = np.asarray(_per_second(spec.lip_low_amp, n_sec))[sec]
    high = np.asarray(_per_second(spec.lip_high_amp, n_sec))[sec]
    radius_mod = low * np.sin(2.0 * math.pi * spec.lip_low_hz * t) + high * np.sin(
        2.0 * math.pi * spec.lip_high_hz * t
    )

    landmarks = np.empty((frames, 68, 2))
    face_angles = 2.0 * math.pi * np.arange(48) / 48.0
    face_template = FACE_RADIUS * np.column_stack([np.cos(face_angles), np.sin(face_angles)])
    landmarks[:, :48, :] = center[:, None, :] + face_template[None, :, :]

    mouth_angles = 2.0 * math.pi * np.arange(20) / 20.0
    mouth_center = center + np.asarray(MOUTH_OFFSET)
    rx = MOUTH_RX + radius_mod
    ry = MOUTH_RY + radius_mod
    landmarks[:, 48:, 0] = mouth_center[:, 0:1] + rx[:, None] * np.cos(mouth_angles)[None, :]
    landmarks[:, 48:, 1] = mouth_center[:, 1:2] + ry[:, None] * np.sin(mouth_angles)[None, :]

    return (
        AudioFeatureTrack.from_data(audio.astype(np.float32), spec.fps),
        LandmarkTrack.from_data(landmarks.astype(np.float32), spec.fps),
    )


def standard_plant_spec(
    seed: int,
    duration_s: float = 60.0,
    fps: float = 25.0,
    plant_len_s: int = 5,
    feature_dim: int = 16,
    plant_start_s: int | None = None,
) -> tuple[SynthSpec, float]:
    """Plant one high-diversity, low-complexity region among contrastive
    distractors; the plant position derives from the seed unless pinned.

    The plant sways slowly rather than standing still: a bit-still head
    leaves only coordinate-quantization noise in the pose channel, whose
    spectrum is broadband, so genuine slow motion is the low-complexity
    extreme."""
    n_sec = int(round(duration_s))
    if plant_start_s is None:
        plant_start_s = seed % (n_sec - plant_len_s + 1)
    plant = range(plant_start_s, plant_start_s + plant_len_s)

    variance = [9.0 if s in plant else 1.0 for s in range(n_sec)]
    low_amp = [2.5 if s in plant else 0.0 for s in range(n_sec)]
    high_amp = [0.0 if s in plant else 2.5 for s in range(n_sec)]
    slow = PoseSegment(mode="jitter", freq_hz=0.5, amp=2.0)
    fast = PoseSegment(mode="jitter", freq_hz=5.25, amp=2.0)
    pose = [slow if s in plant else fast for s in range(n_sec)]
    spec = SynthSpec(
        duration_s=duration_s,
        fps=fps,
        feature_dim=feature_dim,
        audio_variance=tuple(variance),
        lip_low_amp=tuple(low_amp),
        lip_high_amp=tuple(high_amp),
        pose=tuple(pose),
        seed=seed,
    )
    return spec, float(plant_start_s)


def overlap_fraction(window: CandidateWindow, plant_start_s: float, plant_len_s: float) -> float:
    """Overlap between a chosen window and the plant, as a fraction of the
    window's own length."""
    overlap = max(
        0.0, min(window.end_s, plant_start_s + plant_len_s) - max(window.start_s, plant_start_s)
    )
    return overlap / (window.end_s - window.start_s)


def planted_recovery_trial(
    spec: SynthSpec,
    plant_start_s: float,
    plant_len_s: float,
    cfg: SelectionConfig = SelectionConfig(),
) -> bool:
    """True iff the configured strategy's chosen window overlaps the plant by
    at least 80% of the segment length."""
    audio, landmarks = generate_tracks(spec)
    report = run_strategy(audio, landmarks, cfg)
    return overlap_fraction(report.chosen, plant_start_s, plant_len_s) >= 0.8


ABLATION_CSV_HEADER = "strategy,seed,chosen_start_s,plant_start_s,overlap_frac,D,mc,I"


def ablation_csv_row(
    strategy: str,
    seed: int,
    report: SelectionReport,
    plant_start_s: float | None = None,
    plant_len_s: float | None = None,
) -> str:
    """One CSV row per (strategy, seed); plant columns stay empty when no
    plant is known."""
    from .selector import format_number

    chosen_score = report.candidates[0]
    if plant_start_s is None or plant_len_s is None:
        plant_cell, overlap_cell = "", ""
    else:
        plant_cell = format_number(plant_start_s)
        overlap_cell = format_number(
            overlap_fraction(report.chosen, plant_start_s, plant_len_s)
        )
    cells = [
        strategy,
        str(seed),
        format_number(report.chosen.start_s),
        plant_cell,
        overlap_cell,
        format_number(chosen_score.diversity) if chosen_score.diversity is not None else "",
        format_number(chosen_score.mc) if chosen_score.mc is not None else "",
        format_number(chosen_score.informativeness)
        if chosen_score.informativeness is not None
        else "",
    ]
    return ",".join(cells)
