"""Spectral motion complexity of lip and head-pose signals.

Landmark windows are reduced to 21 scalar time series: the distance of each
of the 20 mouth points (indices 48..67 of the 68-point scheme) to the mouth's
geometric center, and the inter-frame displacement of that center as a pose
proxy. Each series is scored by its high-frequency ratio: the share of
one-sided DFT magnitude (DC excluded) that lies at or above a configurable
fraction of the Nyquist frequency.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SignalTooShortError, TooFewLandmarksError

MOUTH_START = 48
MOUTH_STOP = 68
MOUTH_POINTS = MOUTH_STOP - MOUTH_START


@dataclass(frozen=True)
class SpectralConfig:
    hf_threshold: float = 0.25  # fraction of Nyquist; bins at/above count as high
    dc_excluded: bool = True  # a constant offset carries no motion

    def __post_init__(self):
        if not 0.0 < self.hf_threshold < 1.0:
            raise ValueError(f"hf_threshold must be in (0, 1), got {self.hf_threshold}")
        if not self.dc_excluded:
            raise ValueError("dc_excluded is fixed to True")


@dataclass(frozen=True)
class MotionSignals:
    """Lip distance channels (20, T), pose channel (T-1,), both finite."""

    lip_channels: np.ndarray
    pose_channel: np.ndarray
    fps: float

    def __post_init__(self):
        lips = np.asarray(self.lip_channels, dtype=np.float64)
        pose = np.asarray(self.pose_channel, dtype=np.float64)
        if lips.ndim != 2 or lips.shape[0] != MOUTH_POINTS:
            raise ValueError(f"lip_channels must be ({MOUTH_POINTS}, T), got {lips.shape}")
        if pose.ndim != 1:
            raise ValueError(f"pose_channel must be 1-D, got shape {pose.shape}")
        if not (np.isfinite(lips).all() and np.isfinite(pose).all()):
            raise ValueError("motion signals contain NaN or Inf")
        object.__setattr__(self, "lip_channels", lips)
        object.__setattr__(self, "pose_channel", pose)


@dataclass(frozen=True)
class MotionComplexity:
    mc_lip: float
    mc_pose: float
    mc: float


def _mouth_centers(landmarks) -> tuple[np.ndarray, np.ndarray]:
    pts = np.asarray(landmarks, dtype=np.float64)
    if pts.ndim != 3 or pts.shape[2] != 2:
        raise ValueError(f"landmarks must be (T, P, 2), got shape {pts.shape}")
    if pts.shape[1] < MOUTH_STOP:
        raise TooFewLandmarksError(
            f"need at least {MOUTH_STOP} landmark points, got {pts.shape[1]}"
        )
    mouth = pts[:, MOUTH_START:MOUTH_STOP, :]
    return mouth, mouth.mean(axis=1)


def lip_distance_series(landmarks) -> np.ndarray:
    """Per-frame distance of each mouth point to the mouth center, (20, T).

    Invariant under translation of the whole face by construction.
    """
    mouth, centers = _mouth_centers(landmarks)
    return np.linalg.norm(mouth - centers[:, None, :], axis=2).T


def pose_center_series(landmarks) -> np.ndarray:
    """Inter-frame displacement magnitude of the mouth center, (T-1,)."""
    _, centers = _mouth_centers(landmarks)
    if centers.shape[0] < 2:
        raise SignalTooShortError("pose series needs at least 2 frames")
    return np.linalg.norm(np.diff(centers, axis=0), axis=1)


def hf_ratio(signal, fps: float, cfg: SpectralConfig = SpectralConfig()) -> float:
    """Share of one-sided DFT magnitude at or above the high-frequency cutoff.

    Bin i of an N-sample series sits at normalized frequency 2i/N of Nyquist;
    bins with 2i/N >= hf_threshold count as high. DC is excluded from both
    sums. Returns 0.0 for a constant signal.
    """
    x = np.asarray(signal, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"signal must be 1-D, got shape {x.shape}")
    n = x.size
    if n < 4:
        raise SignalTooShortError(f"need at least 4 samples, got {n}")
    if not np.isfinite(x).all():
        raise ValueError("signal contains NaN or Inf")
    mean = x.mean()
    x = x - mean  # removes DC; non-DC bins are analytically unchanged
    # deviations within fp rounding of the constant level are not motion
    if float(np.abs(x).max()) <= 1e-12 * abs(mean):
        return 0.0
    mags = np.abs(np.fft.rfft(x))[1:]
    total = mags.sum()
    if total == 0.0:
        return 0.0
    bins = np.arange(1, mags.size + 1)
    high = mags[2 * bins >= cfg.hf_threshold * n]
    return float(high.sum() / total)


def motion_complexity(
    signals: MotionSignals,
    cfg: SpectralConfig = SpectralConfig(),
    w_lip: float = 0.5,
    w_pose: float = 0.5,
) -> MotionComplexity:
    """Weighted high-frequency ratio of lip channels and the pose channel.

    mc_lip averages the ratio over the 20 lip channels, mc_pose scores the
    pose channel, and mc is their weighted mean. All values lie in [0, 1].
    """
    if w_lip < 0 or w_pose < 0 or w_lip + w_pose <= 0:
        raise ValueError(f"weights must be >= 0 with a positive sum, got {w_lip}, {w_pose}")
    lip_ratios = [hf_ratio(ch, signals.fps, cfg) for ch in signals.lip_channels]
    mc_lip = float(np.mean(lip_ratios))
    mc_pose = hf_ratio(signals.pose_channel, signals.fps, cfg)
    mc = (w_lip * mc_lip + w_pose * mc_pose) / (w_lip + w_pose)
    return MotionComplexity(mc_lip=mc_lip, mc_pose=mc_pose, mc=mc)


def motion_signals_from_landmarks(landmarks, fps: float) -> MotionSignals:
    """Build MotionSignals from a landmark window of shape (T, P, 2)."""
    return MotionSignals(
        lip_channels=lip_distance_series(landmarks),
        pose_channel=pose_center_series(landmarks),
        fps=fps,
    )
