"""Deterministic log-filterbank features, one row per video frame.

The baseline encoder is intentionally simple: a Hann-windowed power spectrum
centered on each frame timestamp, pooled through triangular mel-spaced bands
and log-compressed. It carries no learned weights, so two runs over the same
bytes produce identical tracks; production users plug a trained encoder in
its place.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FilterbankConfig:
    n_bands: int = 26
    f_min_hz: float = 50.0
    window_frame_periods: float = 2.0  # analysis window length, in 1/fps units
    power_floor: float = 1e-10

    def __post_init__(self):
        if self.n_bands < 1:
            raise ValueError(f"n_bands must be >= 1, got {self.n_bands}")
        if self.f_min_hz <= 0 or self.window_frame_periods <= 0:
            raise ValueError("f_min_hz and window_frame_periods must be > 0")


def _mel(f):
    return 2595.0 * np.log10(1.0 + np.asarray(f) / 700.0)


def _mel_inv(m):
    return 700.0 * (10.0 ** (np.asarray(m) / 2595.0) - 1.0)


def mel_filterbank(n_bands: int, n_fft: int, sample_rate: int, f_min: float) -> np.ndarray:
    """Triangular filters (n_bands, n_fft//2 + 1) between f_min and Nyquist."""
    f_max = sample_rate / 2.0
    points = _mel_inv(np.linspace(_mel(f_min), _mel(f_max), n_bands + 2))
    bins = np.floor((n_fft + 1) * points / sample_rate).astype(int)
    filters = np.zeros((n_bands, n_fft // 2 + 1))
    for b in range(n_bands):
        lo, mid, hi = bins[b], bins[b + 1], bins[b + 2]
        mid = max(mid, lo + 1)
        hi = max(hi, mid + 1)
        filters[b, lo:mid] = (np.arange(lo, mid) - lo) / (mid - lo)
        filters[b, mid:hi] = (hi - np.arange(mid, hi)) / (hi - mid)
    return filters


def frame_aligned_features(
    samples: np.ndarray,
    sample_rate: int,
    frame_count: int,
    fps: float,
    cfg: FilterbankConfig = FilterbankConfig(),
) -> np.ndarray:
    """Features of shape (frame_count, n_bands), float32.

    Row f analyzes a window centered at timestamp f/fps, zero-padded at the
    clip boundaries.
    """
    x = np.asarray(samples, dtype=np.float64)
    win = int(round(cfg.window_frame_periods / fps * sample_rate))
    win += win % 2  # keep the center symmetric
    n_fft = 1 << max(6, (win - 1).bit_length())
    window = np.hanning(win)
    filters = mel_filterbank(cfg.n_bands, n_fft, sample_rate, cfg.f_min_hz)

    features = np.empty((frame_count, cfg.n_bands))
    half = win // 2
    for f in range(frame_count):
        center = int(round(f / fps * sample_rate))
        lo, hi = center - half, center + half
        piece = np.zeros(win)
        src_lo, src_hi = max(lo, 0), min(hi, x.size)
        if src_hi > src_lo:
            piece[src_lo - lo : src_hi - lo] = x[src_lo:src_hi]
        spectrum = np.abs(np.fft.rfft(piece * window, n_fft)) ** 2
        features[f] = np.log(filters @ spectrum + cfg.power_floor)
    return features.astype(np.float32)
