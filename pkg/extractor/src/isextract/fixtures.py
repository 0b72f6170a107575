"""Rendered reference clips with known geometry and audio content.

Frames show a bright disc on black following a slow horizontal sway; the
audio is a deterministic two-tone mix with per-second level changes (or
digital silence). Ground truth for the disc center is returned so detector
accuracy can be checked frame by frame.
"""

from __future__ import annotations

import numpy as np

from .avi import write_avi


def render_clip(
    path,
    duration_s: float = 10.0,
    fps: float = 25.0,
    size: tuple[int, int] = (96, 96),
    sample_rate: int = 16000,
    with_audio: bool = True,
    silence: bool = False,
    blank_frames: tuple[int, ...] = (),
    sway_amp: float = 6.0,
    sway_hz: float = 0.5,
    seed: int = 0,
) -> dict:
    """Write an AVI fixture; returns ground truth (frame count, fps, disc
    centers as (x, y) per frame)."""
    import cv2

    width, height = size
    n_frames = int(round(duration_s * fps))
    t = np.arange(n_frames) / fps
    cx = width / 2.0 + sway_amp * np.sin(2 * np.pi * sway_hz * t)
    cy = np.full(n_frames, height / 2.0)

    frames = []
    for f in range(n_frames):
        frame = np.zeros((height, width, 3), np.uint8)
        if f not in blank_frames:
            cv2.circle(frame, (round(cx[f]), round(cy[f])), 7, (255, 255, 255), -1)
        frames.append(frame)

    audio = None
    if with_audio:
        n_samples = int(round(duration_s * sample_rate))
        if silence:
            audio = np.zeros(n_samples, np.int16)
        else:
            ts = np.arange(n_samples) / sample_rate
            level = 0.4 + 0.4 * np.sin(2 * np.pi * 0.37 * ts)  # slow level drift
            rng = np.random.default_rng(seed)
            wave = level * (
                np.sin(2 * np.pi * 220.0 * ts) + 0.5 * np.sin(2 * np.pi * 880.0 * ts)
            ) + 0.02 * rng.standard_normal(n_samples)
            audio = np.clip(wave * 0.5, -0.999, 0.999)
            audio = (audio * 32767).astype(np.int16)

    write_avi(path, frames, fps, audio=audio, sample_rate=sample_rate)
    centers = np.stack([np.round(cx), np.round(cy)], axis=1)  # drawn at integer pixels
    return {"frame_count": n_frames, "fps": fps, "centers": centers}
