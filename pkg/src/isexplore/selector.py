"""Segment selection strategies and ranked reports.

The main strategy ranks all candidate windows by audio feature diversity,
keeps the top_m, scores those by spectral motion complexity, and picks the
window maximizing diversity / (complexity + epsilon). Ablation strategies
reduce the score to a single ingredient or to a seeded random pick.
"""

from __future__ import annotations

import enum
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .audio_diversity import DEFAULT_K, DiversityMetricKind, compute_diversity
from .errors import TrackMismatchError
from .motion_spectral import (
    MotionComplexity,
    SpectralConfig,
    motion_complexity,
    motion_signals_from_landmarks,
)
from .track_store import AudioFeatureTrack, LandmarkTrack
from .windowing import CandidateWindow, build_candidates, slice_track


class StrategyKind(enum.Enum):
    ISEXPLORE = "isexplore"
    RANDOM = "random"
    AUDIO_ONLY = "audio"
    LIP_ONLY = "lip"
    CAMERA_ONLY = "camera"
    LIP_AND_CAMERA = "lip-camera"


@dataclass(frozen=True)
class SelectionConfig:
    segment_len_s: float = 5.0
    stride_s: float = 1.0
    top_m: int = 5
    diversity_metric: DiversityMetricKind = DiversityMetricKind.MEAN_PAIRWISE_EUCLIDEAN
    diversity_k: int = DEFAULT_K
    spectral: SpectralConfig = field(default_factory=SpectralConfig)
    w_lip: float = 0.5
    w_pose: float = 0.5
    epsilon: float = 1e-8
    strategy: StrategyKind = StrategyKind.ISEXPLORE
    seed: int = 0

    def __post_init__(self):
        if self.segment_len_s <= 0 or self.stride_s <= 0:
            raise ValueError("segment_len_s and stride_s must be > 0")
        if self.top_m < 1:
            raise ValueError(f"top_m must be >= 1, got {self.top_m}")
        if self.diversity_k < 1:
            raise ValueError(f"diversity_k must be >= 1, got {self.diversity_k}")
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be > 0, got {self.epsilon}")
        if self.w_lip < 0 or self.w_pose < 0 or self.w_lip + self.w_pose <= 0:
            raise ValueError("weights must be >= 0 with a positive sum")
        if self.seed < 0:
            raise ValueError(f"seed must be >= 0, got {self.seed}")


@dataclass(frozen=True)
class CandidateScore:
    window: CandidateWindow
    diversity: Optional[float]
    mc_lip: Optional[float]
    mc_pose: Optional[float]
    mc: Optional[float]
    informativeness: Optional[float]
    rank: int


@dataclass(frozen=True)
class SelectionReport:
    config: SelectionConfig
    candidates: tuple[CandidateScore, ...]  # rank order, rank 1 first
    chosen: CandidateWindow
    timings: dict[str, float]  # per-stage wall-clock in ms, informational


def informativeness_score(diversity: float, mc: float, epsilon: float = 1e-8) -> float:
    """Diversity over motion complexity, guarded by epsilon."""
    return diversity / (mc + epsilon)


def _validate_pair(audio: AudioFeatureTrack, landmarks: LandmarkTrack) -> None:
    if not isinstance(audio, AudioFeatureTrack):
        raise TrackMismatchError("first track must hold audio features")
    if not isinstance(landmarks, LandmarkTrack):
        raise TrackMismatchError("second track must hold 2-D landmarks")
    if audio.header.fps != landmarks.header.fps:
        raise TrackMismatchError(
            f"fps mismatch: audio {audio.header.fps} vs landmarks {landmarks.header.fps}"
        )
    if audio.header.frame_count != landmarks.header.frame_count:
        raise TrackMismatchError(
            f"frame count mismatch: audio {audio.header.frame_count} "
            f"vs landmarks {landmarks.header.frame_count}"
        )


def _map_ordered(fn: Callable, items: Sequence, threads: Optional[int]):
    if threads is not None and threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _motion_for(landmarks: LandmarkTrack, window: CandidateWindow, cfg: SelectionConfig) -> MotionComplexity:
    signals = motion_signals_from_landmarks(slice_track(landmarks, window), landmarks.header.fps)
    return motion_complexity(signals, cfg.spectral, cfg.w_lip, cfg.w_pose)


def run_isexplore(
    audio: AudioFeatureTrack,
    landmarks: LandmarkTrack,
    cfg: SelectionConfig = SelectionConfig(),
    threads: Optional[int] = None,
) -> SelectionReport:
    """Full pipeline: rank by diversity, keep top_m, pick max informativeness.

    Diversity is reported for every candidate (it is computed for the sort);
    motion complexity and informativeness stay unset outside the top_m set.
    Ties break toward the earliest start frame. Output is independent of
    ``threads``.
    """
    _validate_pair(audio, landmarks)
    t0 = time.perf_counter()
    windows = build_candidates(
        audio.header.frame_count, audio.header.fps, cfg.segment_len_s, cfg.stride_s
    )
    t1 = time.perf_counter()

    def diversity_of(window: CandidateWindow) -> float:
        return compute_diversity(slice_track(audio, window), cfg.diversity_metric, cfg.diversity_k)

    diversity = _map_ordered(diversity_of, windows, threads)
    t2 = time.perf_counter()

    by_diversity = sorted(
        range(len(windows)), key=lambda i: (-diversity[i], windows[i].start_frame)
    )
    kept = by_diversity[: min(cfg.top_m, len(windows))]
    kept_set = set(kept)
    motions = dict(
        zip(kept, _map_ordered(lambda i: _motion_for(landmarks, windows[i], cfg), kept, threads))
    )
    info = {
        i: informativeness_score(diversity[i], motions[i].mc, cfg.epsilon) for i in kept
    }
    t3 = time.perf_counter()

    scored_order = sorted(kept, key=lambda i: (-info[i], windows[i].start_frame))
    pruned_order = [i for i in by_diversity if i not in kept_set]
    candidates = []
    for rank, i in enumerate(scored_order + pruned_order, start=1):
        mot = motions.get(i)
        candidates.append(
            CandidateScore(
                window=windows[i],
                diversity=diversity[i],
                mc_lip=mot.mc_lip if mot else None,
                mc_pose=mot.mc_pose if mot else None,
                mc=mot.mc if mot else None,
                informativeness=info.get(i),
                rank=rank,
            )
        )
    timings = {
        "candidates_ms": (t1 - t0) * 1e3,
        "diversity_ms": (t2 - t1) * 1e3,
        "spectral_ms": (t3 - t2) * 1e3,
        "total_ms": (t3 - t0) * 1e3,
    }
    return SelectionReport(
        config=cfg, candidates=tuple(candidates), chosen=windows[scored_order[0]], timings=timings
    )


def run_strategy(
    audio: AudioFeatureTrack,
    landmarks: LandmarkTrack,
    cfg: SelectionConfig = SelectionConfig(),
    threads: Optional[int] = None,
) -> SelectionReport:
    """Run the configured strategy; every tie breaks to the earliest start."""
    if cfg.strategy == StrategyKind.ISEXPLORE:
        return run_isexplore(audio, landmarks, cfg, threads)
    _validate_pair(audio, landmarks)

    t0 = time.perf_counter()
    windows = build_candidates(
        audio.header.frame_count, audio.header.fps, cfg.segment_len_s, cfg.stride_s
    )
    t1 = time.perf_counter()
    n = len(windows)
    diversity: list[Optional[float]] = [None] * n
    mc_lip: list[Optional[float]] = [None] * n
    mc_pose: list[Optional[float]] = [None] * n
    mc: list[Optional[float]] = [None] * n
    t2 = t1

    if cfg.strategy == StrategyKind.RANDOM:
        pick = int(np.random.default_rng(cfg.seed).integers(0, n))
        order = [pick] + [i for i in range(n) if i != pick]
    elif cfg.strategy == StrategyKind.AUDIO_ONLY:
        def diversity_of(window):
            return compute_diversity(
                slice_track(audio, window), cfg.diversity_metric, cfg.diversity_k
            )

        diversity = _map_ordered(diversity_of, windows, threads)
        t2 = time.perf_counter()
        order = sorted(range(n), key=lambda i: (-diversity[i], windows[i].start_frame))
    else:
        motions = _map_ordered(lambda w: _motion_for(landmarks, w, cfg), windows, threads)
        t2 = time.perf_counter()
        keys = {
            StrategyKind.LIP_ONLY: [m.mc_lip for m in motions],
            StrategyKind.CAMERA_ONLY: [m.mc_pose for m in motions],
            StrategyKind.LIP_AND_CAMERA: [m.mc for m in motions],
        }[cfg.strategy]
        order = sorted(range(n), key=lambda i: (keys[i], windows[i].start_frame))
        if cfg.strategy in (StrategyKind.LIP_ONLY, StrategyKind.LIP_AND_CAMERA):
            mc_lip = [m.mc_lip for m in motions]
        if cfg.strategy in (StrategyKind.CAMERA_ONLY, StrategyKind.LIP_AND_CAMERA):
            mc_pose = [m.mc_pose for m in motions]
        if cfg.strategy == StrategyKind.LIP_AND_CAMERA:
            mc = [m.mc for m in motions]
    t3 = time.perf_counter()

    candidates = []
    for rank, i in enumerate(order, start=1):
        candidates.append(
            CandidateScore(
                window=windows[i],
                diversity=diversity[i],
                mc_lip=mc_lip[i],
                mc_pose=mc_pose[i],
                mc=mc[i],
                informativeness=None,
                rank=rank,
            )
        )
    timings = {
        "candidates_ms": (t1 - t0) * 1e3,
        "diversity_ms": (t2 - t1) * 1e3,
        "spectral_ms": (t3 - t2) * 1e3,
        "total_ms": (t3 - t0) * 1e3,
    }
    return SelectionReport(
        config=cfg, candidates=tuple(candidates), chosen=windows[order[0]], timings=timings
    )


# --- deterministic JSON -----------------------------------------------------
#
# Reports must serialize byte-identically for identical inputs and config, so
# floats are emitted with 17 significant digits through a fixed-key-order
# emitter instead of json.dumps' shortest-repr floats.


def format_number(value) -> str:
    if isinstance(value, bool):
        raise TypeError("bool is not a JSON number here")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _emit(value, indent: int, pad: str) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (int, float, np.integer, np.floating)):
        return format_number(value)
    inner = pad * (indent + 1)
    closer = pad * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{inner}{json.dumps(k)}: {_emit(v, indent + 1, pad)}" for k, v in value.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + closer + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{inner}{_emit(v, indent + 1, pad)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + closer + "]"
    raise TypeError(f"cannot serialize {type(value)!r}")


def dumps_deterministic(value) -> str:
    return _emit(value, 0, "  ") + "\n"


def config_to_dict(cfg: SelectionConfig) -> dict:
    return {
        "segment_len_s": cfg.segment_len_s,
        "stride_s": cfg.stride_s,
        "top_m": cfg.top_m,
        "diversity_metric": cfg.diversity_metric.value,
        "diversity_k": cfg.diversity_k,
        "hf_threshold": cfg.spectral.hf_threshold,
        "dc_excluded": cfg.spectral.dc_excluded,
        "w_lip": cfg.w_lip,
        "w_pose": cfg.w_pose,
        "epsilon": cfg.epsilon,
        "strategy": cfg.strategy.value,
        "seed": cfg.seed,
    }


def report_to_dict(report: SelectionReport, include_timings: bool = False) -> dict:
    candidates = [
        {
            "index": score.window.index,
            "start_s": score.window.start_s,
            "end_s": score.window.end_s,
            "D": score.diversity,
            "mc_lip": score.mc_lip,
            "mc_pose": score.mc_pose,
            "mc": score.mc,
            "I": score.informativeness,
            "rank": score.rank,
        }
        for score in report.candidates
    ]
    timings = {
        key: (report.timings.get(key) if include_timings else None)
        for key in ("candidates_ms", "diversity_ms", "spectral_ms", "total_ms")
    }
    return {
        "config": config_to_dict(report.config),
        "candidates": candidates,
        "chosen": {
            "index": report.chosen.index,
            "start_s": report.chosen.start_s,
            "end_s": report.chosen.end_s,
        },
        "timings": timings,
    }


def report_to_json(report: SelectionReport, include_timings: bool = False) -> str:
    """Serialize a report; timings default to null so the bytes only depend
    on inputs and config."""
    return dumps_deterministic(report_to_dict(report, include_timings))
