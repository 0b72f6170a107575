"""Informative reference-segment selection for talking-face training videos."""

from .audio_diversity import (
    DegenerateVarianceWarning,
    DiversityMetricKind,
    compute_diversity,
    mean_pairwise_euclidean,
    pca_cumulative_variance,
    pca_top1_explained_variance,
    semantic_entropy,
)
from .motion_spectral import (
    MotionComplexity,
    MotionSignals,
    SpectralConfig,
    hf_ratio,
    lip_distance_series,
    motion_complexity,
    motion_signals_from_landmarks,
    pose_center_series,
)
from .selector import (
    CandidateScore,
    SelectionConfig,
    SelectionReport,
    StrategyKind,
    informativeness_score,
    report_to_json,
    run_isexplore,
    run_strategy,
)
from .stats import FitModel, FitResult, fit_quality_relation
from .synth import (
    PoseSegment,
    SynthSpec,
    generate_tracks,
    overlap_fraction,
    planted_recovery_trial,
    standard_plant_spec,
)
from .track_store import (
    AudioFeatureTrack,
    LandmarkTrack,
    TrackHeader,
    TrackKind,
    load_track,
    read_track,
    save_track,
    write_track,
)
from .windowing import CandidateWindow, build_candidates, slice_track

__version__ = "0.1.0"

__all__ = [
    "AudioFeatureTrack",
    "CandidateScore",
    "CandidateWindow",
    "DegenerateVarianceWarning",
    "DiversityMetricKind",
    "FitModel",
    "FitResult",
    "LandmarkTrack",
    "MotionComplexity",
    "MotionSignals",
    "PoseSegment",
    "SelectionConfig",
    "SelectionReport",
    "SpectralConfig",
    "StrategyKind",
    "SynthSpec",
    "TrackHeader",
    "TrackKind",
    "build_candidates",
    "compute_diversity",
    "fit_quality_relation",
    "generate_tracks",
    "hf_ratio",
    "informativeness_score",
    "lip_distance_series",
    "load_track",
    "mean_pairwise_euclidean",
    "motion_complexity",
    "motion_signals_from_landmarks",
    "overlap_fraction",
    "pca_cumulative_variance",
    "pca_top1_explained_variance",
    "planted_recovery_trial",
    "pose_center_series",
    "read_track",
    "report_to_json",
    "run_isexplore",
    "run_strategy",
    "save_track",
    "semantic_entropy",
    "slice_track",
    "standard_plant_spec",
    "write_track",
]
