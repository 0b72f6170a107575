import dataclasses
import json

import numpy as np
import pytest

from isexplore import (
    AudioFeatureTrack,
    LandmarkTrack,
    SelectionConfig,
    StrategyKind,
    informativeness_score,
    report_to_json,
    run_isexplore,
    run_strategy,
)
from isexplore.errors import InsufficientDurationError, TrackMismatchError
from oracles import brute_force_best

FPS = 25.0


def build_tracks(audio_windows, landmark_windows):
    """Concatenate per-window blocks into aligned tracks."""
    audio = np.concatenate(audio_windows).astype(np.float32)
    landmarks = np.concatenate(landmark_windows).astype(np.float32)
    return (
        AudioFeatureTrack.from_data(audio, FPS),
        LandmarkTrack.from_data(landmarks, FPS),
    )


def face_block(frames, lip_wiggle_hz=None, lip_amp=0.0, pose_hz=None, pose_amp=0.0, rng=None):
    pts = np.zeros((frames, 68, 2))
    t = np.arange(frames) / FPS
    angles48 = 2 * np.pi * np.arange(48) / 48
    pts[:, :48, 0] = 40 * np.cos(angles48) + 100
    pts[:, :48, 1] = 40 * np.sin(angles48) + 100
    angles20 = 2 * np.pi * np.arange(20) / 20
    radius = 10.0 + (lip_amp * np.sin(2 * np.pi * lip_wiggle_hz * t) if lip_wiggle_hz else 0.0)
    pts[:, 48:, 0] = 100 + np.outer(radius, np.cos(angles20))
    pts[:, 48:, 1] = 115 + np.outer(radius, np.sin(angles20))
    if pose_hz:
        shift = pose_amp * np.sin(2 * np.pi * pose_hz * t)
        pts += shift[:, None, None]
    return pts


@pytest.fixture
def three_window_fixture():
    """Three disjoint 2 s windows: segment_len = stride = 2 s.

    Window 1 has the highest audio diversity and a perfectly still face, so
    it must win the full strategy. Window 0 wiggles fast with a slow sway,
    window 2 wiggles slowly with a fast sway.
    """
    rng = np.random.default_rng(77)
    frames = 50
    audio = [
        0.5 * rng.standard_normal((frames, 8)),
        3.0 * rng.standard_normal((frames, 8)),
        1.0 * rng.standard_normal((frames, 8)),
    ]
    faces = [
        face_block(frames, lip_wiggle_hz=10.0, lip_amp=2.0, pose_hz=1.0, pose_amp=2.0),
        face_block(frames),
        face_block(frames, lip_wiggle_hz=1.0, lip_amp=2.0, pose_hz=10.0, pose_amp=3.0),
    ]
    tracks = build_tracks(audio, faces)
    cfg = SelectionConfig(segment_len_s=2.0, stride_s=2.0, top_m=3)
    return tracks, cfg


def test_informativeness_examples():
    assert informativeness_score(1.0, 0.0, 1e-8) == 1e8
    assert informativeness_score(2.0, 1.0, 1e-8) == pytest.approx(2.0, rel=1e-7)
    assert informativeness_score(0.0, 0.42) == 0.0


def test_high_diversity_low_motion_wins(three_window_fixture):
    (audio, landmarks), cfg = three_window_fixture
    report = run_isexplore(audio, landmarks, cfg)
    assert report.chosen.index == 1
    best, _ = brute_force_best(audio, landmarks, 2.0, 2.0, 0.25, 0.5, 0.5, 1e-8)
    assert report.chosen.start_frame == best


def test_matches_exhaustive_oracle_on_random_fixture(rng):
    frames = 300
    audio = AudioFeatureTrack.from_data(rng.standard_normal((frames, 8)).astype(np.float32), FPS)
    base = np.full((frames, 68, 2), 100.0) + rng.standard_normal((frames, 68, 2))
    landmarks = LandmarkTrack.from_data(base.astype(np.float32), FPS)
    cfg = SelectionConfig(segment_len_s=3.0, stride_s=1.0, top_m=10**6)
    report = run_isexplore(audio, landmarks, cfg)
    best, scores = brute_force_best(audio, landmarks, 3.0, 1.0, 0.25, 0.5, 0.5, 1e-8)
    assert len(scores) == len(report.candidates)
    assert report.chosen.start_frame == best


def test_top_m_restricts_spectral_stage(three_window_fixture):
    (audio, landmarks), cfg = three_window_fixture
    report = run_isexplore(audio, landmarks, dataclasses.replace(cfg, top_m=1))
    assert all(score.diversity is not None for score in report.candidates)
    evaluated = [score for score in report.candidates if score.mc is not None]
    assert len(evaluated) == 1
    assert evaluated[0].informativeness is not None
    # the kept candidate is the diversity argmax
    assert evaluated[0].window.index == 1


def test_bit_identical_tie_breaks_to_earliest(rng):
    frames = 50
    block_audio = rng.standard_normal((frames, 8))
    quiet = 0.05 * rng.standard_normal((frames, 8))
    face = face_block(frames, lip_wiggle_hz=4.0, lip_amp=1.0)
    audio, landmarks = build_tracks([block_audio, quiet, block_audio], [face, face, face])
    cfg = SelectionConfig(segment_len_s=2.0, stride_s=2.0, top_m=3)
    report = run_isexplore(audio, landmarks, cfg)
    first = report.candidates[0]
    twins = [s for s in report.candidates if s.window.index in (0, 2)]
    assert twins[0].informativeness == twins[1].informativeness
    assert first.window.index == 0


def test_ranks_are_a_permutation(three_window_fixture):
    (audio, landmarks), cfg = three_window_fixture
    for strategy in StrategyKind:
        report = run_strategy(audio, landmarks, dataclasses.replace(cfg, strategy=strategy))
        ranks = sorted(score.rank for score in report.candidates)
        assert ranks == [1, 2, 3]
        assert report.candidates[0].rank == 1
        assert report.candidates[0].window == report.chosen


def test_strategy_orderings(three_window_fixture):
    (audio, landmarks), cfg = three_window_fixture

    def chosen(strategy):
        return run_strategy(
            audio, landmarks, dataclasses.replace(cfg, strategy=strategy)
        ).chosen.index

    assert chosen(StrategyKind.AUDIO_ONLY) == 1  # max diversity
    assert chosen(StrategyKind.LIP_ONLY) == 1  # still mouth
    assert chosen(StrategyKind.CAMERA_ONLY) == 1  # still head
    assert chosen(StrategyKind.LIP_AND_CAMERA) == 1


def test_random_strategy_is_seeded(three_window_fixture):
    (audio, landmarks), cfg = three_window_fixture
    picks = set()
    for seed in range(20):
        c = dataclasses.replace(cfg, strategy=StrategyKind.RANDOM, seed=seed)
        first = run_strategy(audio, landmarks, c).chosen.index
        again = run_strategy(audio, landmarks, c).chosen.index
        assert first == again
        picks.add(first)
    assert len(picks) > 1


def test_exhaustive_isexplore_dominates_other_strategies(rng):
    # with top_m covering the pool, no other deterministic strategy can pick
    # a window with higher informativeness
    for seed in (0, 5, 9):
        audio, landmarks = (None, None)
        gen = np.random.default_rng(seed)
        frames = 400
        audio = AudioFeatureTrack.from_data(
            (gen.uniform(0.3, 2.0) * gen.standard_normal((frames, 6))).astype(np.float32), FPS
        )
        base = np.full((frames, 68, 2), 100.0) + gen.standard_normal((frames, 68, 2))
        landmarks = LandmarkTrack.from_data(base.astype(np.float32), FPS)
        cfg = SelectionConfig(segment_len_s=3.0, stride_s=1.0, top_m=10**9)
        _, scores = brute_force_best(audio, landmarks, 3.0, 1.0, 0.25, 0.5, 0.5, 1e-8)
        full = run_isexplore(audio, landmarks, cfg)
        best_score = scores[full.chosen.start_frame]
        for strategy in StrategyKind:
            if strategy in (StrategyKind.ISEXPLORE, StrategyKind.RANDOM):
                continue
            other = run_strategy(audio, landmarks, dataclasses.replace(cfg, strategy=strategy))
            assert best_score >= scores[other.chosen.start_frame] - 1e-12


def test_lip_and_camera_with_zero_pose_weight_equals_lip_only(rng):
    frames = 200
    audio = AudioFeatureTrack.from_data(rng.standard_normal((frames, 4)).astype(np.float32), FPS)
    base = np.full((frames, 68, 2), 100.0) + rng.standard_normal((frames, 68, 2))
    landmarks = LandmarkTrack.from_data(base.astype(np.float32), FPS)
    cfg = SelectionConfig(segment_len_s=2.0, stride_s=1.0)
    lip = run_strategy(
        audio, landmarks, dataclasses.replace(cfg, strategy=StrategyKind.LIP_ONLY)
    )
    combo = run_strategy(
        audio,
        landmarks,
        dataclasses.replace(cfg, strategy=StrategyKind.LIP_AND_CAMERA, w_lip=1.0, w_pose=0.0),
    )
    assert lip.chosen == combo.chosen


def test_chosen_invariant_under_feature_scaling(three_window_fixture):
    (audio, landmarks), cfg = three_window_fixture
    base = run_isexplore(audio, landmarks, cfg)
    for alpha in (0.5, 3.0, 10.0):
        scaled = AudioFeatureTrack.from_data(alpha * audio.data, FPS)
        report = run_isexplore(scaled, landmarks, cfg)
        assert report.chosen == base.chosen
        for got, want in zip(report.candidates, base.candidates):
            # float32 storage bounds the achievable relative accuracy
            assert got.diversity == pytest.approx(alpha * want.diversity, rel=1e-6)


def test_track_mismatch(rng):
    audio = AudioFeatureTrack.from_data(rng.standard_normal((100, 4)).astype(np.float32), FPS)
    lms = np.full((100, 68, 2), 50.0, dtype=np.float32)
    with pytest.raises(TrackMismatchError):
        run_isexplore(audio, LandmarkTrack.from_data(lms, 30.0), SelectionConfig(segment_len_s=2.0))
    with pytest.raises(TrackMismatchError):
        run_isexplore(
            audio,
            LandmarkTrack.from_data(lms[:99], FPS),
            SelectionConfig(segment_len_s=2.0),
        )
    with pytest.raises(TrackMismatchError):
        run_isexplore(audio, audio, SelectionConfig(segment_len_s=2.0))


def test_insufficient_duration(rng):
    audio = AudioFeatureTrack.from_data(rng.standard_normal((100, 4)).astype(np.float32), FPS)
    lms = LandmarkTrack.from_data(np.full((100, 68, 2), 50.0, dtype=np.float32), FPS)
    with pytest.raises(InsufficientDurationError):
        run_isexplore(audio, lms, SelectionConfig(segment_len_s=10.0))


def test_threads_do_not_change_results(three_window_fixture):
    (audio, landmarks), cfg = three_window_fixture
    solo = run_isexplore(audio, landmarks, cfg, threads=1)
    pooled = run_isexplore(audio, landmarks, cfg, threads=8)
    assert report_to_json(solo) == report_to_json(pooled)


class TestReportJson:
    def test_shape_and_keys(self, three_window_fixture):
        (audio, landmarks), cfg = three_window_fixture
        report = run_isexplore(audio, landmarks, cfg)
        doc = json.loads(report_to_json(report))
        assert set(doc) == {"config", "candidates", "chosen", "timings"}
        assert doc["config"]["segment_len_s"] == 2.0
        assert doc["config"]["strategy"] == "isexplore"
        assert doc["config"]["epsilon"] == 1e-8
        row = doc["candidates"][0]
        assert list(row) == [
            "index", "start_s", "end_s", "D", "mc_lip", "mc_pose", "mc", "I", "rank",
        ]
        assert doc["chosen"]["index"] == report.chosen.index
        assert doc["timings"] == {
            "candidates_ms": None,
            "diversity_ms": None,
            "spectral_ms": None,
            "total_ms": None,
        }

    def test_absent_metrics_serialize_as_null(self, three_window_fixture):
        (audio, landmarks), cfg = three_window_fixture
        report = run_isexplore(audio, landmarks, dataclasses.replace(cfg, top_m=1))
        doc = json.loads(report_to_json(report))
        pruned = [row for row in doc["candidates"] if row["I"] is None]
        assert len(pruned) == 2
        assert all(row["mc"] is None and row["D"] is not None for row in pruned)

    def test_serialization_is_deterministic(self, three_window_fixture):
        (audio, landmarks), cfg = three_window_fixture
        a = report_to_json(run_isexplore(audio, landmarks, cfg))
        b = report_to_json(run_isexplore(audio, landmarks, cfg))
        assert a == b

    def test_floats_roundtrip_through_17_digits(self, three_window_fixture):
        (audio, landmarks), cfg = three_window_fixture
        report = run_isexplore(audio, landmarks, cfg)
        doc = json.loads(report_to_json(report))
        for row, score in zip(
            sorted(doc["candidates"], key=lambda r: r["index"]),
            sorted(report.candidates, key=lambda s: s.window.index),
        ):
            assert row["D"] == score.diversity  # 17 significant digits are lossless

    def test_timings_can_be_embedded(self, three_window_fixture):
        (audio, landmarks), cfg = three_window_fixture
        report = run_isexplore(audio, landmarks, cfg)
        doc = json.loads(report_to_json(report, include_timings=True))
        assert doc["timings"]["total_ms"] >= 0.0
