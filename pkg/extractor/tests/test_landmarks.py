import numpy as np
import pytest

from isextract import (
    BrightCentroidDetector,
    extract_landmarks,
    landmarks_from_frames,
    render_clip,
)
from isextract.errors import FaceNotFoundError
from isextract.landmarks import TEMPLATE, TEMPLATE_MOUTH_OFFSET


def test_one_row_per_frame(clip_10s):
    path, truth = clip_10s
    track, stats = extract_landmarks(path)
    assert track.header.frame_count == truth["frame_count"]
    assert track.header.dim == 68
    assert stats.failed_frames == 0


def test_recovered_centers_match_rendered_geometry(clip_short):
    path, truth = clip_short
    track, _ = extract_landmarks(path)
    mouth_centers = track.data[:, 48:, :].astype(np.float64).mean(axis=1)
    recovered = mouth_centers - TEMPLATE_MOUTH_OFFSET
    # detector tolerance for the centroid backend: < 1 px
    err = np.linalg.norm(recovered - truth["centers"], axis=1)
    assert err.max() < 1.0


def test_template_has_the_68_point_layout():
    assert TEMPLATE.shape == (68, 2)
    # mouth indices 48..67 form a ring around their own center
    mouth = TEMPLATE[48:]
    radii = np.linalg.norm(mouth - mouth.mean(axis=0), axis=1)
    assert radii.min() > 0


def test_mid_clip_failures_are_forward_filled(tmp_path):
    path = tmp_path / "gaps.avi"
    render_clip(path, duration_s=4.0, blank_frames=(40, 41))
    track, stats = extract_landmarks(path)
    assert stats.failed_frames == 2
    assert stats.leading_backfilled == 0
    assert np.array_equal(track.data[40], track.data[39])
    assert np.array_equal(track.data[41], track.data[39])
    assert not np.array_equal(track.data[42], track.data[39])


def test_leading_failures_are_backfilled(tmp_path):
    path = tmp_path / "lead.avi"
    render_clip(path, duration_s=4.0, blank_frames=(0, 1))
    track, stats = extract_landmarks(path)
    assert stats.leading_backfilled == 2
    assert np.array_equal(track.data[0], track.data[2])
    assert np.array_equal(track.data[1], track.data[2])


def test_faceless_clip_raises(tmp_path):
    path = tmp_path / "dark.avi"
    n = 50
    render_clip(path, duration_s=2.0, blank_frames=tuple(range(n)))
    with pytest.raises(FaceNotFoundError):
        extract_landmarks(path)


def test_failure_rate_above_five_percent_raises(tmp_path):
    path = tmp_path / "flaky.avi"
    render_clip(path, duration_s=4.0, blank_frames=tuple(range(10, 17)))  # 7/100
    with pytest.raises(FaceNotFoundError):
        extract_landmarks(path)


def test_detector_returns_none_on_black_frame():
    detector = BrightCentroidDetector()
    assert detector.detect(np.zeros((32, 32, 3), np.uint8)) is None


def test_detector_shape_contract():
    class BadDetector:
        def detect(self, frame):
            return np.zeros((5, 2))

    frames = [np.full((16, 16, 3), 255, np.uint8)]
    with pytest.raises(ValueError):
        landmarks_from_frames(frames, BadDetector())
