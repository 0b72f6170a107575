import numpy as np
import pytest

from isexplore import AudioFeatureTrack, LandmarkTrack


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_audio_track(rng, frames=250, dim=8, fps=25.0) -> AudioFeatureTrack:
    return AudioFeatureTrack.from_data(
        rng.standard_normal((frames, dim)).astype(np.float32), fps
    )


def random_landmark_track(rng, frames=250, fps=25.0) -> LandmarkTrack:
    base = np.full((frames, 68, 2), 100.0)
    wobble = rng.standard_normal((frames, 68, 2))
    return LandmarkTrack.from_data((base + wobble).astype(np.float32), fps)


@pytest.fixture
def audio_track(rng):
    return random_audio_track(rng)


@pytest.fixture
def landmark_track(rng):
    return random_landmark_track(rng)
