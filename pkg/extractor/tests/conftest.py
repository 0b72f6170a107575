import pytest

from isextract import render_clip


@pytest.fixture(scope="session")
def clip_10s(tmp_path_factory):
    path = tmp_path_factory.mktemp("clips") / "clip10.avi"
    truth = render_clip(path, duration_s=10.0, fps=25.0)
    return path, truth


@pytest.fixture(scope="session")
def clip_short(tmp_path_factory):
    path = tmp_path_factory.mktemp("clips") / "short.avi"
    truth = render_clip(path, duration_s=2.0, fps=25.0)
    return path, truth
