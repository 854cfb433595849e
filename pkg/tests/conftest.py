import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "slimex",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "slimex"))


@pytest.fixture(autouse=True)
def _output_root(tmp_path, monkeypatch):
    # keep run artefacts out of the working tree
    monkeypatch.setenv("SLIMEX_OUTPUT_ROOT", str(tmp_path / "out"))
