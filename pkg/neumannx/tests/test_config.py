"""Test the `config` module."""
from pathlib import Path

import pytest

from neumannx.config import Config, QuadratureProfiles, add_profiles, enable_profile
from neumannx.constants import NEUMANNX_PATH, WORKERS_ENV_VAR
from neumannx.quadrature.core import QuadratureSpec, resolve_spec
from neumannx.tests._helpers import get_test_name
from neumannx.util.workers import default_worker_count, parallel_map

installed = NEUMANNX_PATH / "profiles" / "quadrature.yaml"


@pytest.fixture
def isolated_config(monkeypatch):
    """Restore the global configuration after a test."""
    monkeypatch.setattr(Config, "_profiles", dict(Config._profiles))
    monkeypatch.setattr(Config, "_active", Config._active)
    monkeypatch.setattr(Config, "_workers", Config._workers)


class TestQuadratureProfiles:
    """Test the profile files."""

    @staticmethod
    @pytest.mark.parametrize("path", [installed, installed.as_posix()])
    def test_init(path):
        """Test reading the shipped profiles."""
        profiles = QuadratureProfiles(path)
        assert profiles.names == ["default", "fast", "fine"]
        assert profiles.source == Path(path)
        assert profiles["default"] == QuadratureSpec()
        assert profiles["fast"].rel_tol == 1e-8
        assert profiles["fine"].domain_truncation == 400.0

    @staticmethod
    @pytest.mark.parametrize(
        "content, name",
        [
            ("- 1\n- 2\n", "# not a mapping"),
            ("broken: 3\n", "# profile not a mapping"),
            ("broken:\n  tolerance: 1.0\n", "# unknown field"),
            ("broken:\n  rel_tol: -1.0\n", "# invalid value"),
        ],
        ids=get_test_name,
    )
    def test_init_invalid(tmp_path, content, name):
        """Test that malformed files are rejected."""
        path = tmp_path / "profiles.yaml"
        path.write_text(content)
        with pytest.raises(ValueError):
            QuadratureProfiles(path)


class TestConfig:
    """Test the neumannx configuration object."""

    @staticmethod
    def test_installed_profiles():
        """Test that the shipped profiles are registered on import."""
        assert Config.quadrature_spec("default") == QuadratureSpec()
        assert Config.quadrature_spec("fine").limit == 1000

    @staticmethod
    @pytest.mark.usefixtures("isolated_config")
    def test_enable_profile():
        """Test that the active profile is used when no spec is passed."""
        enable_profile("fast")
        assert Config.active_profile() == "fast"
        assert resolve_spec() == Config.quadrature_spec("fast")
        explicit = QuadratureSpec(rel_tol=1e-6)
        assert resolve_spec(explicit) is explicit

    @staticmethod
    @pytest.mark.usefixtures("isolated_config")
    def test_enable_unknown_profile():
        """Test that unknown profiles are rejected and the selection is kept."""
        with pytest.raises(KeyError):
            enable_profile("coarse")
        assert Config.active_profile() == "default"

    @staticmethod
    @pytest.mark.usefixtures("isolated_config")
    def test_add_profiles(tmp_path):
        """Test registering a user profile file."""
        path = tmp_path / "profiles.yaml"
        path.write_text("coarse:\n  rel_tol: 1.0e-6\n  limit: 50\n")
        add_profiles(path)
        enable_profile("coarse")
        assert resolve_spec().limit == 50
        assert Config.quadrature_spec("default") == QuadratureSpec()

    @staticmethod
    @pytest.mark.usefixtures("isolated_config")
    def test_workers(monkeypatch):
        """Test the worker setting and its environment default."""
        monkeypatch.setenv(WORKERS_ENV_VAR, "3")
        Config.set_workers(None)
        assert Config.workers() == 3
        Config.set_workers(2)
        assert Config.workers() == 2
        with pytest.raises(ValueError):
            Config.set_workers(0)


# --------------------------------------------------------------------------------------
# workers
# --------------------------------------------------------------------------------------


class TestWorkers:
    """Test the worker pool helpers."""

    @staticmethod
    @pytest.mark.parametrize("value", ["zero", "0", "-2"])
    def test_invalid_env(monkeypatch, value):
        """Test that the environment variable has to be a positive integer."""
        monkeypatch.setenv(WORKERS_ENV_VAR, value)
        with pytest.raises(ValueError):
            default_worker_count()

    @staticmethod
    def test_default(monkeypatch):
        """Test the fallback to the number of cores."""
        monkeypatch.delenv(WORKERS_ENV_VAR, raising=False)
        assert default_worker_count() >= 1

    @staticmethod
    @pytest.mark.parametrize("workers", [1, 2])
    def test_parallel_map(workers):
        """Test that results keep the order of the items."""
        assert parallel_map(abs, [-3, 1, -2, 0], workers) == [3, 1, 2, 0]
