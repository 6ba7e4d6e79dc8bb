"""Classes and functions to configure the neumannx package."""
from __future__ import annotations

from pathlib import Path

import yaml

from neumannx.constants import NEUMANNX_PATH
from neumannx.quadrature.core import QuadratureSpec
from neumannx.types import types_path_like
from neumannx.util.workers import default_worker_count

__all__ = ["QuadratureProfiles", "Config", "add_profiles", "enable_profile"]


class QuadratureProfiles:
    """Stores a set of named quadrature profiles read from a YAML file."""

    def __init__(self, path: types_path_like):
        """Create a ``QuadratureProfiles`` instance.

        Parameters
        ----------
        path :
            Path to a YAML file mapping profile names to `QuadratureSpec` fields.

        """
        path = Path(path)
        with open(path, "r") as stream:
            content = yaml.load(stream, Loader=yaml.SafeLoader)
        if not isinstance(content, dict):
            raise ValueError(f"Profile file '{path}' does not contain a mapping.")

        self._source = path
        self._profiles: dict[str, QuadratureSpec] = {}
        for name, fields in content.items():
            if not isinstance(fields, dict):
                raise ValueError(f"Profile '{name}' in '{path}' is not a mapping.")
            try:
                self._profiles[name] = QuadratureSpec(**fields)
            except TypeError as err:
                raise ValueError(f"Invalid profile '{name}' in '{path}': {err}") from None

    @property
    def names(self) -> list[str]:
        """Get the profile names."""
        return list(self._profiles)

    @property
    def source(self) -> Path:
        """Get the file the profiles were read from."""
        return self._source

    def __getitem__(self, name: str) -> QuadratureSpec:
        return self._profiles[name]

    def items(self):
        """Iterate over ``(name, spec)`` pairs."""
        return self._profiles.items()


class Config:
    """Manages the global configuration."""

    _profiles: dict[str, QuadratureSpec] = {}
    _active: str = "default"
    _workers: int = None

    @staticmethod
    def add_profiles(profiles: QuadratureProfiles | types_path_like):
        """Register quadrature profiles.

        Parameters
        ----------
        profiles :
            A `QuadratureProfiles` instance or the path of a profile file. Existing
            profiles with the same name are replaced.

        """
        if not isinstance(profiles, QuadratureProfiles):
            profiles = QuadratureProfiles(profiles)
        Config._profiles.update(dict(profiles.items()))

    @staticmethod
    def enable_profile(name: str):
        """Select the quadrature profile used when no spec is passed explicitly.

        Parameters
        ----------
        name :
            Name of a registered profile

        """
        if name not in Config._profiles:
            raise KeyError(
                f"Unknown quadrature profile '{name}', "
                f"available: {sorted(Config._profiles)}"
            )
        Config._active = name

    @staticmethod
    def quadrature_spec(name: str = None) -> QuadratureSpec:
        """Get a quadrature profile, the active one if no name is given."""
        if not Config._profiles:
            Config.load_installed_profiles()
        return Config._profiles[Config._active if name is None else name]

    @staticmethod
    def active_profile() -> str:
        """Get the name of the active quadrature profile."""
        return Config._active

    @staticmethod
    def set_workers(workers: int = None):
        """Set the number of sweep workers, `None` restores the default."""
        if workers is not None and workers < 1:
            raise ValueError(f"The number of workers must be >= 1, got {workers}.")
        Config._workers = workers

    @staticmethod
    def workers() -> int:
        """Get the number of sweep workers."""
        if Config._workers is None:
            return default_worker_count()
        return Config._workers

    @staticmethod
    def load_installed_profiles():
        """Load the profiles shipped with the package."""
        Config.add_profiles(NEUMANNX_PATH / "profiles" / "quadrature.yaml")


def add_profiles(profiles: QuadratureProfiles | types_path_like):
    """Register quadrature profiles.

    Parameters
    ----------
    profiles :
        A `QuadratureProfiles` instance or the path of a profile file.

    """
    Config.add_profiles(profiles)


def enable_profile(name: str):
    """Select the quadrature profile used when no spec is passed explicitly.

    Parameters
    ----------
    name :
        Name of a registered profile

    """
    Config.enable_profile(name)
