"""Define constants for global library use."""
from pathlib import Path as _Path

NEUMANNX_PATH = _Path(__file__).parent.resolve()

SCHEMA_VERSION = "0.1.0"
"""Version string written into every JSON report and CSV header comment."""

GAMMA_POLE_TOL = 1e-12
"""Distance to a non-positive integer below which Gamma-type functions raise."""
SYMBOL_POLE_TOL = 1e-9
"""Distance in β below which a Mellin symbol is reported as a pole."""

EXCLUSION_RADIUS = 0.02
"""Radius of the discs around the trivial zeros 0 and 2s-1."""
CERTIFIED_BOX_RADIUS = 1e-6
"""Half width of the final box that certifies an isolated zero."""

WORKERS_ENV_VAR = "NEUMANNX_WORKERS"
"""Environment variable overriding the number of sweep workers."""

__all__ = [
    "NEUMANNX_PATH",
    "SCHEMA_VERSION",
    "GAMMA_POLE_TOL",
    "SYMBOL_POLE_TOL",
    "EXCLUSION_RADIUS",
    "CERTIFIED_BOX_RADIUS",
    "WORKERS_ENV_VAR",
]
