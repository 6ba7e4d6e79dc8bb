"""
neumannx - Mellin symbols of the one-dimensional fractional Neumann problem
=========================================================================

The neumannx package evaluates the Mellin symbol of the regional Neumann operator on
the half-line, certifies its zeros with the argument principle and checks the
predicted boundary exponents with a finite-volume solver on the interval.

**Symbols**

.. autosummary::
    :toctree: _autosummary
    :caption: Symbols

    f_symbol
    F_entire
    g_aux
    c_beta

**Zeros**

.. autosummary::
    :toctree: _autosummary
    :caption: Zeros
    :template: class-template.rst

    StripWindow
    compute_B0
    isolate_zeros
    winding_number

**Solver**

.. autosummary::
    :toctree: _autosummary
    :caption: Solver
    :template: class-template.rst

    GradedMesh
    SolverField
    solve_neumann
    fit_boundary_exponent

**Full API Reference**

.. autosummary::
    :toctree: _autosummary
    :caption: Full API Reference
    :template: module-template.rst
    :recursive:

    constants
    exceptions
    special_functions
    symbols
    quadrature
    mellin
    roots
    solver
    util

"""
# isort:skip_file
import warnings

try:
    from ._version import __version__
except ModuleNotFoundError:  # pragma: no cover
    __version__ = None
    warnings.warn(
        "Using local neumannx package files without version information.\n"
        "Consider running 'pip install -e .' in the neumannx root repository",
        category=UserWarning,
    )

# constants and exceptions have no internal deps
import neumannx.constants
import neumannx.exceptions

import neumannx.util
import neumannx.special_functions
import neumannx.symbols
import neumannx.quadrature
import neumannx.config
import neumannx.mellin
import neumannx.roots
import neumannx.solver

from neumannx.config import Config
from neumannx.symbols import F_entire, c_beta, f_symbol, g_aux
from neumannx.roots import StripWindow, compute_B0, isolate_zeros, winding_number
from neumannx.solver import (
    GradedMesh,
    SolverField,
    fit_boundary_exponent,
    solve_neumann,
)

__all__ = (
    "Config",
    "F_entire",
    "GradedMesh",
    "SolverField",
    "StripWindow",
    "c_beta",
    "compute_B0",
    "constants",
    "exceptions",
    "f_symbol",
    "fit_boundary_exponent",
    "g_aux",
    "isolate_zeros",
    "mellin",
    "quadrature",
    "roots",
    "solve_neumann",
    "solver",
    "special_functions",
    "symbols",
    "util",
    "winding_number",
)

neumannx.config.Config.load_installed_profiles()
del warnings
