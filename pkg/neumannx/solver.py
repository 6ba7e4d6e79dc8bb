"""Collocation solver for the nonlocal Neumann problem on Ω = (0, 1).

The Neumann condition is eliminated by the regional reformulation

``L_Ω u(x) = c_s p.v.∫_Ω (u(x)-u(y)) |x-y|^{-1-2s} dy + ∫_Ω (u(x)-u(y)) k_Ω(x, y) dy``

with the symmetric interval kernel ``k_Ω``. Fields are piecewise constant on a
graded mesh and collocated at the cell midpoints.
"""
from __future__ import annotations

import math
import warnings
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
import sympy
import xarray as xr
from scipy import linalg, optimize

from neumannx.exceptions import (
    InsufficientResolution,
    ProjectionWarning,
    SingularSystem,
)
from neumannx.quadrature.core import QuadratureSpec, gauss_legendre, resolve_spec
from neumannx.quadrature.operator import (
    apply_fractional_laplacian_power,
    apply_L_power,
)
from neumannx.symbols import (
    OrderLike,
    as_order,
    c_beta,
    f_symbol,
    fractional_laplacian_symbol,
)

__all__ = [
    "GradedMesh",
    "SolverField",
    "BoundaryFit",
    "SourceExpression",
    "SOURCE_PRESETS",
    "kernel_omega",
    "assemble_operator",
    "symmetry_defect",
    "solve_neumann",
    "fit_boundary_exponent",
    "normal_derivative_check",
    "oscillatory_residual",
]

MIN_CELLS = 16


@dataclass(frozen=True, eq=False)
class GradedMesh:
    """A mesh of (0, 1) refined algebraically towards both endpoints.

    Use `GradedMesh.create` to build one. The nodes of the left half are
    ``½ (j/n)^γ`` and the right half is the mirror image.
    """

    nodes: np.ndarray
    grading: float

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        if nodes[0] != 0.0 or nodes[-1] != 1.0 or np.any(np.diff(nodes) <= 0):
            raise ValueError("Mesh nodes must increase from 0 to 1.")
        object.__setattr__(self, "nodes", nodes)

    @classmethod
    def create(cls, n_cells: int, grading: float = 3.0) -> GradedMesh:
        """Create a symmetric graded mesh with an even number of cells.

        Examples
        --------
        >>> mesh = GradedMesh.create(4, grading=2.0)
        >>> mesh.nodes.tolist()
        [0.0, 0.125, 0.5, 0.875, 1.0]

        """
        if n_cells < 2 or n_cells % 2:
            raise ValueError(f"The number of cells must be even and >= 2, got {n_cells}.")
        if grading < 1.0:
            raise ValueError(f"The grading exponent must be >= 1, got {grading}.")
        half = n_cells // 2
        left = 0.5 * (np.arange(half + 1) / half) ** grading
        return cls(np.concatenate([left, 1.0 - left[-2::-1]]), float(grading))

    @property
    def n_cells(self) -> int:
        return self.nodes.size - 1

    @property
    def midpoints(self) -> np.ndarray:
        return 0.5 * (self.nodes[1:] + self.nodes[:-1])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.nodes)

    def distance(self, endpoint: str) -> np.ndarray:
        """Get the distance of the midpoints to ``"left"`` or ``"right"``."""
        if endpoint == "left":
            return self.midpoints
        if endpoint == "right":
            return 1.0 - self.midpoints
        raise ValueError(f"endpoint must be 'left' or 'right', got '{endpoint}'.")


@dataclass(eq=False)
class SolverField:
    """Collocation values of a field on a `GradedMesh`."""

    mesh: GradedMesh
    values: np.ndarray
    mean_zero: bool = False
    s: float = None
    diagnostics: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    @classmethod
    def from_function(
        cls, mesh: GradedMesh, func: Callable[[np.ndarray], np.ndarray], s: float = None
    ) -> SolverField:
        """Sample ``func`` at the midpoints of ``mesh``."""
        values = np.broadcast_to(func(mesh.midpoints), mesh.midpoints.shape)
        return cls(mesh, np.array(values, dtype=float), s=s)

    @property
    def mean(self) -> float:
        """Get ``∫_Ω u`` by the midpoint rule."""
        return float(np.dot(self.values, self.mesh.widths))

    @property
    def data(self) -> xr.DataArray:
        """Get the field as `xarray.DataArray` over the midpoints."""
        return xr.DataArray(
            self.values,
            dims=["x"],
            coords={"x": self.mesh.midpoints, "width": ("x", self.mesh.widths)},
            attrs={"s": self.s, "grading": self.mesh.grading},
            name="u",
        )

    def to_dataframe(self) -> pd.DataFrame:
        """Get `data` as table with the columns ``x``, ``width`` and ``u``."""
        frame = self.data.to_dataframe().reset_index()
        return frame[["x", "width", "u"]]


@dataclass(frozen=True)
class BoundaryFit:
    """Fitted model ``c0 + c1 d + d^a (A cos(b log d) + B sin(b log d))``."""

    exponent: float
    r2: float
    frequency: float
    nodes: int

    def to_dict(self) -> dict:
        return dict(
            exponent=self.exponent, r2=self.r2, frequency=self.frequency, nodes=self.nodes
        )


class SourceExpression:
    """A source term ``h(x)`` in sympy syntax."""

    def __init__(self, expression: sympy.Expr | str):
        """Construct a source term.

        Parameters
        ----------
        expression :
            A sympy expression or a string that can be evaluated as one. The only
            free symbol allowed is ``x``.

        """
        x = sympy.Symbol("x")
        if not isinstance(expression, sympy.Expr):
            expression = sympy.sympify(expression, locals={"x": x})
        if not isinstance(expression, sympy.Expr):
            raise TypeError("'expression' can't be converted to a sympy expression")
        unknown = expression.free_symbols - {x}
        if unknown:
            raise ValueError(f"Source terms may only depend on x, found {unknown}.")
        self._expression = expression
        self.function = sympy.lambdify(x, expression, ("numpy", "scipy"))

    def __repr__(self):
        return f"<SourceExpression>\n\t{self._expression!r}"

    @property
    def expression(self) -> sympy.Expr:
        return self._expression

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.broadcast_to(np.asarray(self.function(x), dtype=float), x.shape)


SOURCE_PRESETS: dict[str, SourceExpression] = {
    "linear": SourceExpression("x - 1/2"),
    "sine": SourceExpression("sin(2*pi*x)"),
}


# assembly -----------------------------------------------------------------------------


def _exterior_rule(t_min: float, t_max: float, nodes: int, panel: float = 0.5):
    """Composite Gauss-Legendre rule for ``∫ dt`` on ``[t_min, t_max]`` in ``log t``."""
    lo, hi = math.log(t_min), math.log(t_max)
    n_panels = max(1, int(math.ceil((hi - lo) / panel)))
    edges = np.linspace(lo, hi, n_panels + 1)
    u, w = zip(*(gauss_legendre(a, b, nodes) for a, b in zip(edges[:-1], edges[1:])))
    t = np.exp(np.concatenate(u))
    return t, np.concatenate(w) * t


def kernel_omega(
    s: OrderLike,
    x: np.ndarray,
    y: np.ndarray,
    t_min: float = None,
    t_max: float = 1e8,
    nodes: int = 8,
) -> np.ndarray:
    """Compute the interval correction kernel ``k_Ω(x, y)`` for Ω = (0, 1).

    ``k_Ω(x, y) = c_s ∫₀^∞ [P(x)P(y) + Q(x)Q(y)] / D(t) dt`` with
    ``P(x) = (x+t)^{-1-2s}``, ``Q(x) = (1-x+t)^{-1-2s}`` and
    ``D(t) = (t^{-2s} - (1+t)^{-2s})/(2s)``. The integrand separates in ``x`` and
    ``y``, so all pairs come from two matrix products. Both ends of the exterior
    integral beyond ``[t_min, t_max]`` are added from the leading asymptotics.

    Returns
    -------
    numpy.ndarray
        The matrix ``k_Ω(x_i, y_j)``, or a float for scalar arguments.

    """
    order = as_order(s)
    s = order.s
    scalar = np.ndim(x) == 0 and np.ndim(y) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if np.any((x <= 0) | (x >= 1)) or np.any((y <= 0) | (y >= 1)):
        raise ValueError("k_Ω is evaluated inside (0, 1) only.")
    if t_min is None:
        t_min = 1e-4 * min(x.min(), 1 - x.max(), y.min(), 1 - y.max())
    exponent = -1.0 - 2.0 * s

    t, w = _exterior_rule(t_min, t_max, nodes)
    weight = w * 2.0 * s * t ** (2.0 * s) / -np.expm1(-2.0 * s * np.log1p(1.0 / t))
    px, py = (x[:, None] + t) ** exponent, (y[:, None] + t) ** exponent
    qx, qy = (1.0 - x[:, None] + t) ** exponent, (1.0 - y[:, None] + t) ** exponent
    kernel = (px * weight) @ py.T + (qx * weight) @ qy.T

    kernel += t_max ** (-2.0 * s) / s
    near = np.outer(x**exponent, y**exponent) + np.outer(
        (1.0 - x) ** exponent, (1.0 - y) ** exponent
    )
    kernel += near * 2.0 * s * t_min ** (1.0 + 2.0 * s) / (1.0 + 2.0 * s)
    kernel *= order.c_1s
    if scalar:
        return float(kernel[0, 0])
    return kernel


def assemble_operator(
    s: OrderLike, mesh: GradedMesh, q: QuadratureSpec = None
) -> np.ndarray:
    """Assemble the collocation matrix of ``L_Ω`` on piecewise constant fields.

    Off-diagonal couplings are the exact cell integrals of ``c_s|x_i-y|^{-1-2s}``
    plus ``k_Ω(x_i, x_j)`` times the cell width. The width weighted couplings are
    symmetrised, so ``W A`` is symmetric with ``W = diag(widths)``. The diagonal is
    the negative row sum, so constants are annihilated.

    Raises
    ------
    InsufficientResolution
        For meshes with fewer than 16 cells.

    """
    order = as_order(s)
    q = resolve_spec(q)
    if mesh.n_cells < MIN_CELLS:
        raise InsufficientResolution(
            f"The solver needs at least {MIN_CELLS} cells, got {mesh.n_cells}."
        )
    s = order.s
    x = mesh.midpoints
    w = mesh.widths
    a, b = mesh.nodes[:-1], mesh.nodes[1:]

    d_near = np.minimum(np.abs(x[:, None] - a), np.abs(x[:, None] - b))
    np.fill_diagonal(d_near, 1.0)
    cells = d_near ** (-2.0 * s) * -np.expm1(-2.0 * s * np.log1p(w / d_near)) / (2 * s)

    nodes = 8 if q.rel_tol >= 1e-11 else 12
    coupling = order.c_1s * cells + kernel_omega(order, x, x, nodes=nodes) * w
    np.fill_diagonal(coupling, 0.0)

    weighted = w[:, None] * coupling
    weighted = 0.5 * (weighted + weighted.T)
    matrix = -weighted / w[:, None]
    np.fill_diagonal(matrix, weighted.sum(axis=1) / w)
    return matrix


def symmetry_defect(matrix: np.ndarray, mesh: GradedMesh) -> float:
    """Get ``‖WA - (WA)ᵀ‖_max / ‖WA‖_max``."""
    weighted = mesh.widths[:, None] * matrix
    return float(np.max(np.abs(weighted - weighted.T)) / np.max(np.abs(weighted)))


def solve_neumann(
    s: OrderLike,
    h: Callable[[np.ndarray], np.ndarray],
    mesh: GradedMesh,
    q: QuadratureSpec = None,
) -> SolverField:
    """Solve ``L_Ω u = h`` with ``∫_Ω u = 0``.

    The source is projected onto mean zero first, with a `ProjectionWarning` if
    its mean exceeds ``1e-10``. The singular system is bordered by the mean
    constraint.

    Raises
    ------
    SingularSystem
        If the bordered system is singular, i.e. the null space of the operator
        is larger than the constants.
    InsufficientResolution
        For meshes with fewer than 16 cells.

    """
    order = as_order(s)
    matrix = assemble_operator(order, mesh, q)
    w = mesh.widths
    rhs = np.array(
        np.broadcast_to(h(mesh.midpoints), mesh.midpoints.shape), dtype=float
    )
    field_warnings = []
    mean = float(np.dot(w, rhs))
    if abs(mean) > 1e-10 * max(1.0, float(np.max(np.abs(rhs)))):
        message = f"Source has mean {mean:.3e} and was projected onto mean zero."
        warnings.warn(message, ProjectionWarning, stacklevel=2)
        field_warnings.append(message)
    rhs = rhs - mean

    n = mesh.n_cells
    bordered = np.zeros((n + 1, n + 1))
    bordered[:n, :n] = w[:, None] * matrix
    bordered[:n, n] = w
    bordered[n, :n] = w
    extended = np.append(w * rhs, 0.0)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("error", linalg.LinAlgWarning)
            solution = linalg.solve(bordered, extended, assume_a="sym")
    except (linalg.LinAlgError, linalg.LinAlgWarning) as err:
        raise SingularSystem(f"The Neumann system is singular: {err}") from None

    values = solution[:n]
    scale = max(float(np.max(np.abs(rhs))), np.finfo(float).tiny)
    diagnostics = dict(
        n=n,
        grading=mesh.grading,
        s=order.s,
        residual=float(np.max(np.abs(matrix @ values - rhs)) / scale)
        if np.any(rhs)
        else 0.0,
        mean=float(np.dot(w, values)),
        symmetry_defect=symmetry_defect(matrix, mesh),
        source_mean=mean,
    )
    return SolverField(mesh, values, True, order.s, diagnostics, field_warnings)


# boundary behaviour -------------------------------------------------------------------


def _band(u: SolverField, endpoint: str, band: tuple[float, float]):
    if u.mesh.grading < 2.0:
        raise InsufficientResolution(
            f"Boundary fits need a grading exponent >= 2, got {u.mesh.grading}."
        )
    d = u.mesh.distance(endpoint)
    mask = (d >= band[0]) & (d <= band[1])
    if mask.sum() < 8:
        raise InsufficientResolution(
            f"Only {mask.sum()} nodes within distance {band} of the {endpoint} "
            "endpoint, at least 8 are needed."
        )
    order = np.argsort(d[mask])
    return d[mask][order], u.values[mask][order]


def _fit_residual(params, log_d, d, values, linear: bool):
    a, b = params
    columns = [np.ones_like(d)]
    if linear:
        columns.append(d)
    power = d**a
    columns += [power * np.cos(b * log_d), power * np.sin(b * log_d)]
    design = np.column_stack(columns)
    coefficients = np.linalg.lstsq(design, values, rcond=None)[0]
    return float(np.sum((design @ coefficients - values) ** 2))


def fit_boundary_exponent(
    u: SolverField,
    endpoint: str = "left",
    band: tuple[float, float] = (1e-4, 1e-1),
    linear: bool = True,
) -> BoundaryFit:
    """Fit the boundary exponent of ``u`` at one end of the interval.

    The model ``c0 + c1 d + d^a (A cos(b log d) + B sin(b log d))`` in the
    distance ``d`` to the endpoint is fitted over ``band``. The linear
    coefficients are eliminated by least squares, ``(a, b)`` is found by a grid
    scan of ``[0.05, 2.95] × [0, 3]`` refined with Nelder-Mead.

    Parameters
    ----------
    u :
        The field.
    endpoint :
        ``"left"`` or ``"right"``.
    band :
        Range of distances used in the fit.
    linear :
        Include the linear term ``c1 d``, needed when the exponent exceeds 1.

    Raises
    ------
    InsufficientResolution
        If the mesh grading is below 2 or fewer than 8 nodes lie in the band.

    """
    d, values = _band(u, endpoint, band)
    log_d = np.log(d)
    args = (log_d, d, values, linear)
    total = float(np.sum((values - values.mean()) ** 2))

    grid = [(a, b) for a in np.linspace(0.05, 2.95, 59) for b in np.linspace(0, 3, 31)]
    start = min(grid, key=lambda p: _fit_residual(p, *args))
    result = optimize.minimize(
        _fit_residual,
        start,
        args=args,
        method="Nelder-Mead",
        bounds=[(0.05, 2.95), (0.0, 3.0)],
        options=dict(xatol=1e-8, fatol=1e-30, maxiter=2000),
    )
    best = result.x if result.fun <= _fit_residual(start, *args) else np.array(start)
    rss = _fit_residual(best, *args)
    r2 = 1.0 - rss / total if total > 0 else 1.0
    return BoundaryFit(float(best[0]), float(r2), float(best[1]), int(d.size))


def normal_derivative_check(
    u: SolverField, endpoint: str = "left", band: tuple[float, float] = (0.0, 1e-1)
) -> float:
    """Get the boundary slope of ``u`` relative to its interior gradient.

    The slope is the difference quotient over the two band nodes closest to the
    endpoint, the interior scale is the largest difference quotient between
    midpoints in ``[0.1, 0.9]``. With the default band these are the two cells at
    the wall, so the slope is taken ever closer to the endpoint under refinement.
    """
    d, values = _band(u, endpoint, band)
    slope = abs((values[1] - values[0]) / (d[1] - d[0]))
    x = u.mesh.midpoints
    inner = (x >= 0.1) & (x <= 0.9)
    gradient = np.abs(np.diff(u.values[inner]) / np.diff(x[inner]))
    scale = float(gradient.max()) if gradient.size else 0.0
    if scale == 0.0:
        return 0.0 if slope == 0.0 else math.inf
    return float(slope / scale)


def oscillatory_residual(
    s: OrderLike,
    beta: complex,
    sample_points: Sequence[float] = (0.5, 1.0, 2.0),
    q: QuadratureSpec = None,
    operator: str = "neumann",
) -> float:
    """Measure how well ``Re x^β`` satisfies the homogeneity identity.

    For ``operator="neumann"`` the quadrature value of ``L(x^β)`` from
    `~neumannx.quadrature.apply_L_power` is compared with ``f(β) x^{β-2s}``. For a
    zero of the symbol the power ``Re x^β`` is an oscillatory solution and the
    residual is ``|L Re x^β|``. ``Re β > 2s`` is handled by the analytic tail
    continuation of the quadrature. ``operator="dirichlet"`` uses ``(-Δ)^s`` and
    ``f_{L,+}`` instead.

    Returns
    -------
    float
        ``max |Re(L x^β - f(β) x^{β-2s})| / (x^{Re β - 2s}·scale)`` over the
        sample points, with the sum of the moduli of the symbol's terms as scale.

    """
    order = as_order(s)
    q = resolve_spec(q)
    beta = complex(beta)
    fl_plus = fractional_laplacian_symbol(order, beta)
    if operator == "neumann":
        symbol = complex(f_symbol(order, beta))
        scale = abs(fl_plus) + 2.0 * order.s * order.c_1s * abs(c_beta(order, beta)) ** 2
        apply = apply_L_power
    elif operator == "dirichlet":
        symbol = fl_plus
        scale = abs(fl_plus) + order.c_1s / (2.0 * order.s)
        apply = apply_fractional_laplacian_power
    else:
        raise ValueError(f"operator must be 'neumann' or 'dirichlet', got '{operator}'.")

    residual = 0.0
    for x in sample_points:
        exact = symbol * x ** (beta - 2.0 * order.s)
        value = apply(order, beta, x, q)
        defect = abs((value - exact).real) / (x ** (beta.real - 2.0 * order.s) * scale)
        residual = max(residual, defect)
    return residual
