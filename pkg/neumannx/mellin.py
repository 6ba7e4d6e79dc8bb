"""Numerical Mellin transforms and checks of the Mellin calculus of the operator.

The transform is ``M[u](z) = ∫₀^∞ x^{z-1} u(x) dx`` and its ``c``-inverse is
``M⁻¹_c[φ](x) = (1/2π) ∫ φ(c+it) x^{-c-it} dt``. Test profiles are holomorphic in
the strip ``|Re z| < M`` and decay along vertical lines, so the inverse does not
depend on ``c`` inside the strip.
"""
from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, replace

import numpy as np

from neumannx.exceptions import QuadratureNotConverged
from neumannx.quadrature.core import (
    QuadratureSpec,
    gauss_legendre,
    integrate_complex,
    log_moment,
    power_log_tail,
    resolve_spec,
)
from neumannx.quadrature.operator import TestFunction, apply_L_test
from neumannx.symbols import OrderLike, as_order, f_symbol

__all__ = [
    "TestProfile",
    "gaussian_profile",
    "contour_truncation",
    "mellin_transform",
    "inverse_mellin",
    "InverseMellinField",
    "profile_derivative",
    "dirac_pairing_check",
    "mellin_magic_check",
    "plancherel_check",
]

_log = logging.getLogger(__name__)

# |log x| up to which the user contour is used by InverseMellinField
_CENTER = 4.0
# |log x| resolved by the Gauss-Legendre rules of the outer contours
_LOG_RANGE = 40.0


@dataclass(frozen=True)
class TestProfile:
    """A test function on the Mellin side.

    Parameters
    ----------
    identifier :
        A name for reports.
    evaluator :
        Vectorised holomorphic function ``z ↦ φ(z)``.
    strip_half_width :
        The profile is holomorphic for ``|Re z| < strip_half_width``.
    decay_order :
        ``|φ(z)| ≤ C (1+|z|)^{-m}`` on the strip with ``m = decay_order ≥ 2``.
    real_on_axis :
        ``φ(conj z) = conj φ(z)``, so that inverse transforms are real.

    """

    __test__ = False

    identifier: str
    evaluator: Callable[[np.ndarray], np.ndarray]
    strip_half_width: float
    decay_order: int
    real_on_axis: bool = True

    def __post_init__(self):
        if self.decay_order < 2:
            raise ValueError(f"decay_order must be >= 2, got {self.decay_order}.")
        if not self.strip_half_width > 0:
            raise ValueError("strip_half_width must be positive.")

    def __call__(self, z):
        return self.evaluator(np.asarray(z, dtype=complex))

    def scaled(self, factor: complex) -> TestProfile:
        """Return ``factor·φ``."""
        evaluator = self.evaluator
        return replace(
            self,
            identifier=f"{factor}*{self.identifier}",
            evaluator=lambda z: factor * evaluator(z),
            real_on_axis=self.real_on_axis and np.imag(factor) == 0,
        )

    def check_contour(self, c: float):
        """Raise a `ValueError` if ``Re z = c`` is not inside the strip."""
        if not abs(c) < self.strip_half_width:
            raise ValueError(
                f"The contour Re z = {c} is not inside the strip "
                f"|Re z| < {self.strip_half_width} of profile '{self.identifier}'."
            )


def gaussian_profile() -> TestProfile:
    """Get the default profile ``φ₀(z) = exp(z² - 4)``.

    On the line ``Re z = c`` it is bounded by ``e^{c²-4} e^{-t²}``, so it decays
    faster than any power. Its inverse transform is
    ``e^{-4} e^{-(log x)²/4} / (2√π)`` for every admissible contour.

    Examples
    --------
    >>> phi = gaussian_profile()
    >>> abs(complex(phi(2.0)) - 1.0) < 1e-15
    True

    """

    def evaluator(z):
        return np.exp(np.square(z) - 4.0)

    return TestProfile("gaussian", evaluator, strip_half_width=4.0, decay_order=10)


def contour_truncation(
    profile: TestProfile, c: float, tol: float, start: float = 4.0, cap: float = 1e4
) -> float:
    """Get ``T`` with ``|φ(c ± iT)| ≤ tol``.

    Raises
    ------
    QuadratureNotConverged
        If the profile has not decayed to ``tol`` at ``|t| = cap``.

    """
    T = start
    while max(abs(complex(profile(c + 1j * T))), abs(complex(profile(c - 1j * T)))) > tol:
        T *= 1.25
        if T > cap:
            raise QuadratureNotConverged(
                f"Profile '{profile.identifier}' does not decay below {tol:.1e} "
                f"on Re z = {c} for |Im z| <= {cap:g}."
            )
    return T


# transform ----------------------------------------------------------------------------


def _edge_exponent(w, x_edge: float, step: float, known: complex = None) -> complex:
    """Get the exponent of ``w(x) ≈ x^a`` near ``x_edge``."""
    if known is not None:
        return complex(known)
    inner = complex(w(x_edge * math.exp(step)))
    outer = complex(w(x_edge))
    if inner == 0:
        return 0j
    return np.log(outer / inner) / (-step)


def _edge_tail(w, z: complex, x_edge: float, side: str, known: complex, q):
    """Add the algebraic tail of ``∫ x^{z-1} w(x) dx`` beyond ``x_edge``."""
    value = complex(w(x_edge))
    if abs(value) * x_edge ** z.real <= 1e-3 * q.abs_tol:
        return 0j
    step = 1.0 if side == "zero" else -1.0
    a = _edge_exponent(w, x_edge, step, known)
    if known is None:
        return power_log_tail(value * x_edge ** (-a), 0.0, z + a, x_edge, side)
    other = x_edge * math.exp(step)
    v1 = value * x_edge ** (-a)
    v2 = complex(w(other)) * other ** (-a)
    c1 = (v2 - v1) / step
    c0 = v1 - c1 * math.log(x_edge)
    return power_log_tail(c0, c1, z + a, x_edge, side)


def mellin_transform(
    w: Callable[[float], complex],
    z: complex,
    q: QuadratureSpec = None,
    tail_exponents: tuple[complex, complex] = None,
    log_range: tuple[float, float] = (-30.0, 30.0),
) -> complex:
    """Compute ``M[w](z) = ∫₀^∞ x^{z-1} w(x) dx``.

    The integral is computed as ``∫ e^{zu} w(e^u) du`` over ``log_range`` with
    adaptive quadrature. Beyond the range ``w`` is modelled as a power ``x^a``
    whose exponent is estimated from two samples, or as ``x^a (c0 + c1 log x)``
    if the exponents at 0 and infinity are passed as ``tail_exponents``. Tails
    below the absolute tolerance are dropped.

    Parameters
    ----------
    w :
        The function on (0, ∞).
    z :
        The transform variable, inside the convergence strip of ``w``.
    q :
        Quadrature settings, the active profile if omitted.
    tail_exponents :
        Known exponents ``(a₀, a_∞)`` of ``w`` at 0 and at infinity.
    log_range :
        Bounds of the quadrature in ``log x``.

    Raises
    ------
    DivergentStrip
        If a tail exponent shows that the integral diverges at ``z``.
    QuadratureNotConverged
        If the adaptive quadrature fails.

    Examples
    --------
    >>> import math
    >>> abs(mellin_transform(lambda x: math.exp(-x), 2.5) - math.gamma(2.5)) < 1e-9
    True

    """
    q = resolve_spec(q)
    z = complex(z)
    u_lo, u_hi = log_range
    known_zero, known_infinity = tail_exponents or (None, None)

    def integrand(u: float) -> complex:
        return np.exp(z * u) * complex(w(math.exp(u)))

    value, _ = integrate_complex(
        integrand, u_lo, u_hi, q, points=[-10.0, -3.0, 0.0, 3.0, 10.0]
    )
    value += _edge_tail(w, z, math.exp(u_lo), "zero", known_zero, q)
    value += _edge_tail(w, z, math.exp(u_hi), "infinity", known_infinity, q)
    return complex(value)


def inverse_mellin(
    phi: TestProfile, x: float, c: float = 0.5, q: QuadratureSpec = None
) -> complex:
    """Compute ``M⁻¹_c[φ](x) = (1/2π) ∫ φ(c+it) x^{-c-it} dt``.

    The line integral is truncated where ``|φ|`` drops below ``10⁻³·abs_tol``.

    Raises
    ------
    ValueError
        If ``x <= 0`` or the contour leaves the strip of the profile.
    QuadratureNotConverged
        If the profile decays too slowly or the quadrature fails.

    """
    q = resolve_spec(q)
    if not x > 0:
        raise ValueError(f"The inverse transform is evaluated at x > 0, got x={x}.")
    phi.check_contour(c)
    T = contour_truncation(phi, c, 1e-3 * q.abs_tol)
    log_x = math.log(x)

    def integrand(t: float) -> complex:
        z = c + 1j * t
        return complex(phi(z)) * np.exp(-z * log_x) / (2.0 * math.pi)

    value, _ = integrate_complex(
        integrand, -T, T, q, points=[0.0], real_valued=phi.real_on_axis
    )
    return complex(value)


class InverseMellinField:
    """The inverse transform ``u = M⁻¹[φ]`` as vectorised function on (0, ∞).

    The line integral is discretised with fixed Gauss-Legendre rules, which gives
    ``u``, ``u'`` and ``u''`` for whole arrays at once. Near ``x = 1`` the contour
    ``Re z = c`` is used. For ``x < e^{-4}`` and ``x > e^{4}`` the contour is moved to
    ``∓ 0.75 M``, where ``x^{-z}`` is small and round-off does not swamp the decay of
    ``u``.
    """

    def __init__(self, profile: TestProfile, c: float = 0.5, tol: float = 1e-18):
        profile.check_contour(c)
        self.profile = profile
        self.c = c
        side = 0.75 * profile.strip_half_width
        self._branches = [
            self._branch(-side, _LOG_RANGE, tol),
            self._branch(c, _CENTER, tol),
            self._branch(side, _LOG_RANGE, tol),
        ]

    def _branch(self, c: float, log_range: float, tol: float):
        T = contour_truncation(self.profile, c, tol)
        nodes = max(128, int(math.ceil(1.2 * T * log_range)) + 64)
        t, w = gauss_legendre(-T, T, nodes)
        z = c + 1j * t
        return z, w * self.profile(z) / (2.0 * math.pi)

    def _evaluate(self, x, derivative: int):
        x = np.asarray(x, dtype=float)
        if np.any(x <= 0):
            raise ValueError("The inverse transform is evaluated at x > 0 only.")
        log_x = np.log(np.atleast_1d(x))
        result = np.zeros(log_x.shape, dtype=complex)
        masks = [log_x < -_CENTER, np.abs(log_x) <= _CENTER, log_x > _CENTER]
        for (z, weights), mask in zip(self._branches, masks):
            if not mask.any():
                continue
            factor = weights
            if derivative >= 1:
                factor = factor * (-z)
            if derivative == 2:
                factor = factor * (-z - 1.0)
            result[mask] = np.exp(-np.outer(log_x[mask], z + derivative)) @ factor
        if self.profile.real_on_axis:
            result = result.real
        if x.ndim == 0:
            return result[0].item()
        return result

    def __call__(self, x):
        return self._evaluate(x, 0)

    def d1(self, x):
        """Get ``u'(x)``."""
        return self._evaluate(x, 1)

    def d2(self, x):
        """Get ``u''(x)``."""
        return self._evaluate(x, 2)

    def as_test_function(self, s: OrderLike) -> TestFunction:
        """Wrap the field for `~neumannx.quadrature.apply_L_test`."""
        order = as_order(s)
        return TestFunction(
            self.__call__,
            self.d1,
            self.d2,
            tail_exponent=-1.0 - 2.0 * order.s,
            is_complex=not self.profile.real_on_axis,
        )


def profile_derivative(
    phi: TestProfile, z: complex, order: int, radius: float = 0.1, nodes: int = 64
) -> complex:
    """Get ``φ^{(l)}(z)`` from the Cauchy integral with the trapezoidal rule.

    Examples
    --------
    >>> phi = TestProfile("exp", np.exp, 10.0, 2)
    >>> abs(profile_derivative(phi, 0.3, 2) - np.exp(0.3)) < 1e-12
    True

    """
    if order < 0:
        raise ValueError(f"The derivative order must be >= 0, got {order}.")
    theta = 2.0 * math.pi * np.arange(nodes) / nodes
    circle = radius * np.exp(1j * theta)
    values = phi(complex(z) + circle)
    mean = np.mean(values * np.exp(-1j * order * theta))
    return complex(math.factorial(order) * mean / radius**order)


# checks -------------------------------------------------------------------------------


def _clamp(c: float, M: float, margin: float = 0.05) -> float:
    return min(max(c, -M + margin), M - margin)


def dirac_pairing_check(
    alpha: complex, l: int, phi: TestProfile = None, q: QuadratureSpec = None
) -> float:
    """Check ``∫₀^∞ x^α (log x)^l M⁻¹[φ](x) dx = φ^{(l)}(α+1)``.

    The integral is split at ``x = 1``. On (0, 1) the inverse uses the contour
    ``Re α + 0.5`` and on (1, ∞) the contour ``Re α + 1.5``, both clamped into the
    strip. Derivatives of the profile come from `profile_derivative`.

    Returns
    -------
    float
        The relative defect.

    """
    q = resolve_spec(q)
    phi = gaussian_profile() if phi is None else phi
    alpha = complex(alpha)
    M = phi.strip_half_width
    if not M > max(2.0 * abs(alpha.real) + 1.5, abs(alpha.real) + 1.0):
        raise ValueError(f"The strip of '{phi.identifier}' is too narrow for α={alpha}.")
    if l < 0:
        raise ValueError(f"The logarithm power must be >= 0, got {l}.")

    inner = InverseMellinField(phi, _clamp(alpha.real + 0.5, M))
    outer = InverseMellinField(phi, _clamp(alpha.real + 1.5, M))

    def integrand(field):
        def func(u: float) -> complex:
            return np.exp((alpha + 1.0) * u) * u**l * field(math.exp(u))

        return func

    left, _ = integrate_complex(integrand(inner), -_LOG_RANGE, 0.0, q)
    right, _ = integrate_complex(integrand(outer), 0.0, _LOG_RANGE, q)
    reference = profile_derivative(phi, alpha + 1.0, l)
    _log.debug("Dirac pairing with profile '%s', M=%g", phi.identifier, M)
    return abs(left + right - reference) / abs(reference)


def mellin_magic_check(
    s: OrderLike,
    phi: TestProfile = None,
    z: complex = 0.5,
    q: QuadratureSpec = None,
    nodes: int = 48,
    x_range: tuple[float, float] = (1e-4, 1e4),
) -> float:
    """Check that the operator acts as ``M[L u](z) = f(z-1) φ(z-2s)`` on ``u = M⁻¹[φ]``.

    ``L u`` is evaluated by `~neumannx.quadrature.apply_L_test` on the vectorised
    inverse transform, and its transform by a
    `~neumannx.quadrature.core.log_moment` with the tail models ``a + b log x`` at 0
    and ``x^{-1-2s}(c + d log x)`` at infinity.

    Parameters
    ----------
    s :
        The fractional order.
    phi :
        The test profile, `gaussian_profile` if omitted.
    z :
        The transform variable with ``max(0, 2s-1) + 0.05 < Re z < 2s - 0.05``.
    q :
        Quadrature settings, the active profile if omitted.
    nodes :
        Number of Gauss-Legendre nodes in ``log x``, each costs one operator
        evaluation.
    x_range :
        Range covered by the nodes.

    Returns
    -------
    float
        The relative defect.

    """
    order = as_order(s)
    q = resolve_spec(q)
    phi = gaussian_profile() if phi is None else phi
    z = complex(z)
    lower = max(0.0, 2.0 * order.s - 1.0) + 0.05
    upper = 2.0 * order.s - 0.05
    if not lower < z.real < upper:
        raise ValueError(f"Re z must lie in ({lower:g}, {upper:g}), got z={z}.")

    field = InverseMellinField(phi).as_test_function(order)

    def l_u(x: float):
        return apply_L_test(order, field, x, q)

    lhs = log_moment(
        l_u, z, x_range, nodes, zero_exponent=0.0, infinity_exponent=-1.0 - 2 * order.s
    )
    rhs = f_symbol(order, z - 1.0).value * complex(phi(z - 2.0 * order.s))
    _log.debug(
        "Operator composition with profile '%s' (M=%g, m=%d) at s=%g, z=%s",
        phi.identifier,
        phi.strip_half_width,
        phi.decay_order,
        order.s,
        z,
    )
    return abs(lhs - rhs) / abs(rhs)


def plancherel_check(
    u: Callable[[float], float],
    mellin_u: Callable[[complex], complex] = None,
    phi: TestProfile = None,
    q: QuadratureSpec = None,
    c: float = 0.5,
) -> float:
    """Compare ``∫₀^∞ u M⁻¹_c[φ] dx`` with ``(1/2π) ∫ φ(c+it) M[u](1-c-it) dt``.

    For profiles that are real on the axis and ``c = ½`` the right side is the line
    integral of ``M[u](½+it)·conj φ(½+it)``. Without ``mellin_u`` the transform of
    ``u`` is computed with `mellin_transform`.

    Returns
    -------
    float
        The relative defect.

    """
    q = resolve_spec(q)
    phi = gaussian_profile() if phi is None else phi
    field = InverseMellinField(phi, c)

    def pairing(v: float) -> complex:
        x = math.exp(v)
        return x * complex(u(x)) * field(x)

    lhs, _ = integrate_complex(pairing, -_LOG_RANGE, _LOG_RANGE, q, points=[0.0])

    if mellin_u is None:

        def mellin_u(w: complex) -> complex:
            return mellin_transform(u, w, q)

    T = contour_truncation(phi, c, 1e-3 * q.abs_tol)

    def line(t: float) -> complex:
        return complex(phi(c + 1j * t)) * complex(mellin_u(1.0 - c - 1j * t))

    rhs, _ = integrate_complex(line, -T, T, q, points=[0.0])
    rhs /= 2.0 * math.pi
    return abs(lhs - rhs) / abs(rhs)
