"""Quadrature oracles for the regional Neumann operator on the half line.

``L φ(x) = ∫₀^∞ (φ(x) - φ(y)) K_{ℝ₊}(x, y) dy`` with
``K_{ℝ₊} = c_s |x-y|^{-1-2s} + k_{ℝ₊}``. The singular part is split into a principal
value ball of radius ``singular_split_radius·x`` (symmetric second differences), two
regular far parts and an analytic tail. The correction part uses the row integral
``∫ k_{ℝ₊}(x, y) dy = c_s x^{-2s}/(2s)`` analytically and the remaining double
integral ``2s c_s ∫ z^{2s} (x+z)^{-1-2s} H(z) dz`` with
``H(z) = ∫ φ(y) (y+z)^{-1-2s} dy`` numerically.
"""
from __future__ import annotations

import cmath
import math
from collections.abc import Callable
from dataclasses import dataclass, replace

import numpy as np

from neumannx.constants import SYMBOL_POLE_TOL
from neumannx.exceptions import DivergentStrip, PoleAt
from neumannx.quadrature.core import (
    QuadratureSpec,
    binomial_tail,
    integrate_complex,
    integrate_real,
    log_moment,
    resolve_spec,
)
from neumannx.symbols import Order, OrderLike, as_order, nearest_pole

__all__ = [
    "TestFunction",
    "power_function",
    "quadratic_bump",
    "apply_L_test",
    "apply_L_power",
    "apply_fractional_laplacian_power",
    "selfadjoint_check",
    "neumann_extension",
]

# below this ratio h/x second differences are replaced by their Taylor limit
_TAYLOR_RATIO = 1e-3


@dataclass(frozen=True)
class TestFunction:
    """A twice differentiable function on (0, ∞) with an algebraic tail model.

    Parameters
    ----------
    value, d1, d2 :
        The function and its first two derivatives.
    tail_exponent :
        Exponent ``p`` of the model ``φ(y) ≈ A y^p`` for large ``y``. If omitted,
        ``-1-2s`` is assumed by the operators.
    tail_coefficient :
        The constant ``A``. If omitted, it is matched at the cut-off point.
    is_complex :
        Whether the function takes complex values.

    """

    __test__ = False

    value: Callable
    d1: Callable
    d2: Callable
    tail_exponent: complex = None
    tail_coefficient: complex = None
    is_complex: bool = False

    def __call__(self, x: float):
        return self.value(x)

    def second_difference(self, x: float, h: float):
        """Get ``(2φ(x) - φ(x+h) - φ(x-h)) / h²``."""
        if h <= _TAYLOR_RATIO * x:
            return -self.d2(x)
        return (2.0 * self.value(x) - self.value(x + h) - self.value(x - h)) / (h * h)

    def tail(self, cutoff: float) -> tuple[complex, complex]:
        """Get the tail model ``(A, p)`` matched at ``cutoff``."""
        p = self.tail_exponent
        if self.tail_coefficient is not None:
            return self.tail_coefficient, p
        return self.value(cutoff) / cutoff**p, p

    def scaled(self, factor: complex) -> TestFunction:
        """Return ``factor·φ``."""
        value, d1, d2 = self.value, self.d1, self.d2
        coefficient = self.tail_coefficient
        return replace(
            self,
            value=lambda x: factor * value(x),
            d1=lambda x: factor * d1(x),
            d2=lambda x: factor * d2(x),
            tail_coefficient=None if coefficient is None else factor * coefficient,
            is_complex=self.is_complex or isinstance(factor, complex),
        )


@dataclass(frozen=True)
class _PowerFunction(TestFunction):
    """The power y^β, with cancellation free second differences."""

    __test__ = False

    beta: complex = 0.0

    def second_difference(self, x: float, h: float):
        beta = self.beta
        t = h / x
        if t <= 1e-6:
            return -beta * (beta - 1.0) * x ** (beta - 2.0)
        plus = np.expm1(beta * np.log1p(t))
        minus = np.expm1(beta * np.log1p(-t))
        return -(x**beta) * (plus + minus) / (h * h)


def power_function(beta: complex) -> TestFunction:
    """Get ``y ↦ y^β`` (principal branch) as `TestFunction` with exact tail."""
    beta = complex(beta)
    is_complex = beta.imag != 0.0
    if not is_complex:
        beta_real = beta.real

        def value(y):
            return y**beta_real

        def d1(y):
            return beta_real * y ** (beta_real - 1.0)

        def d2(y):
            return beta_real * (beta_real - 1.0) * y ** (beta_real - 2.0)

        return _PowerFunction(value, d1, d2, beta_real, 1.0, False, beta_real)

    def value(y):
        return cmath.exp(beta * math.log(y))

    def d1(y):
        return beta * cmath.exp((beta - 1.0) * math.log(y))

    def d2(y):
        return beta * (beta - 1.0) * cmath.exp((beta - 2.0) * math.log(y))

    return _PowerFunction(value, d1, d2, beta, 1.0, True, beta)


def quadratic_bump(s: OrderLike) -> TestFunction:
    """Get the profile ``φ(x) = x² (1+x²)^{-(3+2s)/2}``.

    It vanishes quadratically at 0 and decays like ``x^{-1-2s}`` at infinity.
    """
    order = as_order(s)
    m = 0.5 * (3.0 + 2.0 * order.s)

    def value(x):
        return x * x * (1.0 + x * x) ** (-m)

    def d1(x):
        w = 1.0 + x * x
        return 2.0 * x * w ** (-m) - 2.0 * m * x**3 * w ** (-m - 1.0)

    def d2(x):
        w = 1.0 + x * x
        return (
            2.0 * w ** (-m)
            - 10.0 * m * x * x * w ** (-m - 1.0)
            + 4.0 * m * (m + 1.0) * x**4 * w ** (-m - 2.0)
        )

    return TestFunction(value, d1, d2, tail_exponent=-1.0 - 2.0 * order.s)


def _as_test_function(phi, order: Order) -> TestFunction:
    if isinstance(phi, TestFunction):
        if phi.tail_exponent is None:
            return replace(phi, tail_exponent=-1.0 - 2.0 * order.s)
        return phi
    value, d1, d2 = phi
    return TestFunction(value, d1, d2, tail_exponent=-1.0 - 2.0 * order.s)


def _check_tail(order: Order, p: complex, q: QuadratureSpec, what: str):
    """Refuse truncated tails that diverge (``Re p ≥ 2s``)."""
    if not q.tail_exponent_correction and np.real(p) >= 2.0 * order.s:
        raise DivergentStrip(
            f"The {what} integral diverges for tail exponent {p} "
            f"(s={order.s}); enable tail_exponent_correction."
        )


# operator parts -----------------------------------------------------------------------


def _singular_part(order: Order, phi: TestFunction, x: float, q: QuadratureSpec):
    """Compute c_s p.v.∫₀^∞ (φ(x) - φ(y)) |x-y|^{-1-2s} dy."""
    s = order.s
    real_valued = not phi.is_complex
    r = q.singular_split_radius * x
    phi_x = phi.value(x)

    near, _ = integrate_complex(
        lambda h: phi.second_difference(x, h),
        0.0,
        r,
        q,
        real_valued=real_valued,
        weight="alg",
        wvar=(1.0 - 2.0 * s, 0.0),
    )
    left, _ = integrate_complex(
        lambda y: (phi_x - phi.value(y)) * (x - y) ** (-1.0 - 2.0 * s),
        0.0,
        x - r,
        q,
        real_valued=real_valued,
    )
    cutoff = q.cutoff(x)
    right, _ = integrate_complex(
        lambda y: (phi_x - phi.value(y)) * (y - x) ** (-1.0 - 2.0 * s),
        x + r,
        cutoff,
        q,
        points=[1.0, 2.0 * x, 10.0 * x, 10.0],
        real_valued=real_valued,
    )
    tail = phi_x * (cutoff - x) ** (-2.0 * s) / (2.0 * s)
    coefficient, p = phi.tail(cutoff)
    _check_tail(order, p, q, "far field")
    if q.tail_exponent_correction:
        tail -= coefficient * binomial_tail(
            p - 1.0 - 2.0 * s, -1.0 - 2.0 * s, -x, cutoff
        )
    return order.c_1s * (near + left + right + tail)


def _correction_part(order: Order, phi: TestFunction, x: float, q: QuadratureSpec):
    """Compute ∫₀^∞ (φ(x) - φ(y)) k_{ℝ₊}(x, y) dy."""
    s = order.s
    real_valued = not phi.is_complex
    exponent = -1.0 - 2.0 * s
    base_cutoff = q.cutoff(x)
    _, p = phi.tail(base_cutoff)
    _check_tail(order, p, q, "correction")

    def h_integral(z: float):
        cutoff = max(base_cutoff, 50.0 * z)
        value, _ = integrate_complex(
            lambda y: phi.value(y) * (y + z) ** exponent,
            0.0,
            cutoff,
            q,
            points=[z, 1.0, x],
            real_valued=real_valued,
        )
        if q.tail_exponent_correction:
            coefficient, p_tail = phi.tail(cutoff)
            value += coefficient * binomial_tail(
                p_tail + exponent, exponent, z, cutoff
            )
        return value

    outer_cutoff = base_cutoff
    outer, _ = integrate_complex(
        lambda z: z ** (2.0 * s) * (x + z) ** exponent * h_integral(z),
        0.0,
        outer_cutoff,
        q,
        points=[x, 1.0, 10.0 * x],
        real_valued=real_valued,
    )
    # H(z) ∝ z^{growth} beyond the cut-off
    h_cut = h_integral(outer_cutoff)
    if np.real(p) > -1.0:
        growth = p - 2.0 * s
    else:
        h_half = h_integral(0.5 * outer_cutoff)
        growth = exponent
        if h_half != 0 and (h_cut / h_half).real > 0:
            growth = cmath.log(h_cut / h_half) / math.log(2.0)
    outer += (
        h_cut
        * outer_cutoff ** (-growth)
        * binomial_tail(growth - 1.0, exponent, x, outer_cutoff)
    )
    row = order.c_1s * x ** (-2.0 * s) / (2.0 * s)
    return phi.value(x) * row - 2.0 * s * order.c_1s * outer


def _apply(order: Order, phi: TestFunction, x: float, q: QuadratureSpec):
    if not x > 0:
        raise ValueError(f"The operator is evaluated at x > 0 only, got x={x}.")
    return _singular_part(order, phi, x, q) + _correction_part(order, phi, x, q)


# public -------------------------------------------------------------------------------


def apply_L_test(s: OrderLike, phi, x: float, q: QuadratureSpec = None):
    """Apply the regional Neumann operator to a smooth test function.

    Parameters
    ----------
    s :
        The fractional order.
    phi :
        A `TestFunction` or a tuple ``(value, d1, d2)``. Without an explicit tail
        model the function is assumed to decay like ``x^{-1-2s}``.
    x :
        The evaluation point.
    q :
        Quadrature settings, the active profile if omitted.

    Returns
    -------
    float or complex
        ``L φ(x)``, real for real-valued ``φ``.

    Raises
    ------
    QuadratureNotConverged
        If one of the adaptive quadratures fails.

    """
    order = as_order(s)
    q = resolve_spec(q)
    phi = _as_test_function(phi, order)
    value = _apply(order, phi, x, q)
    if phi.is_complex:
        return complex(value)
    return float(np.real(value))


def _check_power(order: Order, beta: complex, q: QuadratureSpec):
    if beta.real <= -1.0:
        raise ValueError(f"Powers y^β need Re β > -1 to be integrable, got β={beta}.")
    pole = nearest_pole(order, beta)
    if abs(beta - pole) <= SYMBOL_POLE_TOL:
        raise PoleAt(beta, f"L(x^β) is not defined at the pole β={pole}.")
    _check_tail(order, beta, q, "power")


def apply_L_power(s: OrderLike, beta: complex, x: float = 1.0, q: QuadratureSpec = None):
    """Apply the regional Neumann operator to the power ``x^β`` by quadrature.

    This is an oracle for the homogeneity identity ``L(x^β) = f(β) x^{β-2s}``. For
    ``Re β >= 2s`` the half-line integrals diverge and are continued analytically by
    exact binomial tails, which requires ``tail_exponent_correction``.

    Raises
    ------
    DivergentStrip
        If ``Re β >= 2s`` and the tail correction is disabled.
    PoleAt
        If β is a pole of the symbol.
    QuadratureNotConverged
        If one of the adaptive quadratures fails.

    """
    order = as_order(s)
    q = resolve_spec(q)
    beta = complex(beta)
    _check_power(order, beta, q)
    return complex(_apply(order, power_function(beta), x, q))


def apply_fractional_laplacian_power(
    s: OrderLike, beta: complex, x: float = 1.0, q: QuadratureSpec = None
):
    """Apply (-Δ)^s to the one-sided power ``x_+^β`` by quadrature.

    The regional singular part is complemented by the exterior contribution
    ``c_s x^{β-2s}/(2s)``. The result is the oracle for
    `~neumannx.symbols.fractional_laplacian_symbol`.
    """
    order = as_order(s)
    q = resolve_spec(q)
    beta = complex(beta)
    _check_power(order, beta, q)
    phi = power_function(beta)
    exterior = order.c_1s * phi.value(x) * x ** (-2.0 * order.s) / (2.0 * order.s)
    return complex(_singular_part(order, phi, x, q) + exterior)


def selfadjoint_check(
    s: OrderLike,
    beta: float,
    phi=None,
    q: QuadratureSpec = None,
    nodes: int = 48,
    x_range: tuple[float, float] = (1e-3, 1e3),
) -> float:
    """Compare both sides of ``∫₀^∞ g Lφ dx = ∫₀^∞ (Lg) φ dx`` for ``g = x^{β-1}``.

    The left side is a `~neumannx.quadrature.core.log_moment` of ``Lφ`` with the
    tail models ``a + b log x`` near 0 and ``x^{-1-2s}(c + d log x)`` at infinity.
    The right side uses ``Lg = L(x^{β-1})(1)·x^{β-1-2s}`` from `apply_L_power` and a
    direct quadrature of ``∫ x^{β-1-2s} φ(x) dx``.

    Returns
    -------
    float
        ``|LHS - RHS| / (|LHS| + |RHS|)``.

    """
    order = as_order(s)
    q = resolve_spec(q)
    s = order.s
    if not (0.0 < beta < 2.0 * s):
        raise ValueError(f"selfadjoint_check requires 0 < β < 2s, got β={beta}.")
    phi = _as_test_function(quadratic_bump(order) if phi is None else phi, order)

    def l_phi(x: float) -> float:
        return float(np.real(_apply(order, phi, x, q)))

    lhs = log_moment(
        l_phi, beta, x_range, nodes, zero_exponent=0.0, infinity_exponent=-1.0 - 2 * s
    ).real

    symbol = apply_L_power(order, beta - 1.0, 1.0, q).real

    def weighted(y: float) -> float:
        return y ** (beta - 1.0 - 2.0 * s) * float(np.real(phi.value(y)))

    moment = integrate_real(weighted, 0.0, 1.0, q)[0]
    moment += integrate_real(weighted, 1.0, np.inf, q)[0]
    rhs = symbol * moment
    return abs(lhs - rhs) / (abs(lhs) + abs(rhs) + 1e-300)


def neumann_extension(
    s: OrderLike, u, x: float, q: QuadratureSpec = None, growth: float = 0.0
) -> float:
    """Extend ``u`` from (0, ∞) to the point ``x < 0`` by the Neumann condition.

    The value is the kernel weighted average
    ``∫₀^∞ u(y) |x-y|^{-1-2s} dy / ∫₀^∞ |x-y|^{-1-2s} dy``, which makes the nonlocal
    normal derivative vanish at ``x``.

    Parameters
    ----------
    s :
        The fractional order.
    u :
        The function on (0, ∞), a callable or a `TestFunction`.
    x :
        A negative point.
    q :
        Quadrature settings, the active profile if omitted.
    growth :
        Exponent ``p < 2s`` of the growth model ``u(y) ≈ A y^p`` at infinity. A
        `TestFunction` supplies it through its tail model.

    """
    order = as_order(s)
    q = resolve_spec(q)
    s = order.s
    if not x < 0:
        raise ValueError(f"The Neumann extension is defined for x < 0, got x={x}.")
    distance = -x
    exponent = -1.0 - 2.0 * s
    if isinstance(u, TestFunction):
        func = u.value
        if u.tail_exponent is not None:
            growth = u.tail_exponent
    else:
        func = u
    if not np.real(growth) < 2.0 * s:
        raise ValueError(f"The growth exponent must be < 2s, got {growth}.")
    cutoff = q.cutoff(distance)
    numerator, _ = integrate_complex(
        lambda y: func(y) * (distance + y) ** exponent,
        0.0,
        cutoff,
        q,
        points=[distance, 1.0],
        real_valued=True,
    )
    coefficient = func(cutoff) / cutoff**growth
    numerator += coefficient * binomial_tail(growth + exponent, exponent, distance, cutoff)
    denominator = distance ** (-2.0 * s) / (2.0 * s)
    return float(np.real(numerator)) / denominator
