"""The correction kernel k_{ℝ₊} of the regional half-line Neumann operator."""
from __future__ import annotations

import math

import numpy as np

from neumannx.quadrature.core import QuadratureSpec, integrate_real, resolve_spec
from neumannx.symbols import OrderLike, as_order

__all__ = ["kernel_k_correction", "kernel_k_row_integral", "regional_kernel"]


def _log_integrand(t: float, log_a: float, log_b: float, exponent: float) -> float:
    # z^{1+2s} (a+z)^{-1-2s} (b+z)^{-1-2s} with z = e^t, the Jacobian included
    return exponent * (t - np.logaddexp(log_a, t) - np.logaddexp(log_b, t))


def kernel_k_correction(
    s: OrderLike, x: float, y: float, q: QuadratureSpec = None
) -> float:
    """Evaluate k_{ℝ₊}(x, y) = 2s c_s ∫₀^∞ z^{2s} (x+z)^{-1-2s} (y+z)^{-1-2s} dz.

    The integral is computed in the variable ``t = log z``, split at ``log x`` and
    ``log y``. The result is exactly symmetric in ``(x, y)`` and homogeneous of
    degree ``-1-2s``.

    Parameters
    ----------
    s :
        The fractional order.
    x, y :
        Positive evaluation points.
    q :
        Quadrature settings, the active profile if omitted.

    Returns
    -------
    float
        The (positive) kernel value.

    Raises
    ------
    QuadratureNotConverged
        If the adaptive quadrature fails.

    """
    order = as_order(s)
    q = resolve_spec(q)
    if not (x > 0 and y > 0):
        raise ValueError(f"kernel_k_correction requires x, y > 0, got x={x}, y={y}.")
    s = order.s
    exponent = 1.0 + 2.0 * s
    log_a, log_b = sorted((math.log(x), math.log(y)))

    def integrand(t: float) -> float:
        return math.exp(_log_integrand(t, log_a, log_b, exponent))

    total = 0.0
    for lo, hi in ((-np.inf, log_a), (log_a, log_b), (log_b, np.inf)):
        if lo < hi:
            total += integrate_real(integrand, lo, hi, q)[0]
    return 2.0 * s * order.c_1s * total


def regional_kernel(s: OrderLike, x: float, y: float, q: QuadratureSpec = None) -> float:
    """Evaluate the full kernel K_{ℝ₊}(x, y) = c_s |x-y|^{-1-2s} + k_{ℝ₊}(x, y)."""
    order = as_order(s)
    if x == y:
        raise ValueError("The regional kernel is singular on the diagonal x = y.")
    return order.c_1s * abs(x - y) ** (-1.0 - 2.0 * order.s) + kernel_k_correction(
        order, x, y, q
    )


def kernel_k_row_integral(s: OrderLike, x: float = 1.0, q: QuadratureSpec = None):
    """Integrate k_{ℝ₊}(x, ·) over (0, ∞) numerically.

    The exact value is ``c_s x^{-2s}/(2s)``. The outer integral runs in ``log y``
    and calls `kernel_k_correction` at every node.
    """
    order = as_order(s)
    q = resolve_spec(q)
    log_x = math.log(x)

    def integrand(u: float) -> float:
        if abs(u) > 700.0:
            return 0.0
        y = math.exp(u)
        return y * kernel_k_correction(order, x, y, q)

    left = integrate_real(integrand, -np.inf, log_x, q)[0]
    right = integrate_real(integrand, log_x, np.inf, q)[0]
    return left + right
