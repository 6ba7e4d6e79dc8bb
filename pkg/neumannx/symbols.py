"""Closed forms of the Mellin symbol of the 1D fractional Neumann problem.

The regional Neumann operator ``L`` on the half line acts on powers as
``L(x^β) = f(β) x^{β-2s}``. This module evaluates ``f`` in both printed forms, the
auxiliary functions ``g`` and ``F`` whose zeros coincide with the non-trivial zeros of
``f``, the half-line Dirichlet/Neumann symbols and the symbols of the
two-dimensional half-space problem.

All quantities are assembled in log space from `neumannx.special_functions`, so they
neither overflow nor suffer from ``0·∞`` cancellation at removable singularities.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from neumannx.constants import SYMBOL_POLE_TOL
from neumannx.exceptions import PoleAt
from neumannx.special_functions import (
    complex_cos_pi,
    complex_log_gamma,
    complex_sin_pi,
    digamma,
    log_sin_pi,
)
from neumannx.types import ArrayLike, ComplexLike

__all__ = [
    "Order",
    "SymbolValue",
    "as_order",
    "c_beta",
    "f_symbol",
    "g_aux",
    "F_entire",
    "F_scale",
    "dF_dbeta",
    "nearest_pole",
    "halfline_symbols",
    "f1_f2_symbols",
    "fractional_laplacian_symbol",
]


@dataclass(frozen=True)
class Order:
    """The fractional order ``s`` of the operator.

    Examples
    --------
    >>> abs(Order(0.5).c_1s - 1 / 3.141592653589793) < 1e-15
    True

    """

    s: float

    def __post_init__(self):
        s = float(self.s)
        if not (0.0 < s < 1.0):
            raise ValueError(f"The fractional order must lie in (0, 1), got s={s}.")
        object.__setattr__(self, "s", s)

    def c(self, n: int = 1) -> float:
        """Get the normalisation constant c_{n,s} of (-Δ)^s in n dimensions."""
        s = self.s
        log_c = (
            s * math.log(4.0)
            + math.log(s)
            - 0.5 * n * math.log(math.pi)
            + math.lgamma(0.5 * n + s)
            - math.lgamma(1.0 - s)
        )
        return math.exp(log_c)

    @property
    def c_1s(self) -> float:
        """Get the one-dimensional constant c_s."""
        return self.c(1)

    @property
    def sin_pi_s(self) -> float:
        """Get sin(πs)."""
        return math.sin(math.pi * self.s)


OrderLike = Union[Order, float]


def as_order(s: OrderLike) -> Order:
    """Return ``s`` as `Order`, accepting plain floats."""
    if isinstance(s, Order):
        return s
    return Order(s)


@dataclass(frozen=True)
class SymbolValue:
    """A symbol value together with its pole diagnostics."""

    value: complex
    is_pole: bool = False
    nearest_pole: complex = None

    def __complex__(self) -> complex:
        return complex(self.value)

    def __abs__(self) -> float:
        return abs(self.value)


# poles --------------------------------------------------------------------------------


def nearest_pole(s: OrderLike, beta: ComplexLike) -> complex:
    """Return the genuine pole of ``f`` closest to ``beta``.

    The poles of ``f`` are ``2s + j`` and ``-1 - j`` for ``j = 0, 1, 2, ...``.

    Examples
    --------
    >>> nearest_pole(0.25, 0.6)
    (0.5+0j)
    >>> nearest_pole(0.25, -1.3)
    (-1+0j)

    """
    s = as_order(s).s
    beta = complex(beta)
    upper = 2.0 * s + max(round(beta.real - 2.0 * s), 0)
    lower = -1.0 - max(round(-1.0 - beta.real), 0)
    if abs(beta - upper) <= abs(beta - lower):
        return complex(upper)
    return complex(lower)


def _pole_value(order: Order, beta: complex) -> SymbolValue:
    pole = nearest_pole(order, beta)
    if abs(beta - pole) <= SYMBOL_POLE_TOL:
        return SymbolValue(complex(math.inf, 0.0), True, pole)
    return None


def _check_pole(order: Order, beta: complex):
    pole = nearest_pole(order, beta)
    if abs(beta - pole) <= SYMBOL_POLE_TOL:
        raise PoleAt(beta, f"β={beta} is a pole of the symbol (s={order.s}).")


def _lg(z) -> complex:
    return complex_log_gamma(z)


# constants ----------------------------------------------------------------------------


def c_beta(s: OrderLike, beta: ArrayLike):
    """Compute C_β = Γ(2s-β) Γ(β+1) / Γ(1+2s).

    This is the Mellin transform of ``t^β (1+t)^{-1-2s}`` at 1.

    Raises
    ------
    PoleAt
        At ``β ∈ 2s + ℕ₀`` and ``β ∈ -1 - ℕ₀``.

    """
    order = as_order(s)
    s = order.s
    beta = np.asarray(beta, dtype=complex)
    upper = 2 * s + np.maximum(np.round(beta.real - 2 * s), 0.0)
    lower = -1.0 - np.maximum(np.round(-1.0 - beta.real), 0.0)
    distance = np.minimum(np.abs(beta - upper), np.abs(beta - lower))
    if np.any(distance <= SYMBOL_POLE_TOL):
        at = complex(beta.flat[int(np.argmin(distance))])
        raise PoleAt(at, f"β={at} is a pole of C_β (s={s}).")
    return np.exp(_lg(2 * s - beta) + _lg(beta + 1.0) - _lg(1.0 + 2 * s))


# symbol f -----------------------------------------------------------------------------


def _f_product(order: Order, beta: complex) -> complex:
    s = order.s
    log_sin_s = math.log(order.sin_pi_s)
    log_prefactor = (
        _lg(beta + 1.0) - _lg(beta - 2 * s + 1.0) + log_sin_s - log_sin_pi(beta - 2 * s)
    )
    t1 = log_sin_pi(beta - s) - log_sin_s
    t2 = _lg(2 * s - beta) + _lg(beta + 1.0) - _lg(2 * s)
    shift = max(t1.real, t2.real)
    bracket = cmath.exp(t1 - shift) + cmath.exp(t2 - shift)
    return complex(cmath.exp(log_prefactor + shift) * bracket)


def _f_difference(order: Order, beta: complex) -> complex:
    s = order.s
    f_lplus = cmath.exp(
        _lg(beta + 1.0)
        - _lg(beta - 2 * s + 1.0)
        + log_sin_pi(beta - s)
        - log_sin_pi(beta - 2 * s)
    )
    log_c = _lg(2 * s - beta) + _lg(beta + 1.0) - _lg(1.0 + 2 * s)
    return complex(f_lplus - 2 * s * order.c_1s * cmath.exp(2 * log_c))


def _f_reduced(order: Order, beta: complex) -> complex:
    """Evaluate -(sin πs/π) Γ(β+1) Γ(2s-β) g(β), free of removable singularities."""
    s = order.s
    log_a = _lg(beta + 1.0) + _lg(2 * s - beta)
    squared = cmath.exp(2 * log_a - _lg(2 * s))
    mixed = cmath.exp(log_a) * complex_sin_pi(s - beta)
    return complex(-order.sin_pi_s / math.pi * squared + mixed / math.pi)


_FORMS = {"product": _f_product, "difference": _f_difference}

# the trivial zeros 0 and 2s-1 are returned as exact zeros
_TRIVIAL_ZERO_TOL = 1e-14


def f_symbol(s: OrderLike, beta: ComplexLike, form: str = "product") -> SymbolValue:
    """Evaluate the Mellin symbol ``f(β)`` of the half-line Neumann operator.

    Parameters
    ----------
    s :
        The fractional order.
    beta :
        The exponent β.
    form :
        ``"product"`` evaluates
        ``Γ(β+1) sin(πs) / (Γ(β-2s+1) sin(π(β-2s))) · [sin(π(β-s))/sin(πs) +
        Γ(2s-β)Γ(β+1)/Γ(2s)]``, ``"difference"`` evaluates
        ``f_{L,+}(β) - 2s c_s C_β²``.

    Returns
    -------
    SymbolValue
        The value. At the poles ``2s + ℕ₀`` and ``-1 - ℕ₀`` the value is infinite
        and ``is_pole`` is set. At the removable singularities of the printed forms
        (``β ∈ 2s - ℕ``) the analytic value is returned.

    Examples
    --------
    >>> f_symbol(0.5, 0.0).value == 0
    True
    >>> f_symbol(0.5, 1.0).is_pole
    True

    """
    order = as_order(s)
    beta = complex(beta)
    if form not in _FORMS:
        raise ValueError(f"Unknown form '{form}', use one of {sorted(_FORMS)}.")
    pole = _pole_value(order, beta)
    if pole is not None:
        return pole
    if min(abs(beta), abs(beta - (2 * order.s - 1.0))) <= _TRIVIAL_ZERO_TOL:
        return SymbolValue(0j, False, nearest_pole(order, beta))
    try:
        value = _FORMS[form](order, beta)
    except PoleAt:
        value = _f_reduced(order, beta)
    if not cmath.isfinite(value):
        value = _f_reduced(order, beta)
    return SymbolValue(value, False, nearest_pole(order, beta))


def g_aux(s: OrderLike, z: ArrayLike):
    """Compute g(z) = Γ(2s-z)Γ(z+1)/Γ(2s) - sin(π(s-z))/sin(πs).

    Raises
    ------
    PoleAt
        At the poles of Γ(2s-z) and Γ(z+1).

    """
    order = as_order(s)
    s = order.s
    z = np.asarray(z, dtype=complex)
    gamma_part = np.exp(_lg(2 * s - z) + _lg(z + 1.0) - _lg(2 * s))
    return gamma_part - complex_sin_pi(s - z) / order.sin_pi_s


# entire surrogate F -------------------------------------------------------------------


def _check_holomorphy_strip(order: Order, beta: np.ndarray):
    limit = 2 * order.s + 1.0 - 1e-9
    if np.any(np.real(beta) >= limit):
        raise ValueError(
            f"F is evaluated only for Re β < 2s + 1 = {2 * order.s + 1.0} "
            f"(s={order.s})."
        )


def _gamma_product_terms(order: Order, beta: np.ndarray):
    s = order.s
    log_p = _lg(2 * s + 1.0 - beta) + _lg(beta + 1.0)
    return order.sin_pi_s * np.exp(log_p - _lg(2 * s))


def F_entire(s: OrderLike, beta: ArrayLike):
    """Compute F(s, β) = (2s-β) sin(π(s-β)) - sin(πs) Γ(2s+1-β)Γ(β+1)/Γ(2s).

    ``F = -(2s-β) sin(πs) g(β)`` is holomorphic for ``-1 < Re β < 2s+1`` and shares
    the non-trivial zeros of ``f`` there. ``F(s, 2s) = -2s sin(πs) ≠ 0``.

    Raises
    ------
    ValueError
        If ``Re β >= 2s + 1``.

    Examples
    --------
    >>> abs(F_entire(0.5, 1.0) + 1.0) < 1e-12
    True

    """
    order = as_order(s)
    beta = np.asarray(beta, dtype=complex)
    _check_holomorphy_strip(order, beta)
    s = order.s
    return (2 * s - beta) * complex_sin_pi(s - beta) - _gamma_product_terms(
        order, beta
    )


def F_scale(s: OrderLike, beta: ArrayLike):
    """Get the modulus scale of the two terms of `F_entire`.

    Used as the reference magnitude for relative zero tests.
    """
    order = as_order(s)
    beta = np.asarray(beta, dtype=complex)
    s = order.s
    return np.abs((2 * s - beta) * complex_sin_pi(s - beta)) + np.abs(
        _gamma_product_terms(order, beta)
    )


def dF_dbeta(s: OrderLike, beta: ArrayLike):
    """Compute the derivative of `F_entire` with respect to β."""
    order = as_order(s)
    beta = np.asarray(beta, dtype=complex)
    _check_holomorphy_strip(order, beta)
    s = order.s
    product = _gamma_product_terms(order, beta)
    return (
        -complex_sin_pi(s - beta)
        - (2 * s - beta) * np.pi * complex_cos_pi(s - beta)
        - product * (digamma(beta + 1.0) - digamma(2 * s + 1.0 - beta))
    )


# half-line and half-space symbols -----------------------------------------------------


def fractional_laplacian_symbol(s: OrderLike, beta: ComplexLike) -> complex:
    """Compute f_{L,+}(β), the symbol of (-Δ)^s on the one-sided power x_+^β.

    Evaluated in the reduced form ``-Γ(β+1)Γ(2s-β) sin(π(β-s))/π``, which equals
    ``Γ(β+1)/Γ(β-2s+1) · sin(π(β-s))/sin(π(β-2s))``. It vanishes at ``β = s`` and
    ``β = s - 1``.

    Raises
    ------
    PoleAt
        At ``β ∈ 2s + ℕ₀`` and ``β ∈ -1 - ℕ₀``.

    """
    order = as_order(s)
    beta = complex(beta)
    _check_pole(order, beta)
    s = order.s
    return complex(
        -cmath.exp(_lg(beta + 1.0) + _lg(2 * s - beta))
        * complex_sin_pi(beta - s)
        / math.pi
    )


def halfline_symbols(s: OrderLike, beta: ComplexLike) -> dict[str, complex]:
    """Compute the four half-line symbols at β.

    Returns
    -------
    dict
        ``fL_plus`` (Dirichlet, interior), ``fL_minus = fN_plus = -c_s C_β``
        (exterior Dirichlet part, interior Neumann part) and
        ``fN_minus = c_s/(2s)``.

    Raises
    ------
    PoleAt
        At the poles of C_β.

    """
    order = as_order(s)
    beta = complex(beta)
    _check_pole(order, beta)
    c_s = order.c_1s
    cross = complex(-c_s * c_beta(order, beta))
    return {
        "fL_plus": fractional_laplacian_symbol(order, beta),
        "fL_minus": cross,
        "fN_plus": cross,
        "fN_minus": complex(c_s / (2 * order.s)),
    }


def f1_f2_symbols(s: OrderLike, beta: ComplexLike) -> tuple[SymbolValue, SymbolValue]:
    """Compute the symbols f₁ and f₂ of the two-dimensional half-space problem.

    ``f₁ = f`` and ``f₂ = -Γ(1+2s)/(2s Γ(2s-β)Γ(β+1)) · f``. Both are flagged as poles
    at the poles of ``f``, in particular ``|f₁(2s)| = |f₂(2s)| = ∞``.
    """
    order = as_order(s)
    beta = complex(beta)
    f1 = f_symbol(order, beta)
    if f1.is_pole:
        return f1, SymbolValue(complex(math.inf, 0.0), True, f1.nearest_pole)
    s = order.s
    multiple = -cmath.exp(_lg(1.0 + 2 * s) - _lg(2 * s - beta) - _lg(beta + 1.0))
    f2 = SymbolValue(complex(multiple * f1.value / (2 * s)), False, f1.nearest_pole)
    return f1, f2
