"""Adaptive quadrature settings and wrappers around `scipy.integrate.quad`."""
from __future__ import annotations

import math
import warnings
from collections.abc import Sequence
from dataclasses import asdict, dataclass, replace

import numpy as np
from scipy import integrate

from neumannx.exceptions import (
    DivergentStrip,
    QuadratureNotConverged,
    QuadratureWarning,
)
from neumannx.types import ComplexFunction, RealFunction

__all__ = [
    "QuadratureSpec",
    "resolve_spec",
    "integrate_real",
    "integrate_complex",
    "binomial_tail",
    "power_log_tail",
    "gauss_legendre",
    "log_moment",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budgets of the adaptive quadratures.

    Parameters
    ----------
    rel_tol :
        Requested relative accuracy of every adaptive integral.
    abs_tol :
        Requested absolute accuracy of every adaptive integral.
    singular_split_radius :
        Radius of the principal value ball around the singularity ``y = x`` as a
        fraction of ``x``.
    domain_truncation :
        Lower bound of the cut-off ``T`` of half-line integrals. The actual cut-off
        is ``max(domain_truncation, 50 x)``, the remainder is added analytically.
    tail_exponent_correction :
        Add the analytic tail beyond the cut-off. Without it, integrals whose tails
        diverge raise `~neumannx.exceptions.DivergentStrip`.
    limit :
        Maximum number of subintervals of one adaptive integral.
    accept_factor :
        Integrals whose error estimate exceeds the requested tolerance by at most
        this factor are accepted with a `~neumannx.exceptions.QuadratureWarning`.

    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    singular_split_radius: float = 0.5
    domain_truncation: float = 100.0
    tail_exponent_correction: bool = True
    limit: int = 400
    accept_factor: float = 1e4

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("Quadrature tolerances must be positive.")
        if not (0.0 < self.singular_split_radius < 1.0):
            raise ValueError(
                "singular_split_radius must lie in (0, 1), "
                f"got {self.singular_split_radius}."
            )
        if self.domain_truncation < 100.0:
            raise ValueError(
                f"domain_truncation must be >= 100, got {self.domain_truncation}."
            )
        if self.limit < 1:
            raise ValueError(f"limit must be a positive integer, got {self.limit}.")

    def cutoff(self, x: float) -> float:
        """Get the truncation point of half-line integrals for the point ``x``."""
        return max(self.domain_truncation, 50.0 * x)

    def scaled(self, factor: float) -> QuadratureSpec:
        """Return a copy with both tolerances multiplied by ``factor``."""
        return replace(
            self, rel_tol=self.rel_tol * factor, abs_tol=self.abs_tol * factor
        )

    def to_dict(self) -> dict:
        """Get the settings as plain dictionary."""
        return asdict(self)


def resolve_spec(q: QuadratureSpec = None) -> QuadratureSpec:
    """Return ``q`` or, if it is `None`, the active quadrature settings."""
    if q is None:
        from neumannx.config import Config

        return Config.quadrature_spec()
    return q


def _check_result(result, q: QuadratureSpec, a: float, b: float) -> tuple:
    value, error = result[0], result[1]
    if len(result) > 3:
        tolerance = max(q.abs_tol, q.rel_tol * abs(value))
        message = result[3]
        if not np.isfinite(value) or error > q.accept_factor * tolerance:
            raise QuadratureNotConverged(
                f"Quadrature on [{a:g}, {b:g}] did not converge: error estimate "
                f"{error:.3g} exceeds tolerance {tolerance:.3g} ({message})",
                error_estimate=error,
            )
        warnings.warn(
            f"Quadrature on [{a:g}, {b:g}]: {message} "
            f"(error estimate {error:.3g}).",
            QuadratureWarning,
            stacklevel=3,
        )
    return value, error


def integrate_real(
    func: RealFunction,
    a: float,
    b: float,
    q: QuadratureSpec,
    points: Sequence[float] = None,
    **kwargs,
) -> tuple[float, float]:
    """Integrate a real function with `scipy.integrate.quad`.

    Returns
    -------
    tuple
        The value and the absolute error estimate.

    Raises
    ------
    QuadratureNotConverged
        If quadrature reports a problem and the error estimate is not acceptable.

    """
    if points is not None and math.isfinite(a) and math.isfinite(b):
        lo, hi = min(a, b), max(a, b)
        points = sorted({p for p in points if lo < p < hi}) or None
    else:
        points = None
    result = integrate.quad(
        func,
        a,
        b,
        epsabs=q.abs_tol,
        epsrel=q.rel_tol,
        limit=q.limit,
        points=points,
        full_output=1,
        **kwargs,
    )
    return _check_result(result, q, a, b)


def integrate_complex(
    func: ComplexFunction,
    a: float,
    b: float,
    q: QuadratureSpec,
    points: Sequence[float] = None,
    real_valued: bool = False,
    **kwargs,
) -> tuple[complex, float]:
    """Integrate a complex function by integrating real and imaginary part.

    Function values are cached, so nodes shared by both passes are evaluated once.
    With ``real_valued`` only the real part is integrated.
    """
    cache: dict[float, complex] = {}

    def evaluate(t: float) -> complex:
        value = cache.get(t)
        if value is None:
            value = complex(func(t))
            cache[t] = value
        return value

    re, re_err = integrate_real(lambda t: evaluate(t).real, a, b, q, points, **kwargs)
    if real_valued:
        return complex(re), re_err
    im, im_err = integrate_real(lambda t: evaluate(t).imag, a, b, q, points, **kwargs)
    return complex(re, im), math.hypot(re_err, im_err)


def binomial_tail(
    p: complex, q: complex, a: complex, T: float, max_terms: int = 400
) -> complex:
    """Compute ∫_T^∞ y^p (1 + a/y)^q dy by the binomial series.

    The series ``Σ binom(q, k) a^k T^{p+1-k}/(k-p-1)`` converges for ``|a| < T``. For
    ``Re p >= -1`` the integral diverges and the series is its analytic continuation
    in ``p``.

    Raises
    ------
    ValueError
        If ``|a| >= T`` or ``k = p + 1`` for some term.

    Examples
    --------
    >>> abs(binomial_tail(-2.0, 0.0, 0.0, 4.0) - 0.25) < 1e-15
    True

    """
    if abs(a) >= T:
        raise ValueError(f"Binomial tail requires |a| < T, got a={a}, T={T}.")
    p = complex(p)
    ratio = complex(a) / T
    coef = 1.0 + 0j
    power = 1.0 + 0j
    leading = T ** (p + 1.0)
    total = 0j
    for k in range(max_terms):
        denominator = k - p - 1.0
        if abs(denominator) < 1e-12:
            raise ValueError(f"Binomial tail has a logarithmic term at k={k}, p={p}.")
        term = coef * power / denominator
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
        coef *= (q - k) / (k + 1)
        power *= ratio
        if coef == 0:
            break
    return complex(leading * total)


def power_log_tail(c0: complex, c1: complex, gamma: complex, edge: float, side: str):
    """Integrate the model ``x^{γ-1} (c0 + c1 log x)`` beyond ``edge``.

    Parameters
    ----------
    side :
        ``"zero"`` integrates over ``(0, edge)`` and needs ``Re γ > 0``,
        ``"infinity"`` integrates over ``(edge, ∞)`` and needs ``Re γ < 0``.

    Raises
    ------
    DivergentStrip
        If the model integral diverges.

    Examples
    --------
    >>> abs(power_log_tail(1.0, 0.0, 2.0, 1.0, "zero") - 0.5) < 1e-15
    True

    """
    gamma = complex(gamma)
    power = edge**gamma
    log_edge = math.log(edge)
    if side == "zero":
        if gamma.real <= 0:
            raise DivergentStrip(f"Integral diverges at 0 for exponent {gamma}.")
        return c0 * power / gamma + c1 * (power * log_edge / gamma - power / gamma**2)
    if side == "infinity":
        if gamma.real >= 0:
            raise DivergentStrip(f"Integral diverges at ∞ for exponent {gamma}.")
        return -c0 * power / gamma + c1 * (power / gamma**2 - power * log_edge / gamma)
    raise ValueError(f"side must be 'zero' or 'infinity', got '{side}'.")


def gauss_legendre(a: float, b: float, nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Get Gauss-Legendre nodes and weights on ``[a, b]``."""
    t, w = np.polynomial.legendre.leggauss(nodes)
    return 0.5 * (b - a) * t + 0.5 * (b + a), 0.5 * (b - a) * w


def _log_linear_fit(func, edge: float, exponent: complex) -> tuple[complex, complex]:
    """Fit ``func(x) ≈ x^exponent (c0 + c1 log x)`` at ``edge`` and ``2 edge``."""
    v1 = func(edge) * edge ** (-exponent)
    v2 = func(2.0 * edge) * (2.0 * edge) ** (-exponent)
    c1 = (v2 - v1) / math.log(2.0)
    return v1 - c1 * math.log(edge), c1


def log_moment(
    func: ComplexFunction,
    z: complex,
    x_range: tuple[float, float],
    nodes: int,
    zero_exponent: complex = 0.0,
    infinity_exponent: complex = -1.0,
) -> complex:
    """Compute ∫₀^∞ x^{z-1} func(x) dx for an expensive ``func``.

    Gauss-Legendre nodes in ``log x`` cover ``x_range``. Beyond it ``func`` is
    modelled as ``x^a (c0 + c1 log x)`` with the given exponents ``a`` at 0 and at
    infinity, the coefficients are matched at the range ends. ``func`` is called
    ``nodes + 4`` times.

    Raises
    ------
    DivergentStrip
        If a tail model is not integrable against ``x^{z-1}``.

    """
    z = complex(z)
    x_lo, x_hi = x_range
    u, w = gauss_legendre(math.log(x_lo), math.log(x_hi), nodes)
    x = np.exp(u)
    values = np.array([func(xi) for xi in x], dtype=complex)
    total = complex(np.sum(w * x**z * values))

    c0, c1 = _log_linear_fit(func, x_lo, zero_exponent)
    total += power_log_tail(c0, c1, z + zero_exponent, x_lo, "zero")
    c0, c1 = _log_linear_fit(func, 0.5 * x_hi, infinity_exponent)
    total += power_log_tail(c0, c1, z + infinity_exponent, x_hi, "infinity")
    return total
