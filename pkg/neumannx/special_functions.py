"""Complex Gamma, log-Gamma, digamma and trigonometric functions.

All functions accept scalars or array-likes and return numpy complex values of the
same shape. Poles are never silently turned into ``inf``: evaluating within
`~neumannx.constants.GAMMA_POLE_TOL` of a non-positive integer raises
`~neumannx.exceptions.PoleAt`.
"""
from __future__ import annotations

import numpy as np

from neumannx.constants import GAMMA_POLE_TOL
from neumannx.exceptions import PoleAt
from neumannx.types import ArrayLike

__all__ = [
    "complex_gamma",
    "complex_log_gamma",
    "digamma",
    "complex_sin_pi",
    "complex_cos_pi",
    "log_sin_pi",
]

# Lanczos approximation with g = 7 and 9 coefficients (Godfrey)
_LANCZOS_G = 7.0
_LANCZOS_COEF = np.array(
    [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ]
)
_HALF_LOG_2PI = 0.5 * np.log(2.0 * np.pi)
_LOG_PI = np.log(np.pi)

# B_2k / (2k) for the digamma asymptotic series
_DIGAMMA_SERIES = np.array(
    [
        1.0 / 6.0 / 2.0,
        -1.0 / 30.0 / 4.0,
        1.0 / 42.0 / 6.0,
        -1.0 / 30.0 / 8.0,
        5.0 / 66.0 / 10.0,
        -691.0 / 2730.0 / 12.0,
        7.0 / 6.0 / 14.0,
    ]
)
_DIGAMMA_SHIFT = 8.0
_MAX_RECURRENCE = 64
_LARGE_IMAG = 30.0


# helper -------------------------------------------------------------------------------


def _as_complex(z: ArrayLike) -> tuple[np.ndarray, bool]:
    arr = np.asarray(z, dtype=np.complex128)
    return np.atleast_1d(arr).copy(), arr.ndim == 0


def _restore(values: np.ndarray, scalar: bool):
    if scalar:
        return values[0]
    return values


def _check_poles(z: np.ndarray, tol: float = GAMMA_POLE_TOL):
    """Raise `PoleAt` if any element lies within ``tol`` of 0, -1, -2, ..."""
    nearest = np.minimum(np.round(z.real), 0.0)
    close = np.abs(z - nearest) <= tol
    if np.any(close):
        idx = np.flatnonzero(close)[0]
        raise PoleAt(
            z[idx],
            f"{z[idx]} is within {tol:g} of the Gamma pole at {nearest[idx]:g}.",
        )


def _lanczos_log_gamma(z: np.ndarray) -> np.ndarray:
    """Evaluate log Γ(z) for Re z >= 0.5."""
    zm = z - 1.0
    series = np.full_like(zm, _LANCZOS_COEF[0])
    for k in range(1, len(_LANCZOS_COEF)):
        series = series + _LANCZOS_COEF[k] / (zm + k)
    t = zm + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (zm + 0.5) * np.log(t) - t + np.log(series)


def _log_sin_pi(z: np.ndarray) -> np.ndarray:
    """Evaluate log sin(πz) without forming exp(π|Im z|).

    The branch is not continuous; only ``exp`` of the result is meaningful.
    """
    n = np.round(z.real)
    r = z - n
    upper = r.imag >= 0
    rr = np.where(upper, r, np.conj(r))
    with np.errstate(divide="ignore", invalid="ignore"):
        val = -1j * np.pi * rr + np.log(np.expm1(2j * np.pi * rr)) - np.log(2j)
    val = np.where(upper, val, np.conj(val))
    return val + 1j * np.pi * np.mod(n, 2.0)


def _trig_pi(z: np.ndarray, quarter_shift: int) -> np.ndarray:
    """Evaluate sin(πz + quarter_shift·π/2) with exact argument reduction."""
    out = np.empty_like(z)
    large = np.abs(z.imag) > _LARGE_IMAG
    if np.any(large):
        out[large] = np.exp(_log_sin_pi(z[large] + 0.5 * quarter_shift))
    small = ~large
    if np.any(small):
        zs = z[small]
        n = np.round(2.0 * zs.real)
        r = zs - 0.5 * n
        a = np.pi * r.real
        b = np.pi * r.imag
        sin_r = np.sin(a) * np.cosh(b) + 1j * np.cos(a) * np.sinh(b)
        cos_r = np.cos(a) * np.cosh(b) - 1j * np.sin(a) * np.sinh(b)
        quadrant = np.mod(n + quarter_shift, 4.0)
        out[small] = np.select(
            [quadrant == 0, quadrant == 1, quadrant == 2],
            [sin_r, cos_r, -sin_r],
            default=-cos_r,
        )
    return out


def _log_gamma(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    right = z.real >= 0.5
    if np.any(right):
        out[right] = _lanczos_log_gamma(z[right])
    left = ~right
    if np.any(left):
        zl = z[left]
        shifts = np.ceil(0.5 - zl.real)
        near = shifts <= _MAX_RECURRENCE
        res = np.empty_like(zl)
        if np.any(near):
            zn = zl[near]
            nn = shifts[near]
            acc = np.zeros_like(zn)
            for k in range(int(nn.max())):
                active = k < nn
                acc[active] += np.log(zn[active] + k)
            res[near] = _lanczos_log_gamma(zn + nn) - acc
        far = ~near
        if np.any(far):
            zf = zl[far]
            res[far] = _LOG_PI - _log_sin_pi(zf) - _lanczos_log_gamma(1.0 - zf)
        out[left] = res
    return out


def _digamma_asymptotic(w: np.ndarray) -> np.ndarray:
    inv2 = 1.0 / (w * w)
    series = np.zeros_like(w)
    for coef in _DIGAMMA_SERIES[::-1]:
        series = (series + coef) * inv2
    return np.log(w) - 0.5 / w - series


# public -------------------------------------------------------------------------------


def complex_log_gamma(z: ArrayLike):
    """Compute log Γ(z) for complex arguments.

    For ``Re z >= 0.5`` the Lanczos approximation is used, which is continuous along
    vertical lines. Arguments further left are shifted with the recurrence
    ``log Γ(z) = log Γ(z + n) - Σ log(z + k)``, far left arguments use the reflection
    formula.

    Parameters
    ----------
    z :
        Scalar or array of complex arguments.

    Returns
    -------
    numpy.complex128 or numpy.ndarray
        log Γ(z) such that ``exp(result) = Γ(z)``.

    Raises
    ------
    PoleAt
        If any argument is a non-positive integer (within tolerance).

    Examples
    --------
    >>> abs(complex_log_gamma(1.0)) < 1e-14
    True
    >>> abs(complex_log_gamma(2.0)) < 1e-14
    True

    """
    z, scalar = _as_complex(z)
    _check_poles(z)
    return _restore(_log_gamma(z), scalar)


def complex_gamma(z: ArrayLike):
    """Compute Γ(z) for complex arguments.

    Uses the Lanczos approximation for ``Re z >= 0.5`` and the reflection formula
    ``Γ(z) = π / (sin(πz) Γ(1 - z))`` below, both assembled in log space.

    Raises
    ------
    PoleAt
        If any argument is a non-positive integer (within tolerance).

    Examples
    --------
    >>> abs(complex_gamma(0.5) - 1.7724538509055160) < 1e-14
    True

    """
    z, scalar = _as_complex(z)
    _check_poles(z)
    out = np.empty_like(z)
    right = z.real >= 0.5
    if np.any(right):
        out[right] = np.exp(_lanczos_log_gamma(z[right]))
    left = ~right
    if np.any(left):
        zl = z[left]
        out[left] = np.exp(_LOG_PI - _log_sin_pi(zl) - _lanczos_log_gamma(1.0 - zl))
    return _restore(out, scalar)


def digamma(z: ArrayLike):
    """Compute the digamma function ψ(z) = Γ'(z)/Γ(z).

    Arguments are shifted to ``Re z >= 8`` by the recurrence
    ``ψ(z) = ψ(z + 1) - 1/z`` and then evaluated by the asymptotic series with
    Bernoulli coefficients. Far left arguments use the reflection formula.

    Raises
    ------
    PoleAt
        If any argument is a non-positive integer (within tolerance).

    """
    z, scalar = _as_complex(z)
    _check_poles(z)
    out = np.empty_like(z)
    reflect = z.real < -40.0
    direct = ~reflect
    if np.any(direct):
        w = z[direct]
        shifts = np.maximum(np.ceil(_DIGAMMA_SHIFT - w.real), 0.0)
        acc = np.zeros_like(w)
        for k in range(int(shifts.max()) if shifts.size else 0):
            active = k < shifts
            acc[active] += 1.0 / (w[active] + k)
        out[direct] = _digamma_asymptotic(w + shifts) - acc
    if np.any(reflect):
        zr = z[reflect]
        cot = _trig_pi(zr, 1) / _trig_pi(zr, 0)
        out[reflect] = _digamma_asymptotic(1.0 - zr) - np.pi * cot
    return _restore(out, scalar)


def complex_sin_pi(z: ArrayLike):
    """Compute sin(πz).

    The argument is reduced exactly by multiples of 1/2, so the function is exact at
    integers and half-integers. For ``|Im z| > 30`` the value is computed from its
    logarithm.

    Examples
    --------
    >>> complex(complex_sin_pi(0.5))
    (1+0j)
    >>> complex(complex_sin_pi(3.0)) == 0
    True

    """
    z, scalar = _as_complex(z)
    return _restore(_trig_pi(z, 0), scalar)


def complex_cos_pi(z: ArrayLike):
    """Compute cos(πz) with the same argument reduction as `complex_sin_pi`."""
    z, scalar = _as_complex(z)
    return _restore(_trig_pi(z, 1), scalar)


def log_sin_pi(z: ArrayLike):
    """Compute a logarithm of sin(πz) that never overflows.

    Only ``exp`` of the result is well defined, the imaginary part may jump by
    multiples of 2π. At integers the result is ``-inf``.
    """
    z, scalar = _as_complex(z)
    return _restore(_log_sin_pi(z), scalar)
