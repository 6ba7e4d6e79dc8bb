"""Certified location of the zeros of ``F(s, ·)`` and the regularity exponent B₀(s).

Zeros are counted with the argument principle on rectangles. The known trivial
zeros ``0`` and ``2s-1`` are divided out before counting, so every winding number
counts non-trivial zeros only.
"""
from __future__ import annotations

import logging
import math
import time
import warnings
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import optimize

from neumannx.constants import CERTIFIED_BOX_RADIUS, EXCLUSION_RADIUS
from neumannx.exceptions import (
    AsymptoticRangeWarning,
    NewtonDiverged,
    NoZeroFound,
    SubdivisionBudgetExceeded,
    ZeroOnBoundary,
)
from neumannx.symbols import F_entire, F_scale, Order, OrderLike, as_order, dF_dbeta
from neumannx.util.workers import parallel_map

__all__ = [
    "StripWindow",
    "ZeroRecord",
    "B0Result",
    "B0CurveRow",
    "WindingCertificate",
    "winding_certificate",
    "winding_number",
    "isolate_zeros",
    "real_zeros",
    "tail_bound_M",
    "compute_B0",
    "b0_curve",
    "asymptotic_estimate",
    "solve_s_half_special",
]

_log = logging.getLogger(__name__)

_ZERO_TOL = 1e-12
_RESIDUAL_TOL = 1e-10
_SPLIT_OFFSETS = (0.5, 0.5137, 0.4769, 0.5417)


@dataclass(frozen=True)
class StripWindow:
    """A closed rectangle ``[re_min, re_max] × [im_min, im_max]`` in the β plane.

    Parameters
    ----------
    re_min, re_max :
        Real part range.
    im_max :
        Upper edge. By conjugation symmetry searches use ``Im β ≥ 0`` only.
    im_min :
        Lower edge, slightly negative to enclose real zeros.
    exclusions :
        Discs ``(center, radius)`` around trivial zeros. Centres are divided out
        of ``F`` and zeros inside the discs are not reported.

    """

    re_min: float
    re_max: float
    im_max: float
    im_min: float = 0.0
    exclusions: tuple[tuple[complex, float], ...] = ()

    def __post_init__(self):
        if not self.re_min < self.re_max:
            raise ValueError(f"re_min < re_max required, got {self.re_min, self.re_max}")
        if not self.im_min < self.im_max:
            raise ValueError(f"im_min < im_max required, got {self.im_min, self.im_max}")
        object.__setattr__(
            self, "exclusions", tuple((complex(c), float(r)) for c, r in self.exclusions)
        )

    @property
    def size(self) -> float:
        """Get the longer side length."""
        return max(self.re_max - self.re_min, self.im_max - self.im_min)

    @property
    def center(self) -> complex:
        return complex(
            0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max)
        )

    def corners(self) -> list[complex]:
        """Get the corners in positive orientation, starting bottom left."""
        return [
            complex(self.re_min, self.im_min),
            complex(self.re_max, self.im_min),
            complex(self.re_max, self.im_max),
            complex(self.re_min, self.im_max),
        ]

    def contains(self, beta: complex, margin: float = 0.0) -> bool:
        return (
            self.re_min - margin <= beta.real <= self.re_max + margin
            and self.im_min - margin <= beta.imag <= self.im_max + margin
        )

    def excluded(self, beta: complex) -> bool:
        """Check whether ``beta`` lies in one of the exclusion discs."""
        return any(abs(beta - c) <= r for c, r in self.exclusions)

    def split(self, offset: float = 0.5) -> list[StripWindow]:
        """Split into four children at the relative position ``offset``."""
        re_mid = self.re_min + offset * (self.re_max - self.re_min)
        im_mid = self.im_min + offset * (self.im_max - self.im_min)
        return [
            replace(self, re_max=re_mid, im_max=im_mid),
            replace(self, re_min=re_mid, im_max=im_mid),
            replace(self, re_min=re_mid, im_min=im_mid),
            replace(self, re_max=re_mid, im_min=im_mid),
        ]

    def jittered(self, fraction: float, re_limit: float) -> StripWindow:
        """Grow the window outwards by ``fraction`` of its size."""
        d = fraction * self.size
        return replace(
            self,
            re_min=self.re_min - d,
            re_max=min(self.re_max + d, re_limit),
            im_min=self.im_min - d,
            im_max=self.im_max + d,
        )

    def around(self, beta: complex, half_width: float) -> StripWindow:
        """Get a square box centred at ``beta`` with the same exclusions."""
        return replace(
            self,
            re_min=beta.real - half_width,
            re_max=beta.real + half_width,
            im_min=beta.imag - half_width,
            im_max=beta.imag + half_width,
        )

    def to_dict(self) -> dict:
        return dict(
            re_min=self.re_min,
            re_max=self.re_max,
            im_min=self.im_min,
            im_max=self.im_max,
        )


@dataclass(frozen=True)
class ZeroRecord:
    """An isolated zero of ``F(s, ·)``."""

    beta: complex
    multiplicity: int
    newton_residual: float
    enclosing_box: StripWindow
    certified: bool


@dataclass(frozen=True)
class WindingCertificate:
    """The winding number of a box together with the sampling effort."""

    winding: int
    boundary_samples: int
    exclusions: tuple[tuple[complex, float], ...] = ()


@dataclass(frozen=True)
class B0Result:
    """The optimal boundary exponent B₀(s) and its witness zero."""

    s: float
    B0: float
    witness: ZeroRecord
    lower_theory: float
    upper_theory: float
    within_theory: bool
    real_zero: bool
    tail_M: float
    certified: bool

    def as_row(self) -> dict:
        """Get the result as flat record."""
        return dict(
            s=self.s,
            B0=self.B0,
            B0_im=abs(self.witness.beta.imag),
            lower_theory=self.lower_theory,
            upper_theory=self.upper_theory,
            within_theory=self.within_theory,
            certified=self.certified,
            tail_M=self.tail_M,
        )


@dataclass(frozen=True)
class B0CurveRow:
    """One row of a B₀ sweep."""

    s: float
    result: B0Result = None
    status: str = "ok"
    wallclock_ms: float = field(default=None, compare=False)


# winding numbers ----------------------------------------------------------------------


class _Evaluator:
    """``F(s, ·)`` deflated by the exclusion centres, or a user function."""

    def __init__(
        self,
        order: Order,
        exclusions: Sequence[tuple[complex, float]],
        function: Callable = None,
    ):
        self.order = order
        self.exclusions = tuple(exclusions)
        self.function = function

    def __call__(self, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Return the values and a mask of numerically vanishing samples."""
        if self.function is not None:
            values = np.asarray(self.function(points), dtype=complex)
            return values, np.abs(values) < _ZERO_TOL
        values = F_entire(self.order, points)
        vanishing = np.abs(values) < _ZERO_TOL * F_scale(self.order, points)
        for c, r in self.exclusions:
            distance = points - c
            vanishing &= np.abs(distance) > r
            values = values / distance
        return values, vanishing

    @property
    def centres(self) -> list[complex]:
        if self.function is not None:
            return []
        return [c for c, _ in self.exclusions]


def _sample(evaluator: _Evaluator, a: complex, b: complex, t: np.ndarray):
    length = abs(b - a)
    direction = (b - a) / length
    points = a + (b - a) * t
    for c in evaluator.centres:
        near = np.abs(points - c) < 1e-9 * max(1.0, length)
        points[near] += np.where(t[near] < 0.5, 1.0, -1.0) * 1e-7 * length * direction
    values, vanishing = evaluator(points)
    bad = vanishing | ~np.isfinite(values) | (values == 0)
    if bad.any():
        point = complex(points[np.argmax(bad)])
        raise ZeroOnBoundary(point, f"The function vanishes on the boundary at {point}.")
    return values


def _edge_samples(
    evaluator: _Evaluator, a: complex, b: complex, samples: int, max_samples: int
):
    """Sample an edge until all phase increments are below π/2."""
    t = np.linspace(0.0, 1.0, samples + 1)
    values = _sample(evaluator, a, b, t)
    while True:
        steps = np.angle(values[1:] / values[:-1])
        bad = np.abs(steps) >= 0.5 * np.pi
        if not bad.any():
            return t, values
        if t.size + bad.sum() > max_samples:
            k = int(np.argmax(np.abs(steps)))
            point = complex(a + (b - a) * t[k])
            raise ZeroOnBoundary(
                point, f"Phase of the boundary values is not resolved near {point}."
            )
        middle = 0.5 * (t[:-1][bad] + t[1:][bad])
        index = np.nonzero(bad)[0] + 1
        t = np.insert(t, index, middle)
        values = np.insert(values, index, _sample(evaluator, a, b, middle))


def _phase_change(values: np.ndarray) -> float:
    return float(np.sum(np.angle(values[1:] / values[:-1])))


def winding_certificate(
    s: OrderLike,
    box: StripWindow,
    function: Callable[[np.ndarray], np.ndarray] = None,
    samples: int = 64,
    max_samples: int = 2**14,
) -> WindingCertificate:
    """Count the zeros inside ``box`` by the argument principle.

    Each edge starts with ``samples`` intervals. Intervals whose phase increment
    reaches π/2 are bisected. The count is then recomputed with every interval
    halved and both counts have to agree.

    Parameters
    ----------
    s :
        The fractional order.
    box :
        The rectangle. Its exclusion centres are divided out of ``F``.
    function :
        A vectorised function used instead of ``F(s, ·)``.
    samples :
        Initial number of intervals per edge.
    max_samples :
        Maximum number of samples per edge.

    Raises
    ------
    ZeroOnBoundary
        If the function vanishes on the boundary or its phase cannot be resolved.

    """
    order = as_order(s)
    if function is None:
        _check_window(order, box)
    evaluator = _Evaluator(order, box.exclusions, function)
    corners = box.corners()
    total = 0.0
    guard = 0.0
    count = 0
    for a, b in zip(corners, corners[1:] + corners[:1]):
        t, values = _edge_samples(evaluator, a, b, samples, max_samples)
        total += _phase_change(values)
        middle = 0.5 * (t[:-1] + t[1:])
        fine = np.empty(2 * t.size - 1, dtype=complex)
        fine[0::2] = values
        fine[1::2] = _sample(evaluator, a, b, middle)
        guard += _phase_change(fine)
        count += fine.size - 1

    winding = round(total / (2.0 * math.pi))
    if winding != round(guard / (2.0 * math.pi)) or (
        abs(total / (2.0 * math.pi) - winding) > 0.1
    ):
        raise ZeroOnBoundary(
            box.center, f"Inconsistent winding numbers on box {box.to_dict()}."
        )
    return WindingCertificate(int(winding), count, box.exclusions)


def winding_number(
    s: OrderLike, box: StripWindow, function: Callable[[np.ndarray], np.ndarray] = None
) -> int:
    """Get the number of non-trivial zeros of ``F(s, ·)`` inside ``box``.

    Examples
    --------
    >>> winding_number(0.5, StripWindow(1.0, 1.5, 1.0, im_min=0.1))
    1

    """
    return winding_certificate(s, box, function).winding


# isolation ----------------------------------------------------------------------------


def _check_window(order: Order, window: StripWindow):
    limit = 2.0 * order.s + 1.0 - 1e-6
    if window.re_max > limit:
        raise ValueError(
            f"Windows must end before Re β = 2s + 1 - 1e-6 = {limit}, "
            f"got re_max={window.re_max}."
        )


def _newton(order: Order, beta: complex, max_iterations: int = 50) -> complex:
    for _ in range(max_iterations):
        step = complex(F_entire(order, beta) / dF_dbeta(order, beta))
        beta -= step
        if not np.isfinite(beta):
            break
        if abs(step) <= 1e-14 * max(1.0, abs(beta)):
            return beta
    raise NewtonDiverged(f"Newton iteration did not converge from {beta}.")


def _refine(order: Order, box: StripWindow) -> ZeroRecord | None:
    """Polish the single zero of ``box`` and certify it with a tiny box."""
    try:
        beta = _newton(order, box.center)
    except (NewtonDiverged, ValueError, ZeroDivisionError):
        return None
    if not box.contains(beta) or box.excluded(beta):
        return None
    residual = float(abs(F_entire(order, beta)))
    if residual > _RESIDUAL_TOL * float(F_scale(order, beta)):
        return None
    if abs(beta.imag) <= _ZERO_TOL:
        beta = complex(beta.real, 0.0)
    tiny = box.around(beta, CERTIFIED_BOX_RADIUS)
    try:
        certified = winding_number(order, tiny) == 1
    except ZeroOnBoundary:
        certified = False
    return ZeroRecord(beta, 1, residual, tiny, certified)


def _subdivide(order: Order, box: StripWindow, winding: int):
    for offset in _SPLIT_OFFSETS:
        children = box.split(offset)
        try:
            windings = [winding_number(order, child) for child in children]
        except ZeroOnBoundary as err:
            _log.debug("Split at offset %g failed: %s", offset, err)
            continue
        if sum(windings) != winding:
            _log.debug(
                "Split of %s at offset %g counts %d instead of %d zeros",
                box.to_dict(),
                offset,
                sum(windings),
                winding,
            )
            continue
        return [(c, w) for c, w in zip(children, windings) if w != 0]
    raise SubdivisionBudgetExceeded(
        f"No consistent split of box {box.to_dict()} with winding {winding}."
    )


def _root_winding(order: Order, window: StripWindow, attempts: int = 3):
    limit = 2.0 * order.s + 1.0 - 1e-6
    for _ in range(attempts):
        try:
            return window, winding_number(order, window)
        except ZeroOnBoundary as err:
            _log.info("Jittering search window: %s", err)
            window = window.jittered(1e-4, limit)
    raise ZeroOnBoundary(window.center, f"Window {window.to_dict()} stays degenerate.")


def _finalize(records: Iterable[ZeroRecord], window: StripWindow) -> list[ZeroRecord]:
    kept: list[ZeroRecord] = []
    for record in sorted(records, key=lambda r: (r.beta.real, r.beta.imag)):
        if window.excluded(record.beta):
            continue
        if any(abs(record.beta - other.beta) <= 1e-9 for other in kept):
            continue
        kept.append(record)
    # a zero below the real axis is reported through its conjugate
    return [
        r
        for r in kept
        if r.beta.imag >= 0
        or not any(abs(r.beta.conjugate() - o.beta) <= 1e-9 for o in kept)
    ]


def isolate_zeros(
    s: OrderLike,
    window: StripWindow,
    max_boxes: int = 10000,
    newton_size: float = 0.05,
    min_size: float = 1e-6,
) -> list[ZeroRecord]:
    """Find all non-trivial zeros of ``F(s, ·)`` inside ``window``.

    Boxes with non-zero winding number are split into four children until a
    box of size ``newton_size`` holds a single zero. Newton's method started at its
    centre must converge inside the box, the zero is then certified by a winding
    number of one on a box of half width ``1e-6``. Boxes that still hold several
    zeros at ``min_size`` are reported with that multiplicity and not certified.

    Returns
    -------
    list
        `ZeroRecord` items sorted by real and imaginary part.

    Raises
    ------
    SubdivisionBudgetExceeded
        If more than ``max_boxes`` boxes are processed.

    """
    order = as_order(s)
    _check_window(order, window)
    window, winding = _root_winding(order, window)
    stack = [(window, winding)]
    records: list[ZeroRecord] = []
    processed = 0
    while stack:
        box, winding = stack.pop()
        processed += 1
        if processed > max_boxes:
            raise SubdivisionBudgetExceeded(
                f"More than {max_boxes} boxes needed for window {window.to_dict()}."
            )
        if winding <= 0:
            if winding < 0:
                _log.warning("Negative winding %d on box %s", winding, box.to_dict())
            continue
        if winding == 1 and box.size <= newton_size:
            record = _refine(order, box)
            if record is not None:
                records.append(record)
                continue
        if box.size <= min_size:
            beta = box.center
            residual = float(abs(F_entire(order, beta)))
            records.append(ZeroRecord(beta, winding, residual, box, False))
            continue
        stack.extend(_subdivide(order, box, winding))

    _log.debug("Isolated %d zeros with %d boxes", len(records), processed)
    return _finalize(records, window)


def real_zeros(
    s: OrderLike,
    re_min: float,
    re_max: float,
    exclusions: Sequence[tuple[complex, float]] = (),
    points: int = 2001,
) -> list[float]:
    """Find the real zeros of ``F(s, ·)`` on ``[re_min, re_max]`` by sign changes.

    Sign changes are refined with `scipy.optimize.brentq`. Zeros inside the
    exclusion discs are skipped.

    Examples
    --------
    >>> real_zeros(0.5, 0.1, 1.9)
    []

    """
    order = as_order(s)
    x = np.linspace(re_min, re_max, points)
    values = F_entire(order, x).real

    def excluded(b: float) -> bool:
        return any(abs(b - c) <= r for c, r in exclusions)

    def func(b: float) -> float:
        return float(F_entire(order, b).real)

    found = []
    for a, b, fa, fb in zip(x[:-1], x[1:], values[:-1], values[1:]):
        if excluded(a) or excluded(b):
            continue
        if fa == 0.0:
            found.append(float(a))
        elif fa * fb < 0:
            found.append(optimize.brentq(func, a, b, xtol=1e-14, rtol=4e-16))
    if values[-1] == 0.0 and not excluded(x[-1]):
        found.append(float(x[-1]))
    return found


# B0 -----------------------------------------------------------------------------------


def tail_bound_M(s: OrderLike, re_max: float = None) -> float:
    """Get the height above which ``F(s, ·)`` has no zeros with ``0 < Re β < re_max``.

    For ``β = a + ib`` the bound ``|Γ(x+iy)| ≤ Γ(x)`` gives
    ``|Γ(2s-β)Γ(β+1)/Γ(2s)| ≤ A₁A₂/(Γ(2s)|b|)`` with
    ``A₁ = max Γ(1+c)`` over ``c ∈ [0, re_max]`` and ``A₂ = max Γ(2s+1-a)`` over
    ``a ∈ [0, re_max]``, while ``|sin(π(s-β))|/sin(πs) ≥ (e^{π|b|}-1)/(2 sin πs)``.
    The returned ``M`` is the smallest height on a bisection grid where the second
    bound wins. ``re_max`` defaults to ``2s + ½``.

    Examples
    --------
    >>> 0 < tail_bound_M(0.5) < 10
    True

    """
    order = as_order(s)
    s = order.s
    if re_max is None:
        re_max = 2.0 * s + 0.5
    if not 0 < re_max < 2.0 * s + 1.0:
        raise ValueError(f"re_max must lie in (0, 2s + 1), got {re_max}.")
    # Γ is convex on (0, ∞), so the maxima sit at the interval ends
    a1 = max(1.0, math.gamma(1.0 + re_max))
    a2 = max(math.gamma(2.0 * s + 1.0 - re_max), math.gamma(2.0 * s + 1.0))
    numerator = a1 * a2 / math.gamma(2.0 * s)
    sin_pi_s = order.sin_pi_s

    def holds(b: float) -> bool:
        return numerator / b < math.expm1(math.pi * b) / (2.0 * sin_pi_s)

    hi = 0.125
    while not holds(hi):
        hi *= 2.0
    lo = 0.5 * hi if hi > 0.125 else 0.0
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        if mid > 0 and holds(mid):
            hi = mid
        else:
            lo = mid
    return hi


def compute_B0(s: OrderLike, max_boxes: int = 10000) -> B0Result:
    """Compute B₀(s), the smallest real part of a non-trivial zero of ``F(s, ·)``.

    The search window is ``max(0, 2s-1) + 10⁻⁴ < Re β < min(s+1, 2s+½) + 0.05``
    and ``Im β`` up to `tail_bound_M`, with discs of radius 0.02 around the trivial
    zeros ``0`` and ``2s-1``. Real zeros from a sign scan are merged with the
    isolated complex zeros.

    Raises
    ------
    NoZeroFound
        If the window holds no zero. The window is not widened silently.

    """
    order = as_order(s)
    s = order.s
    limit = 2.0 * s + 1.0 - 1e-6
    lo = max(0.0, 2.0 * s - 1.0) + 1e-4
    hi = min(min(s + 1.0, 2.0 * s + 0.5) + 0.05, limit)
    tail_M = tail_bound_M(order, re_max=hi)
    exclusions = ((0.0, EXCLUSION_RADIUS), (2.0 * s - 1.0, EXCLUSION_RADIUS))
    window = StripWindow(lo, hi, tail_M, im_min=-1e-5, exclusions=exclusions)

    records = isolate_zeros(order, window, max_boxes=max_boxes)
    for root in real_zeros(order, lo, hi, exclusions):
        if any(abs(r.beta - root) <= 1e-8 for r in records):
            continue
        beta = complex(root, 0.0)
        residual = float(abs(F_entire(order, beta)))
        box = window.around(beta, CERTIFIED_BOX_RADIUS)
        # a sign change of the real function certifies the zero
        records.append(ZeroRecord(beta, 1, residual, box, True))

    candidates = [r for r in records if r.beta.imag >= 0]
    if not candidates:
        raise NoZeroFound(
            f"No zero of F(s={s}, ·) with {lo:g} < Re β < {hi:g}, Im β < {tail_M:g}."
        )
    witness = min(candidates, key=lambda r: (r.beta.real, r.beta.imag))
    lower = min(2.0 * s, s + 0.5)
    upper = min(2.0 * s + 0.5, s + 1.0)
    b0 = witness.beta.real
    _log.info("B0(s=%g) = %.10g (witness %s)", s, b0, witness.beta)
    return B0Result(
        s=s,
        B0=b0,
        witness=witness,
        lower_theory=lower,
        upper_theory=upper,
        within_theory=lower < b0 < upper,
        real_zero=witness.beta.imag == 0,
        tail_M=tail_M,
        certified=witness.certified,
    )


def _b0_row(s: float) -> B0CurveRow:
    start = time.perf_counter()
    try:
        result, status = compute_B0(s), "ok"
    except NoZeroFound:
        result, status = None, "no_zero"
    except SubdivisionBudgetExceeded:
        result, status = None, "budget_exceeded"
    except ZeroOnBoundary:
        result, status = None, "boundary_failure"
    elapsed = 1e3 * (time.perf_counter() - start)
    return B0CurveRow(s, result, status, elapsed)


def b0_curve(s_values: Iterable[float], workers: int = None) -> list[B0CurveRow]:
    """Compute B₀ for several orders, in parallel if ``workers > 1``.

    Failing orders yield a row with a status instead of an exception. Rows are
    sorted by ``s`` independent of the execution order.
    """
    values = [as_order(s).s for s in s_values]
    rows = parallel_map(_b0_row, values, workers)
    return sorted(rows, key=lambda row: row.s)


# closed forms -------------------------------------------------------------------------


def asymptotic_estimate(s: OrderLike, endpoint: str) -> complex:
    """Get the leading order location of the B₀ zero near ``s = 0`` or ``s = 1``.

    ``endpoint="one"`` returns ``2 + i√(2(1-s)) - 3(1-s)``, meant for ``s ≥ 0.9``.
    ``endpoint="zero"`` returns ``3s``, meant for ``s ≤ 0.1``.

    Examples
    --------
    >>> asymptotic_estimate(0.05, "zero")
    (0.15000000000000002+0j)

    """
    s = as_order(s).s
    if endpoint == "one":
        if s < 0.9:
            warnings.warn(
                f"The expansion at s = 1 is used at s={s} < 0.9.",
                AsymptoticRangeWarning,
                stacklevel=2,
            )
        return complex(2.0 - 3.0 * (1.0 - s), math.sqrt(2.0 * (1.0 - s)))
    if endpoint == "zero":
        if s > 0.1:
            warnings.warn(
                f"The expansion at s = 0 is used at s={s} > 0.1.",
                AsymptoticRangeWarning,
                stacklevel=2,
            )
        return complex(3.0 * s)
    raise ValueError(f"endpoint must be 'zero' or 'one', got '{endpoint}'.")


def solve_s_half_special(max_iterations: int = 50) -> complex:
    """Get the first zero of ``sin(2πβ) = 2πβ`` in the upper half plane.

    At ``s = ½`` the zeros of ``F`` solve this equation. A grid scan of
    ``[1, 1.5] × [0.2, 0.8]`` seeds Newton's method.

    Raises
    ------
    NewtonDiverged
        If Newton's method does not reach a residual of ``1e-10``.

    """

    def h(beta):
        return np.sin(2.0 * np.pi * beta) - 2.0 * np.pi * beta

    def dh(beta):
        return 2.0 * np.pi * (np.cos(2.0 * np.pi * beta) - 1.0)

    re, im = np.meshgrid(np.linspace(1.0, 1.5, 51), np.linspace(0.2, 0.8, 61))
    grid = re + 1j * im
    beta = complex(grid.flat[np.argmin(np.abs(h(grid)))])
    for _ in range(max_iterations):
        step = complex(h(beta) / dh(beta))
        beta -= step
        if abs(step) <= 1e-15 * abs(beta):
            break
    if not (np.isfinite(beta) and abs(h(beta)) <= 1e-10):
        raise NewtonDiverged(f"Newton iteration for sin(2πβ) = 2πβ ended at {beta}.")
    return complex(beta)
