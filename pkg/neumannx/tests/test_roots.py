"""Tests of the roots module."""
import math

import numpy as np
import pytest

from neumannx import roots
from neumannx.constants import EXCLUSION_RADIUS
from neumannx.exceptions import (
    AsymptoticRangeWarning,
    SubdivisionBudgetExceeded,
    ZeroOnBoundary,
)
from neumannx.roots import (
    StripWindow,
    asymptotic_estimate,
    b0_curve,
    compute_B0,
    isolate_zeros,
    real_zeros,
    solve_s_half_special,
    tail_bound_M,
    winding_certificate,
    winding_number,
)
from neumannx.tests._helpers import get_test_name

S_HALF_ZERO = 1.193292 + 0.4406488j


def _exclusions(s: float):
    return ((0.0, EXCLUSION_RADIUS), (2 * s - 1, EXCLUSION_RADIUS))


# --------------------------------------------------------------------------------------
# StripWindow
# --------------------------------------------------------------------------------------


class TestStripWindow:
    """Test the rectangle type."""

    @staticmethod
    @pytest.mark.parametrize(
        "args, name",
        [
            ((1.0, 1.0, 2.0), "# empty real range"),
            ((0.0, 1.0, -1.0), "# empty imaginary range"),
        ],
        ids=get_test_name,
    )
    def test_invalid(args, name):
        """Test that degenerate windows are rejected."""
        with pytest.raises(ValueError):
            StripWindow(*args)

    @staticmethod
    @pytest.mark.parametrize("offset", [0.5, 0.5137])
    def test_split(offset):
        """Test that the four children tile the parent."""
        box = StripWindow(0.0, 2.0, 1.0, im_min=-1.0)
        children = box.split(offset)
        area = sum((c.re_max - c.re_min) * (c.im_max - c.im_min) for c in children)
        assert len(children) == 4
        assert area == pytest.approx(4.0)
        assert all(c.exclusions == box.exclusions for c in children)

    @staticmethod
    def test_geometry():
        """Test corners, containment and exclusion discs."""
        box = StripWindow(0.0, 1.0, 2.0, exclusions=[(0.5, 0.1)])
        assert box.corners()[0] == 0j and box.corners()[2] == 1 + 2j
        assert box.center == 0.5 + 1j
        assert box.size == 2.0
        assert box.contains(0.2 + 0.3j) and not box.contains(1.2 + 0.3j)
        assert box.excluded(0.55 + 0.05j) and not box.excluded(0.8 + 0j)
        assert box.to_dict() == dict(re_min=0.0, re_max=1.0, im_min=0.0, im_max=2.0)


# --------------------------------------------------------------------------------------
# winding numbers
# --------------------------------------------------------------------------------------


class TestWinding:
    """Test the argument principle counts."""

    @staticmethod
    def test_polynomial():
        """Count the zeros of a polynomial."""
        box = StripWindow(0.0, 1.0, 1.0)

        def poly(b):
            return (b - (0.3 + 0.2j)) * (b - (0.5 + 0.5j)) ** 2 * (b - (2.0 + 0.5j))

        certificate = winding_certificate(0.5, box, poly)
        assert certificate.winding == 3
        assert certificate.boundary_samples >= 4 * 128

    @staticmethod
    def test_zero_on_boundary():
        """Test that a zero on an edge is reported."""
        box = StripWindow(0.0, 1.0, 1.0)
        with pytest.raises(ZeroOnBoundary):
            winding_number(0.5, box, lambda b: b - 0.5)

    @staticmethod
    def test_s_half():
        """Test that the box around the s = 1/2 zero holds one zero."""
        assert winding_number(0.5, StripWindow(1.0, 1.5, 1.0, im_min=0.1)) == 1

    @staticmethod
    def test_window_limit():
        """Test that windows beyond the holomorphy strip are rejected."""
        with pytest.raises(ValueError):
            winding_number(0.3, StripWindow(0.1, 1.7, 1.0))

    @staticmethod
    @pytest.mark.parametrize("s", [0.1, 0.2, 0.3, 0.4])
    def test_zero_free_strip_small_s(s):
        """Test that there is no zero with 0 < Re β < 2s + 0.02."""
        re_max = 2 * s + 0.02
        box = StripWindow(
            1e-3, re_max, tail_bound_M(s, re_max), 1e-3, exclusions=_exclusions(s)
        )
        assert winding_number(s, box) == 0
        assert real_zeros(s, 1e-3, re_max, _exclusions(s)) == []

    @staticmethod
    @pytest.mark.parametrize("s", [0.6, 0.7, 0.8, 0.9])
    def test_zero_free_strip_large_s(s):
        """Test that there is no zero with 2s - 1 < Re β < s + 0.52."""
        re_min, re_max = 2 * s - 1 + 1e-3, s + 0.52
        box = StripWindow(
            re_min, re_max, tail_bound_M(s, re_max), 1e-3, exclusions=_exclusions(s)
        )
        assert winding_number(s, box) == 0
        assert real_zeros(s, re_min, re_max, _exclusions(s)) == []

    @staticmethod
    @pytest.mark.parametrize(
        "s, re_min, re_max",
        [
            (0.1, 0.2, 0.7),
            (0.25, 0.5, 1.0),
            (0.4, 0.8, 1.3),
            (0.6, 1.1, 1.6),
            (0.75, 1.25, 1.75),
            (0.9, 1.4, 1.9),
        ],
    )
    def test_existence_strip(s, re_min, re_max):
        """Test that the strips of the theory hold at least one zero."""
        box = StripWindow(re_min, re_max, tail_bound_M(s, re_max), im_min=-1e-5)
        assert winding_number(s, box) >= 1


# --------------------------------------------------------------------------------------
# isolation and B0
# --------------------------------------------------------------------------------------


class TestIsolation:
    """Test the zero isolation and the B₀ computation."""

    @staticmethod
    def test_isolate_s_half():
        """Test that the s = 1/2 zero is isolated and certified."""
        records = isolate_zeros(0.5, StripWindow(1.0, 1.5, 1.0, im_min=0.1))
        assert len(records) == 1
        record = records[0]
        assert abs(record.beta - S_HALF_ZERO) < 1e-5
        assert record.certified
        assert record.multiplicity == 1
        assert record.enclosing_box.size == pytest.approx(2e-6)

    @staticmethod
    def test_budget():
        """Test that the box budget is enforced."""
        with pytest.raises(SubdivisionBudgetExceeded):
            isolate_zeros(0.5, StripWindow(1.0, 1.5, 1.0, im_min=0.1), max_boxes=1)

    @staticmethod
    def test_compute_B0_s_half():
        """Test B₀(1/2) against the root of sin(2πβ) = 2πβ."""
        result = compute_B0(0.5)
        assert abs(result.B0 - S_HALF_ZERO.real) < 1e-5
        assert abs(result.witness.beta.imag - S_HALF_ZERO.imag) < 1e-5
        assert result.within_theory
        assert result.certified
        assert not result.real_zero
        assert result.as_row()["B0_im"] == pytest.approx(S_HALF_ZERO.imag, abs=1e-5)

    @staticmethod
    def test_solve_s_half_special():
        """Test the closed form equation at s = 1/2."""
        beta = solve_s_half_special()
        assert abs(beta - S_HALF_ZERO) < 1e-6
        assert abs(np.sin(2 * np.pi * beta) - 2 * np.pi * beta) < 1e-9

    @staticmethod
    @pytest.mark.slow
    @pytest.mark.parametrize("s", np.round(np.arange(0.1, 0.9 + 1e-9, 0.05), 2))
    def test_B0_theory_bounds(s):
        """Test min(2s, s+½) < B₀(s) < min(2s+½, s+1)."""
        result = compute_B0(s)
        assert result.within_theory, result.as_row()

    @staticmethod
    @pytest.mark.slow
    def test_B0_endpoints():
        """Test the behaviour of B₀ close to s = 0 and s = 1."""
        small, large = compute_B0(0.05), compute_B0(0.95)
        assert small.B0 < 0.55
        assert large.B0 < 1.90
        assert abs(small.B0 - asymptotic_estimate(0.05, "zero").real) <= 0.03

    @staticmethod
    @pytest.mark.slow
    def test_B0_asymptotics_near_one():
        """Test the witness zero at s = 0.99 against the expansion at s = 1."""
        witness = compute_B0(0.99).witness.beta
        assert abs(witness - asymptotic_estimate(0.99, "one")) <= 0.05


class TestTailBound:
    """Test the height bound of the zeros."""

    @staticmethod
    @pytest.mark.parametrize("s", [0.05, 0.5, 0.95])
    def test_bound_holds(s):
        """Test that the bound is satisfied at M and violated just below."""
        M = tail_bound_M(s)
        re_max = 2 * s + 0.5
        a1 = max(1.0, math.gamma(1 + re_max))
        a2 = max(math.gamma(2 * s + 1 - re_max), math.gamma(2 * s + 1))
        numerator = a1 * a2 / math.gamma(2 * s)
        bound = math.expm1(math.pi * M) / (2 * math.sin(math.pi * s))
        assert numerator / M < bound
        below = M - 1e-5
        assert numerator / below >= math.expm1(math.pi * below) / (
            2 * math.sin(math.pi * s)
        )

    @staticmethod
    def test_monotone_in_window():
        """Test that wider windows need larger heights."""
        assert tail_bound_M(0.5, 1.0) <= tail_bound_M(0.5, 1.9)

    @staticmethod
    @pytest.mark.parametrize("re_max", [0.0, 2.0])
    def test_invalid(re_max):
        """Test that re_max has to lie in (0, 2s + 1)."""
        with pytest.raises(ValueError):
            tail_bound_M(0.5, re_max)


# --------------------------------------------------------------------------------------
# sweeps and closed forms
# --------------------------------------------------------------------------------------


class TestSweep:
    """Test the B₀ sweep."""

    @staticmethod
    @pytest.mark.parametrize(
        "exception, status",
        [
            (SubdivisionBudgetExceeded("budget"), "budget_exceeded"),
            (ZeroOnBoundary(1.0), "boundary_failure"),
            (roots.NoZeroFound("none"), "no_zero"),
        ],
    )
    def test_failure_status(monkeypatch, exception, status):
        """Test that failing orders yield a status instead of an exception."""

        def fail(s):
            raise exception

        monkeypatch.setattr(roots, "compute_B0", fail)
        (row,) = b0_curve([0.5], workers=1)
        assert row.status == status
        assert row.result is None
        assert row.wallclock_ms >= 0

    @staticmethod
    @pytest.mark.slow
    def test_sorted_rows():
        """Test that rows are sorted by s."""
        rows = b0_curve([0.6, 0.4], workers=2)
        assert [row.s for row in rows] == [0.4, 0.6]
        assert all(row.status == "ok" for row in rows)


class TestAsymptotics:
    """Test the endpoint expansions."""

    @staticmethod
    def test_values():
        """Test the expansions inside their range."""
        assert asymptotic_estimate(0.05, "zero") == pytest.approx(0.15)
        expected = complex(2 - 3 * 0.05, math.sqrt(0.1))
        assert asymptotic_estimate(0.95, "one") == pytest.approx(expected)

    @staticmethod
    def test_range_warning():
        """Test the warning outside the range of validity."""
        with pytest.warns(AsymptoticRangeWarning):
            asymptotic_estimate(0.5, "one")

    @staticmethod
    def test_invalid_endpoint():
        """Test that unknown endpoints are rejected."""
        with pytest.raises(ValueError):
            asymptotic_estimate(0.5, "half")
