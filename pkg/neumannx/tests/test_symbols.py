"""Tests of the symbols module."""
import math

import mpmath
import numpy as np
import pytest

from neumannx.exceptions import PoleAt
from neumannx.symbols import (
    F_entire,
    F_scale,
    Order,
    c_beta,
    dF_dbeta,
    f1_f2_symbols,
    f_symbol,
    fractional_laplacian_symbol,
    g_aux,
    halfline_symbols,
    nearest_pole,
)
from neumannx.tests._helpers import get_test_name, random_betas, relative_defect

ORDERS = [0.1, 0.3, 0.5, 0.7, 0.9]


def f_reference(s: float, beta: complex) -> complex:
    """Evaluate f = f_{L,+} - 2s c_s C_β² in arbitrary precision."""
    with mpmath.workdps(40):
        s_mp, b = mpmath.mpf(s), mpmath.mpc(beta)
        c_s = (
            s_mp
            * 4**s_mp
            * mpmath.gamma(0.5 + s_mp)
            / (mpmath.sqrt(mpmath.pi) * mpmath.gamma(1 - s_mp))
        )
        f_lplus = (
            mpmath.gamma(b + 1)
            / mpmath.gamma(b - 2 * s_mp + 1)
            * mpmath.sinpi(b - s_mp)
            / mpmath.sinpi(b - 2 * s_mp)
        )
        c = (
            mpmath.gamma(2 * s_mp - b)
            * mpmath.gamma(b + 1)
            / mpmath.gamma(1 + 2 * s_mp)
        )
        return complex(f_lplus - 2 * s_mp * c_s * c**2)


# --------------------------------------------------------------------------------------
# Order
# --------------------------------------------------------------------------------------


class TestOrder:
    """Test the fractional order type."""

    @staticmethod
    @pytest.mark.parametrize("s", [0.0, 1.0, -0.2, 1.5])
    def test_invalid(s):
        """Test that orders outside (0, 1) are rejected."""
        with pytest.raises(ValueError):
            Order(s)

    @staticmethod
    @pytest.mark.parametrize("s", ORDERS)
    def test_constant(s):
        """Compare c_s with its Gamma function definition."""
        reference = (
            s * 4**s * math.gamma(0.5 + s) / (math.sqrt(math.pi) * math.gamma(1 - s))
        )
        assert abs(Order(s).c_1s - reference) < 1e-13 * reference


# --------------------------------------------------------------------------------------
# f
# --------------------------------------------------------------------------------------


class TestSymbol:
    """Test the Mellin symbol f and its identities."""

    @staticmethod
    @pytest.mark.parametrize("s", [0.3, 0.5, 0.8])
    @pytest.mark.parametrize("beta", [0.2 + 0.5j, 1.1 - 0.3j, -0.6 + 1.2j, 0.45])
    def test_against_mpmath(s, beta):
        """Compare both printed forms with an arbitrary precision reference."""
        reference = f_reference(s, beta)
        for form in ("product", "difference"):
            assert relative_defect(f_symbol(s, beta, form).value, reference) < 1e-10

    @staticmethod
    @pytest.mark.parametrize("s", ORDERS)
    def test_forms_agree(s):
        """Test that the product and the difference form agree."""
        for beta in random_betas(s):
            product = f_symbol(s, beta, "product").value
            difference = f_symbol(s, beta, "difference").value
            assert relative_defect(difference, product) < 1e-10, beta

    @staticmethod
    @pytest.mark.parametrize("s", ORDERS)
    def test_reflection_symmetry(s):
        """Test f(β) = f(2s - 1 - β)."""
        for beta in random_betas(s, seed=7):
            value = f_symbol(s, beta).value
            mirrored = f_symbol(s, 2 * s - 1 - beta).value
            assert relative_defect(mirrored, value) < 1e-10, beta

    @staticmethod
    @pytest.mark.parametrize("s", ORDERS)
    def test_conjugation(s):
        """Test f(β̄) = conj f(β)."""
        for beta in random_betas(s, seed=11):
            value = f_symbol(s, beta).value
            conjugate = f_symbol(s, beta.conjugate()).value
            assert relative_defect(conjugate, value.conjugate()) < 1e-10, beta

    @staticmethod
    def test_no_zeros_far_from_axis():
        """Test |f(1 + it)| >= |t|/4 for s = 1/2 and t in [20, 60]."""
        for t in np.linspace(20.0, 60.0, 41):
            assert abs(f_symbol(0.5, complex(1.0, t)).value) >= 0.25 * t, t

    @staticmethod
    @pytest.mark.parametrize("s", ORDERS)
    def test_trivial_zeros(s):
        """Test that 0 and 2s - 1 are exact zeros."""
        assert f_symbol(s, 0.0).value == 0
        assert f_symbol(s, 2 * s - 1).value == 0
        assert not f_symbol(s, 0.0).is_pole

    @staticmethod
    @pytest.mark.parametrize(
        "s, beta, name",
        [
            (0.3, 0.6, "# first pole 2s"),
            (0.3, 2.6, "# pole 2s + 2"),
            (0.7, -1.0, "# pole -1"),
            (0.7, -3.0, "# pole -3"),
        ],
        ids=get_test_name,
    )
    def test_poles(s, beta, name):
        """Test that poles are flagged with an infinite value."""
        result = f_symbol(s, beta)
        assert result.is_pole
        assert math.isinf(abs(result.value))
        assert abs(result.nearest_pole - beta) < 1e-12

    @staticmethod
    def test_removable_singularity():
        """Test that β ∈ 2s - ℕ is evaluated through the reduced form."""
        s = 0.35
        value = f_symbol(s, 2 * s - 1 + 1e-3).value
        # 2s - 1 is a trivial zero, so f is small next to it but finite
        assert np.isfinite(value)
        assert abs(value) < 5e-2
        beta = -0.3 + 0.2j
        assert relative_defect(f_symbol(s, beta).value, f_reference(s, beta)) < 1e-10

    @staticmethod
    def test_known_zero_s_half():
        """Test that the first non-trivial zero for s = 1/2 is a zero of f."""
        beta = 1.1932920 + 0.4406488j
        assert abs(f_symbol(0.5, beta).value) < 1e-5

    @staticmethod
    def test_unknown_form():
        """Test that unknown forms are rejected."""
        with pytest.raises(ValueError):
            f_symbol(0.5, 0.3, form="sum")

    @staticmethod
    @pytest.mark.parametrize(
        "s, beta, expected",
        [(0.25, 0.6, 0.5), (0.25, -1.3, -1.0), (0.4, 3.1, 2.8), (0.4, 0.1, 0.8)],
    )
    def test_nearest_pole(s, beta, expected):
        """Test the nearest genuine pole."""
        assert abs(nearest_pole(s, beta) - expected) < 1e-14


# --------------------------------------------------------------------------------------
# g, F and dF
# --------------------------------------------------------------------------------------


class TestEntireSurrogate:
    """Test the auxiliary function g and the entire surrogate F."""

    @staticmethod
    @pytest.mark.parametrize("s", ORDERS)
    def test_F_g_relation(s):
        """Test F = -(2s - β) sin(πs) g on random points of the holomorphy strip."""
        betas = np.array([b for b in random_betas(s, seed=3) if b.real < 2 * s + 0.9])
        lhs = F_entire(s, betas)
        rhs = -(2 * s - betas) * math.sin(math.pi * s) * g_aux(s, betas)
        scale = F_scale(s, betas)
        assert np.max(np.abs(lhs - rhs) / scale) < 1e-12

    @staticmethod
    @pytest.mark.parametrize("s", ORDERS)
    def test_value_at_2s(s):
        """Test F(s, 2s) = -2s sin(πs)."""
        expected = -2 * s * math.sin(math.pi * s)
        assert abs(F_entire(s, 2 * s) - expected) < 1e-12

    @staticmethod
    @pytest.mark.parametrize("s", [0.2, 0.5, 0.85])
    def test_shares_zeros(s):
        """Test that the trivial zeros of f are zeros of F."""
        assert abs(F_entire(s, 0.0)) < 1e-13
        assert abs(F_entire(s, 2 * s - 1)) < 1e-13

    @staticmethod
    def test_holomorphy_strip():
        """Test that F refuses arguments at or beyond 2s + 1."""
        with pytest.raises(ValueError):
            F_entire(0.3, 1.6)
        with pytest.raises(ValueError):
            dF_dbeta(0.3, np.array([0.5, 1.7 + 1j]))

    @staticmethod
    @pytest.mark.parametrize("beta", [0.3 + 0.2j, 1.2 + 0.4j, -0.5 + 2.0j])
    def test_derivative(beta):
        """Compare dF/dβ with a central difference."""
        s, h = 0.5, 1e-5
        numeric = (F_entire(s, beta + h) - F_entire(s, beta - h)) / (2 * h)
        assert relative_defect(dF_dbeta(s, beta), numeric) < 1e-7

    @staticmethod
    def test_c_beta():
        """Test C_β against its Beta function representation."""
        s, beta = 0.4, 0.3
        reference = (
            math.gamma(2 * s - beta) * math.gamma(beta + 1) / math.gamma(1 + 2 * s)
        )
        assert relative_defect(c_beta(s, beta), reference) < 1e-13

    @staticmethod
    @pytest.mark.parametrize(
        "s, beta, name",
        [
            (0.5, 1.0 + 1e-10, "# 2s"),
            (0.3, 1.6 - 1e-10, "# 2s + 1"),
            (0.4, -1.0 + 1e-10j, "# -1"),
            (0.7, -3.0 - 1e-10, "# -3"),
            (0.5, np.array([0.3, 2.0 + 1e-10]), "# array"),
        ],
        ids=get_test_name,
    )
    def test_c_beta_poles(s, beta, name):
        """Test that C_β raises within the symbol pole tolerance."""
        with pytest.raises(PoleAt):
            c_beta(s, beta)

    @staticmethod
    def test_c_beta_near_pole():
        """Test that C_β is finite just outside the pole tolerance."""
        assert abs(c_beta(0.5, 1.0 + 1e-8)) > 1e7
        np.testing.assert_allclose(c_beta(0.4, [0.0, 0.0]), [1.25, 1.25], rtol=1e-12)

    @staticmethod
    def test_derivative_conjugation():
        """Test dF/dβ(β̄) = conj dF/dβ(β)."""
        beta = 0.9 + 0.2j
        value = dF_dbeta(0.3, beta)
        assert relative_defect(dF_dbeta(0.3, np.conj(beta)), np.conj(value)) < 1e-12


# --------------------------------------------------------------------------------------
# half-line and half-space symbols
# --------------------------------------------------------------------------------------


class TestHalflineSymbols:
    """Test the symbols of the half-line and half-space problems."""

    @staticmethod
    @pytest.mark.parametrize("s", ORDERS)
    def test_decomposition(s):
        """Test f = f_{L,+} + 2s C_β f_{N,+} with f_{L,-} = f_{N,+} = -c_s C_β."""
        beta = complex(0.7 * s, 0.3)
        parts = halfline_symbols(s, beta)
        c = complex(c_beta(s, beta))
        assert parts["fL_minus"] == parts["fN_plus"]
        assert abs(parts["fN_minus"] - Order(s).c_1s / (2 * s)) < 1e-15
        f_value = parts["fL_plus"] + 2 * s * parts["fN_plus"] * c
        assert relative_defect(f_value, f_symbol(s, beta).value) < 1e-10

    @staticmethod
    @pytest.mark.parametrize("s", [0.2, 0.6])
    def test_dirichlet_zeros(s):
        """Test that f_{L,+} vanishes at β = s and β = s - 1."""
        assert abs(fractional_laplacian_symbol(s, s)) == 0
        assert abs(fractional_laplacian_symbol(s, s - 1)) == 0

    @staticmethod
    def test_pole_raises():
        """Test that the half-line symbols raise at poles."""
        with pytest.raises(PoleAt):
            halfline_symbols(0.3, 0.6)

    @staticmethod
    @pytest.mark.parametrize("s", [0.3, 0.75])
    def test_half_space_symbols(s):
        """Test f₁ = f and the stated multiple f₂ of f."""
        beta = complex(0.5 * s, 0.4)
        f1, f2 = f1_f2_symbols(s, beta)
        assert f1.value == f_symbol(s, beta).value
        multiple = -complex(
            mpmath.gamma(1 + 2 * s)
            / (2 * s * mpmath.gamma(2 * s - beta) * mpmath.gamma(beta + 1))
        )
        assert relative_defect(f2.value, multiple * f1.value) < 1e-12

    @staticmethod
    def test_half_space_pole():
        """Test that both half-space symbols are infinite at β = 2s."""
        f1, f2 = f1_f2_symbols(0.4, 0.8)
        assert f1.is_pole and f2.is_pole
        assert math.isinf(abs(f2.value))

    @staticmethod
    def test_half_space_near_pole():
        """Test that both half-space symbols are large next to β = 2s."""
        f1, f2 = f1_f2_symbols(0.4, 0.8 + 1e-8)
        assert not f1.is_pole
        assert abs(f1.value) > 1e6
        assert abs(f2.value) > 1e6

    @staticmethod
    def test_half_space_trivial_zero():
        """Test that f₂ inherits the trivial zero 2s - 1."""
        _, f2 = f1_f2_symbols(0.8, 0.6)
        assert abs(f2.value) < 1e-14
