"""Tests of the special_functions module."""
import math

import mpmath
import numpy as np
import pytest

from neumannx.exceptions import PoleAt
from neumannx.special_functions import (
    complex_cos_pi,
    complex_gamma,
    complex_log_gamma,
    complex_sin_pi,
    digamma,
    log_sin_pi,
)
from neumannx.tests._helpers import get_test_name, relative_defect

POINTS = [
    0.3,
    2.5,
    1.2 + 0.7j,
    -0.4 + 0.1j,
    -3.7,
    -2.5 + 3.0j,
    0.5 + 12.0j,
    7.3 - 4.2j,
    -10.3 + 0.5j,
]


def random_strip_points(
    count: int, re_max: float, im_max: float, seed: int = 0
) -> np.ndarray:
    """Draw points of |Re z| < re_max, |Im z| < im_max away from the real integers."""
    rng = np.random.default_rng(seed)
    points = []
    while len(points) < count:
        z = complex(rng.uniform(-re_max, re_max), rng.uniform(-im_max, im_max))
        if abs(z - round(z.real)) > 0.05:
            points.append(z)
    return np.array(points)


# --------------------------------------------------------------------------------------
# gamma
# --------------------------------------------------------------------------------------


class TestGamma:
    """Test the complex Gamma and log-Gamma functions."""

    @staticmethod
    @pytest.mark.parametrize("z", POINTS)
    def test_against_mpmath(z):
        """Compare Γ with an arbitrary precision reference."""
        reference = complex(mpmath.gamma(z))
        assert relative_defect(complex_gamma(z), reference) < 1e-12

    @staticmethod
    @pytest.mark.parametrize("z", POINTS)
    def test_log_gamma_exponentiates(z):
        """Test that exp(log Γ(z)) = Γ(z)."""
        reference = complex(mpmath.gamma(z))
        assert relative_defect(np.exp(complex_log_gamma(z)), reference) < 1e-12

    @staticmethod
    def test_recurrence():
        """Test Γ(z + 1) = z Γ(z) on an array."""
        z = np.array([0.2 + 0.3j, 1.7 - 2.0j, -2.3 + 0.4j, 4.1 + 9.0j])
        np.testing.assert_allclose(
            complex_gamma(z + 1), z * complex_gamma(z), rtol=1e-12
        )

    @staticmethod
    def test_reflection():
        """Test Γ(z) Γ(1 - z) sin(πz) / π = 1 on 50 random points."""
        z = random_strip_points(50, re_max=5.0, im_max=20.0, seed=5)
        lhs = complex_gamma(z) * complex_gamma(1 - z) * complex_sin_pi(z) / np.pi
        np.testing.assert_allclose(lhs, 1.0, rtol=1e-11)

    @staticmethod
    @pytest.mark.parametrize("x", [0.3, 1.1, 2.5])
    @pytest.mark.parametrize("y", [0.1, 1.0, 10.0])
    def test_modulus_bound(x, y):
        """Test |Γ(x + iy)| <= Γ(x)."""
        assert abs(complex_gamma(complex(x, y))) <= math.gamma(x)

    @staticmethod
    def test_conjugation():
        """Test Γ(z̄) = conj Γ(z)."""
        z = np.array([0.7 + 1.3j, -0.6 + 2.2j, 3.0 + 0.1j])
        np.testing.assert_allclose(
            complex_gamma(np.conj(z)), np.conj(complex_gamma(z)), rtol=1e-13
        )

    @staticmethod
    @pytest.mark.parametrize("x", [0.25, 0.5, 1.5])
    def test_stirling_limit(x):
        """Test |Γ(x + iy)| ≈ √(2π) |y|^{x-1/2} e^{-π|y|/2} at |Im| = 40."""
        y = 40.0
        estimate = np.sqrt(2 * np.pi) * y ** (x - 0.5) * np.exp(-np.pi * y / 2)
        assert abs(abs(complex_gamma(x + 1j * y)) / estimate - 1) < 0.02

    @staticmethod
    def test_scalar_and_array_shape():
        """Test that scalars stay scalars and arrays keep their shape."""
        assert np.ndim(complex_gamma(0.5)) == 0
        assert complex_gamma(np.ones((2, 3))).shape == (2, 3)

    @staticmethod
    @pytest.mark.parametrize(
        "func, z, name",
        [
            (complex_gamma, 0.0, "# gamma at 0"),
            (complex_gamma, -3.0, "# gamma at -3"),
            (complex_log_gamma, -1.0 + 1e-14j, "# log gamma near -1"),
            (digamma, -2.0, "# digamma at -2"),
            (complex_gamma, np.array([1.0, -4.0]), "# gamma on array"),
        ],
        ids=get_test_name,
    )
    def test_poles_raise(func, z, name):
        """Test that poles raise instead of returning inf."""
        with pytest.raises(PoleAt):
            func(z)


# --------------------------------------------------------------------------------------
# digamma
# --------------------------------------------------------------------------------------


class TestDigamma:
    """Test the digamma function."""

    @staticmethod
    @pytest.mark.parametrize("z", POINTS + [-45.3 + 0.2j])
    def test_against_mpmath(z):
        """Compare ψ with an arbitrary precision reference."""
        reference = complex(mpmath.digamma(z))
        assert abs(digamma(z) - reference) <= 1e-12 * max(1.0, abs(reference))

    @staticmethod
    def test_recurrence():
        """Test ψ(z + 1) = ψ(z) + 1/z."""
        z = np.array([0.1 + 0.5j, -3.4 + 1.0j, 12.0 - 7.0j])
        np.testing.assert_allclose(digamma(z + 1), digamma(z) + 1 / z, rtol=1e-12)

    @staticmethod
    def test_reflection():
        """Test ψ(1 - z) - ψ(z) = π cot(πz)."""
        z = np.array([0.3 + 0.2j, -1.4 + 0.7j])
        cot = complex_cos_pi(z) / complex_sin_pi(z)
        np.testing.assert_allclose(
            digamma(1 - z) - digamma(z), np.pi * cot, rtol=1e-11
        )

    @staticmethod
    def test_log_gamma_derivative():
        """Compare central differences of log Γ with ψ on 20 points."""
        rng = np.random.default_rng(17)
        z = rng.uniform(0.6, 8.0, 20) + 1j * rng.uniform(-10.0, 10.0, 20)
        h = 1e-5
        numeric = (complex_log_gamma(z + h) - complex_log_gamma(z - h)) / (2 * h)
        assert np.max(np.abs(numeric - digamma(z))) <= 1e-6

    @staticmethod
    def test_series():
        """Test ψ(1) = -γ and the series ψ(z) = -γ + Σ (z-1)/((k+1)(k+z))."""
        assert abs(digamma(1.0) + np.euler_gamma) < 1e-14
        z, n = 2.5 + 1.0j, 10**6
        k = np.arange(n, dtype=float)
        series = np.sum((z - 1) / ((k + 1) * (k + z))) + (z - 1) / n
        assert abs(digamma(z) - (series - np.euler_gamma)) < 1e-9

    @staticmethod
    @pytest.mark.parametrize("x", [0.4, 0.6, 1.0, 2.5])
    def test_imaginary_part(x):
        """Test Im ψ(x + 2i) > 0, bounded by π/2 for x >= 1/2."""
        value = complex(digamma(complex(x, 2.0)))
        assert value.imag > 0
        if x >= 0.5:
            assert value.imag <= np.pi / 2
        assert abs(value - complex(mpmath.digamma(complex(x, 2.0)))) < 1e-12


# --------------------------------------------------------------------------------------
# trigonometric functions
# --------------------------------------------------------------------------------------


class TestTrig:
    """Test the exactly reduced trigonometric functions."""

    @staticmethod
    @pytest.mark.parametrize("n", [-3, -1, 0, 2, 7])
    def test_sin_exact_zeros(n):
        """Test that sin(πn) is exactly zero at integers."""
        assert complex(complex_sin_pi(float(n))) == 0

    @staticmethod
    @pytest.mark.parametrize("z", [0.3 + 0.4j, -2.7 + 1.5j, 0.25 + 35.0j, 1.1 - 50.0j])
    def test_against_mpmath(z):
        """Compare sin(πz) and cos(πz) with mpmath."""
        assert relative_defect(complex_sin_pi(z), complex(mpmath.sinpi(z))) < 1e-12
        assert relative_defect(complex_cos_pi(z), complex(mpmath.cospi(z))) < 1e-12

    @staticmethod
    def test_half_integer():
        """Test sin(π/2) = 1 and cos(π/2) = 0 exactly."""
        assert complex(complex_sin_pi(0.5)) == 1
        assert complex(complex_cos_pi(0.5)) == 0

    @staticmethod
    def test_pythagoras():
        """Test sin²(πz) + cos²(πz) = 1."""
        z = 1.2 - 0.8j
        value = complex_sin_pi(z) ** 2 + complex_cos_pi(z) ** 2
        assert abs(value - 1) < 1e-12

    @staticmethod
    def test_growth_bound():
        """Test |sin(π(x + iy))| >= (e^{π|y|} - 1)/2."""
        assert abs(complex_sin_pi(0.3 + 5.0j)) >= (np.exp(5 * np.pi) - 1) / 2

    @staticmethod
    def test_log_sin_pi_far_from_axis():
        """Test that log sin(πz) stays finite where sin(πz) overflows."""
        value = complex(log_sin_pi(0.3 + 400.0j))
        assert np.isfinite(value)
        assert abs(value.real - (400.0 * np.pi - np.log(2.0))) < 1e-10
