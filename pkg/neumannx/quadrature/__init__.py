"""Quadrature oracles for the regional Neumann kernel and operator."""
# isort:skip_file
from neumannx.quadrature.core import (
    QuadratureSpec,
    binomial_tail,
    gauss_legendre,
    integrate_complex,
    integrate_real,
    log_moment,
    power_log_tail,
    resolve_spec,
)
from neumannx.quadrature.kernel import (
    kernel_k_correction,
    kernel_k_row_integral,
    regional_kernel,
)
from neumannx.quadrature.operator import (
    TestFunction,
    apply_fractional_laplacian_power,
    apply_L_power,
    apply_L_test,
    neumann_extension,
    quadratic_bump,
    power_function,
    selfadjoint_check,
)

__all__ = [
    "QuadratureSpec",
    "TestFunction",
    "apply_L_power",
    "apply_L_test",
    "apply_fractional_laplacian_power",
    "binomial_tail",
    "gauss_legendre",
    "log_moment",
    "power_log_tail",
    "integrate_complex",
    "integrate_real",
    "kernel_k_correction",
    "kernel_k_row_integral",
    "neumann_extension",
    "quadratic_bump",
    "power_function",
    "regional_kernel",
    "resolve_spec",
    "selfadjoint_check",
]


from ..util import _patch_mod_all  # noqa

_patch_mod_all("neumannx.quadrature")
del _patch_mod_all
