"""
Operators on step functions: martingale, maximal and integral operators.
"""

from .integrals import (
    FracParams,
    KernelKind,
    SingularKernelModel,
    convolve_project,
    frac_integral,
    fractional_potential_1d,
    hilbert_1d,
    riemann_fractional_1d,
    singular_apply,
)
from .martingale import cond_expect, doob_maximal
from .maximal import (
    dyadic_maximal_shifted,
    hl_maximal_lower,
    iterated_maximal_grid,
    maximal_1d_grid,
    mit_chi_weight,
)

__all__ = [
    "FracParams",
    "KernelKind",
    "SingularKernelModel",
    "cond_expect",
    "convolve_project",
    "doob_maximal",
    "dyadic_maximal_shifted",
    "frac_integral",
    "fractional_potential_1d",
    "hilbert_1d",
    "hl_maximal_lower",
    "iterated_maximal_grid",
    "maximal_1d_grid",
    "mit_chi_weight",
    "riemann_fractional_1d",
    "singular_apply",
]
