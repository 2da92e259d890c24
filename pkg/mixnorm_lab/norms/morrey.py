"""
Morrey and Bourgain-Morrey norms over dyadic and shifted dyadic grids.

The Bourgain-Morrey norm sums |Q|^{r(1/t-σ)}‖fχ_Q‖^r over every dyadic cube.
For a step function on [0, 2^K)^n at resolution J only the levels [-K, J]
need explicit cube sums; the coarser levels see one cube containing the whole
window and the finer levels see cubes inside single cells, and both form
geometric series summed in closed form.
"""

from __future__ import annotations

import math
from collections.abc import Sequence

import dagster as dg
import numpy as np

from mixnorm_lab.grid import (
    StepFunction,
    VectorStepFunction,
    block_mixed_norms,
    cubes_intersecting_window,
    padded_blocks,
)
from mixnorm_lab.models import ExponentVector, NormBracket, Regime, SpaceParams

from .mixed import mixed_norm, weighted_mixed_norm
from .weights import AxisWeightProfile

logger = dg.get_dagster_logger("mixnorm_lab.norms")


def _check_dimension(f: StepFunction, params: SpaceParams) -> None:
    if params.n != f.n:
        raise ValueError(
            f"parameters of dimension {params.n} for a function of dimension {f.n}"
        )


def level_cube_norms(
    f: StepFunction,
    level: int,
    pbar: ExponentVector,
    shift: Sequence[int] | None = None,
) -> np.ndarray:
    """
    ‖fχ_Q‖_{L^{p̄}} for every cube Q of one level meeting the window.

    Cubes of a shifted grid need a depth 1 function. Levels finer than the
    resolution are rejected; callers refine first.
    """
    if level > f.J:
        raise ValueError(f"level {level} is finer than the resolution {f.J}")
    offsets = tuple(shift) if shift is not None else (0,) * f.n
    if any(offsets) and f.depth == 0:
        raise ValueError("shifted cubes need a depth 1 function")
    scale = 2 ** (f.J - level)
    length = scale * 3**f.depth
    blocks, _ = padded_blocks(f.values, length, [scale * a for a in offsets])
    return block_mixed_norms(blocks, pbar.entries) * f.cell_width ** (
        f.n * pbar.sigma
    )


def _level_power_sum(
    f: StepFunction,
    level: int,
    params: SpaceParams,
    shift: Sequence[int] | None = None,
) -> float:
    norms = level_cube_norms(f, level, params.pbar, shift)
    weight = math.pow(2.0, -level * params.n * params.r * params.cube_exponent)
    return weight * float(np.sum(np.power(norms, params.r)))


def _coarse_tail(f: StepFunction, params: SpaceParams, first_level: int) -> float:
    """Σ_{j < first_level} 2^{-jc}‖f‖^r with c = nr(1/t - σ) < 0."""
    c = params.n * params.r * params.cube_exponent
    ratio = math.pow(2.0, c)
    total = mixed_norm(f, params.pbar) ** params.r
    return total * math.pow(2.0, -first_level * c) * ratio / (1.0 - ratio)


def _fine_factor(params: SpaceParams, level: int) -> float:
    """Σ_{j > level} 2^{(j-level)n}·2^{-jnr/t} per unit r-th power."""
    q = math.pow(2.0, params.n * (1.0 - params.r / params.t))
    return math.pow(2.0, -level * params.n * params.r / params.t) * q / (1.0 - q)


def bm_norm(f: StepFunction, params: SpaceParams) -> float:
    """
    The mixed Bourgain-Morrey norm ‖f‖_{M^{t,r}_{p̄}}, exact.

    Degenerate parameters give +∞ for f ≠ 0; r = ∞ gives the Morrey norm.
    """
    _check_dimension(f, params)
    if f.depth != 0:
        raise ValueError("exact norms need a depth 0 function; use bm_norm_bracket")
    if f.is_zero():
        return 0.0
    regime = params.regime
    if regime is Regime.DEGENERATE:
        logger.debug(f"degenerate parameters {params.label()}: norm is infinite")
        return math.inf
    if regime is Regime.NONTRIVIAL_MORREY:
        return morrey_norm(f, params)
    terms = [_level_power_sum(f, level, params) for level in range(-f.K, f.J + 1)]
    terms.append(_coarse_tail(f, params, -f.K))
    cells = math.fsum(np.power(np.abs(f.values), params.r).ravel())
    terms.append(cells * _fine_factor(params, f.J))
    return math.fsum(terms) ** (1.0 / params.r)


def morrey_norm(f: StepFunction, params: SpaceParams) -> float:
    """
    The mixed Morrey norm sup_Q |Q|^{1/t-σ}‖fχ_Q‖_{L^{p̄}} over dyadic cubes.

    Coarser than level -K the terms grow without bound when 1/t > σ and
    shrink otherwise; finer than J they shrink, so the levels [-K-1, J+1]
    attain the supremum.
    """
    _check_dimension(f, params)
    if f.depth != 0:
        raise ValueError("exact norms need a depth 0 function")
    if f.is_zero():
        return 0.0
    exponent = params.cube_exponent
    if exponent > 0:
        return math.inf
    best = 0.0
    for level in range(-f.K, f.J + 1):
        norms = level_cube_norms(f, level, params.pbar)
        best = max(best, math.pow(2.0, -level * f.n * exponent) * float(norms.max()))
    coarse = math.pow(2.0, (f.K + 1) * f.n * exponent) * mixed_norm(f, params.pbar)
    fine = math.pow(2.0, -(f.J + 1) * f.n / params.t) * f.max_abs()
    return max(best, coarse, fine)


def bm_norm_bracket(
    f: StepFunction,
    params: SpaceParams,
    j_cut: int,
    shift: Sequence[int] | None = None,
) -> NormBracket:
    """
    Certified bounds for the norm of a depth 0 or depth 1 function.

    Parameters
    ----------
    f : StepFunction
        Function to bracket.
    params : SpaceParams
        Parameters in the finite non-trivial regime.
    j_cut : int
        Finest level summed exactly.
    shift : Sequence[int] | None
        Grid shift; the bracket is then for the norm over that shifted grid.

    Returns
    -------
    NormBracket
        lower sums the levels up to j_cut plus the coarse tail; upper adds
        Σ_{j > j_cut} Σ_Q |Q|^{r/t}(sup_Q |f|)^r bounded through the
        level-j_cut cubes.
    """
    _check_dimension(f, params)
    params.require_finite()
    if f.is_zero():
        return NormBracket(lower=0.0, upper=0.0)
    shifted = shift is not None and any(shift)
    if shifted and f.depth == 0:
        f = f.refine()
    first_level = -f.K - 2 if shifted else -f.K
    if j_cut < first_level:
        raise ValueError(f"cut level {j_cut} is below the first level {first_level}")
    if j_cut > f.J:
        f = f.with_resolution(j_cut)
    terms = [
        _level_power_sum(f, level, params, shift)
        for level in range(first_level, j_cut + 1)
    ]
    terms.append(_coarse_tail(f, params, first_level))
    lower = math.fsum(terms)

    # level-j_cut standard cubes; a finer shifted cube meets at most 2^n of them
    sup_norms = level_cube_norms(
        f, j_cut, ExponentVector.uniform(math.inf, f.n)
    )
    tail = math.fsum(np.power(sup_norms, params.r).ravel()) * _fine_factor(
        params, j_cut
    )
    if shifted:
        tail *= 2**f.n
    root = 1.0 / params.r
    return NormBracket(lower=lower**root, upper=(lower + tail) ** root)


def vector_bm_norm(fv: VectorStepFunction, params: SpaceParams, u: float) -> float:
    """bm_norm of the cellwise ℓ^u combination (Σ_k |f_k|^u)^{1/u}."""
    return bm_norm(fv.lp_combine(u), params)


def slice_norm(
    f: StepFunction | VectorStepFunction,
    level: int,
    params: SpaceParams,
    u_conjugate: float | None = None,
) -> float:
    """
    The single-level block-space quantity of the dual space.

    (Σ_Q (|Q|^{σ-1/t}‖gχ_Q‖_{L^{p̄′}})^{r′})^{1/r′} over the level cubes of
    the window, where |Q|^{σ-1/t} = |Q|^{1/t′-σ′}. Vector inputs are first
    combined cellwise in ℓ^{u′}.
    """
    if isinstance(f, VectorStepFunction):
        if u_conjugate is None:
            raise ValueError("vector inputs need the ℓ^{u′} exponent")
        g = f.lp_combine(u_conjugate)
    else:
        g = f
    _check_dimension(g, params)
    if not -g.K <= level <= g.J:
        raise ValueError(f"level {level} outside [{-g.K}, {g.J}]")
    dual = params.pbar.conjugate()
    r_dual = params.r_conjugate
    norms = level_cube_norms(g, level, dual)
    coefficients = math.pow(2.0, level * g.n * params.cube_exponent) * norms
    if math.isinf(r_dual):
        return float(coefficients.max())
    return float(np.sum(np.power(coefficients, r_dual))) ** (1.0 / r_dual)


def chi_bm_closed_form(params: SpaceParams) -> float:
    """‖χ_{[0,1)^n}‖ from the two geometric series over fine and coarse cubes."""
    regime = params.regime
    if regime is Regime.DEGENERATE:
        return math.inf
    if regime is Regime.NONTRIVIAL_MORREY:
        return 1.0
    n, r, t = params.n, params.r, params.t
    q = math.pow(2.0, n * (1.0 - r / t))
    rho = math.pow(2.0, n * r * params.cube_exponent)
    return (1.0 / (1.0 - q) + rho / (1.0 - rho)) ** (1.0 / r)


def weighted_bm_level_sum(
    f: StepFunction,
    params: SpaceParams,
    eta: float,
    levels: Sequence[int],
) -> float:
    """
    (Σ_Q (|Q|^{1/t-σ}‖f·(M^{it}χ_Q)^η‖_{L^{p̄}})^r)^{1/r} over window cubes of
    the given levels, with the iterated maximal weight in closed form.
    """
    _check_dimension(f, params)
    if not 0 < eta < 1.0 / params.pbar.max_entry:
        raise ValueError(
            f"η = {eta} outside (0, 1/max p̄) = (0, {1.0 / params.pbar.max_entry})"
        )
    window = math.ldexp(1.0, f.K)
    terms = []
    for level in levels:
        scale = math.pow(2.0, -level * f.n * params.cube_exponent)
        for cube in cubes_intersecting_window(level, f.K, f.n):
            corner = [float(c) for c in cube.lower_corner()]
            weights = [
                AxisWeightProfile.maximal_indicator(c, c + cube.side, eta, 0.0, window)
                for c in corner
            ]
            terms.append(scale * weighted_mixed_norm(f, params.pbar, weights))
    if not terms:
        return 0.0
    if math.isinf(params.r):
        return max(terms)
    return math.fsum(v**params.r for v in terms) ** (1.0 / params.r)

