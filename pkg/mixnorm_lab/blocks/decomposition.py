"""
Blocks, block decompositions and duality brackets for the predual space
H^{t′,r′}_{p̄′}.

A (p̄′, t′)-block on a cube Q is a function b supported in Q with
‖b‖_{L^{p̄′}} ≤ |Q|^{1/t-σ}. The H-norm of g is the infimum of ‖λ‖_{ℓ^{r′}}
over decompositions g = Σ λ_Q b_Q; no algorithm attains it, so it is
bracketed: single-level decompositions bound it from above and pairings
against Bourgain-Morrey functions bound it from below.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import dagster as dg
import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from mixnorm_lab.grid import (
    DyadicCube,
    StepFunction,
    VectorStepFunction,
    align,
    cubes_intersecting_window,
    restrict,
)
from mixnorm_lab.models import ExponentVector, NormBracket, SpaceParams
from mixnorm_lab.norms import (
    bm_norm,
    mixed_norm,
    mixed_norm_partial,
    slice_norm,
    vector_bm_norm,
)

logger = dg.get_dagster_logger("mixnorm_lab.blocks")

BLOCK_TOLERANCE = 1e-12


def pairing(f: StepFunction, g: StepFunction) -> float:
    """∫ f g, exact on the common refinement of both grids."""
    f, g = align(f, g)
    return math.fsum((f.values * g.values).ravel()) * f.cell_volume


def unit_dual(f: StepFunction, pbar: ExponentVector) -> StepFunction:
    """
    The Hölder extremizer of f in L^{p̄}.

    g = sgn(f)|f|^{p_1-1}·Π_{i<n} P_i^{p_{i+1}-p_i} / ‖f‖^{p_n-1} with P_i the
    partial norm over the first i axes, so that ∫ f g = ‖f‖_{L^{p̄}} and
    ‖g‖_{L^{p̄′}} = 1. Zero for f = 0.
    """
    if not pbar.strictly_between_one_and_infinity():
        raise ValueError(f"the extremizer needs 1 < p_i < ∞, got p̄ = ({pbar})")
    total = mixed_norm(f, pbar)
    if total == 0:
        return f.with_values(np.zeros_like(f.values))
    p = pbar.entries
    # scale first so powers stay in range
    scaled = f / total
    magnitude = np.abs(scaled.values)
    result = np.sign(scaled.values) * np.power(magnitude, p[0] - 1.0)
    for i in range(1, f.n):
        partial = mixed_norm_partial(scaled, pbar, i).values
        with np.errstate(divide="ignore"):
            factor = np.where(partial > 0, np.power(partial, p[i] - p[i - 1]), 0.0)
        result = result * factor
    return f.with_values(result)


def holder_attainer(
    f: StepFunction, cube: DyadicCube, params: SpaceParams
) -> StepFunction:
    """
    |Q|^{1/t-σ}·unit_dual(fχ_Q): a (p̄′, t′)-block on Q attaining
    ∫ fχ_Q g = |Q|^{1/t-σ}‖fχ_Q‖_{L^{p̄}}.
    """
    local = restrict(f, cube)
    if local.is_zero():
        return local
    return cube.volume**params.cube_exponent * unit_dual(local, params.pbar)


def _supported_in(b: StepFunction, cube: DyadicCube) -> bool:
    return (b - restrict(b, cube)).is_zero()


def is_block(b: StepFunction, cube: DyadicCube, params: SpaceParams) -> bool:
    """Whether b is a (p̄′, t′)-block on Q."""
    if not _supported_in(b, cube):
        return False
    bound = cube.volume**params.cube_exponent
    return mixed_norm(b, params.pbar.conjugate()) <= bound * (1 + BLOCK_TOLERANCE)


def block_split(
    f: StepFunction, cube: DyadicCube, params: SpaceParams
) -> tuple[float, StepFunction]:
    """
    Write f = λ·b with b a (p̄′, t′)-block on Q attaining the norm bound.

    f = 0 gives λ = 0 and the normalized indicator |Q|^{1/t-1}χ_Q.
    """
    if not _supported_in(f, cube):
        raise ValueError("the function is not supported in the cube")
    dual = params.pbar.conjugate()
    norm = mixed_norm(f, dual)
    if norm == 0:
        indicator = StepFunction.indicator(cube, J=f.J, K=f.K)
        return 0.0, cube.volume ** (1.0 / params.t - 1.0) * indicator
    coefficient = norm * cube.volume ** (-params.cube_exponent)
    return coefficient, f / coefficient


class BlockTerm(BaseModel):
    """One term λ·b of a block decomposition."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coefficient: float = Field(ge=0)
    cube: DyadicCube
    block: StepFunction


class BlockDecomposition(BaseModel):
    """A finite decomposition g = Σ λ_Q b_Q into blocks."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    terms: tuple[BlockTerm, ...] = ()

    def coefficient_norm(self, r_dual: float) -> float:
        """‖λ‖_{ℓ^{r′}}."""
        coefficients = [term.coefficient for term in self.terms]
        if not coefficients:
            return 0.0
        if math.isinf(r_dual):
            return max(coefficients)
        return math.fsum(c**r_dual for c in coefficients) ** (1.0 / r_dual)

    def reconstruct(self, like: StepFunction) -> StepFunction:
        """Σ λ b on the grid of ``like`` (refined when a block needs it)."""
        total = like.with_values(np.zeros_like(like.values))
        for term in self.terms:
            total = total + term.coefficient * term.block
        return total

    def validate(self, g: StepFunction, params: SpaceParams) -> None:
        """Raise unless every term is a block and the terms sum to g."""
        for term in self.terms:
            if not is_block(term.block, term.cube, params):
                raise ValueError(f"term on {term.cube} is not a block")
        residual = self.reconstruct(g) - g
        scale = max(g.max_abs(), 1.0)
        if residual.max_abs() > BLOCK_TOLERANCE * scale:
            raise ValueError(
                f"decomposition misses g by {residual.max_abs():.3e} in some cell"
            )

    def serialize(self) -> str:
        """One line per term: ``level index shift coefficient``."""
        lines = []
        for term in self.terms:
            cube = term.cube
            index = ",".join(str(m) for m in cube.index)
            shift = ",".join(str(a) for a in cube.offsets)
            lines.append(f"{cube.level} {index} {shift} {term.coefficient!r}")
        return "\n".join(lines) + ("\n" if lines else "")


def _level_decomposition(
    g: StepFunction, level: int, params: SpaceParams
) -> BlockDecomposition:
    terms = []
    for cube in cubes_intersecting_window(level, g.K, g.n):
        local = restrict(g, cube)
        if local.is_zero():
            continue
        coefficient, block = block_split(local, cube, params)
        terms.append(BlockTerm(coefficient=coefficient, cube=cube, block=block))
    return BlockDecomposition(terms=tuple(terms))


def h_norm_upper(
    g: StepFunction, params: SpaceParams
) -> tuple[float, BlockDecomposition]:
    """
    Upper bound for ‖g‖_H from the best single-level decomposition.

    Every level j ∈ [-K, J] gives the admissible decomposition
    g = Σ_Q gχ_Q; the smallest ℓ^{r′} coefficient norm wins, the first
    level on ties.
    """
    if g.depth != 0:
        raise ValueError("block decompositions need a depth 0 function")
    if params.r <= 1:
        raise ValueError(f"r = {params.r} ≤ 1 leaves no finite dual exponent r′")
    if g.is_zero():
        return 0.0, BlockDecomposition()
    values = [slice_norm(g, level, params) for level in range(-g.K, g.J + 1)]
    best = int(np.argmin(values))
    level = -g.K + best
    logger.debug(f"single-level H bound attained at level {level}")
    return values[best], _level_decomposition(g, level, params)


def _random_candidate(g: StepFunction, seed: int, index: int) -> StepFunction:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, index])))
    return g.with_values(rng.uniform(-1.0, 1.0, size=g.values.shape))


def _dual_candidates(g: StepFunction, params: SpaceParams) -> list[StepFunction]:
    """Per-cube unit duals of gχ_Q and their per-level ℓ^{r′} combinations."""
    dual = params.pbar.conjugate()
    if not dual.strictly_between_one_and_infinity():
        return []
    r_dual = params.r_conjugate
    candidates = []
    for level in range(-g.K, g.J + 1):
        combined = np.zeros_like(g.values)
        for cube in cubes_intersecting_window(level, g.K, g.n):
            local = restrict(g, cube)
            if local.is_zero():
                continue
            extremizer = unit_dual(local, dual)
            candidates.append(extremizer)
            weight = cube.volume ** (-params.cube_exponent)
            coefficient = weight * mixed_norm(local, dual)
            combined = combined + coefficient ** (r_dual - 1.0) * weight * (
                extremizer.values
            )
        if np.any(combined):
            candidates.append(g.with_values(combined))
    return candidates


def h_norm_lower(
    g: StepFunction,
    params: SpaceParams,
    budget: int = 16,
    seed: int = 0,
    max_workers: int = 1,
) -> tuple[float, StepFunction]:
    """
    Certified lower bound max |∫ f g| / ‖f‖_{M^{t,r}_{p̄}} over candidates.

    Parameters
    ----------
    g : StepFunction
        Depth 0 function.
    params : SpaceParams
        Parameters in the finite non-trivial regime.
    budget : int
        Number of seeded random candidates added to the structured ones.
    seed : int
        Seed of the random candidates.
    max_workers : int
        Threads evaluating candidates; the result does not depend on it.

    Returns
    -------
    tuple[float, StepFunction]
        The bound and a witness f with ‖f‖_{M^{t,r}_{p̄}} = 1.
    """
    params.require_finite()
    if g.depth != 0:
        raise ValueError("duality brackets need a depth 0 function")
    if g.is_zero():
        return 0.0, g
    candidates: list[StepFunction] = []
    for level in range(-g.K, g.J + 1):
        for cube in cubes_intersecting_window(level, g.K, g.n):
            candidates.append(StepFunction.indicator(cube, J=g.J, K=g.K))
    candidates.extend(_dual_candidates(g, params))
    candidates.extend(_random_candidate(g, seed, i) for i in range(budget))

    def evaluate(candidate: StepFunction) -> float:
        norm = bm_norm(candidate, params)
        if norm == 0 or math.isinf(norm):
            return 0.0
        return abs(pairing(candidate, g)) / norm

    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        ratios = list(executor.map(evaluate, candidates))
    best = int(np.argmax(ratios))
    witness = candidates[best]
    norm = bm_norm(witness, params)
    sign = 1.0 if pairing(witness, g) >= 0 else -1.0
    return ratios[best], (sign / norm) * witness


def vector_block_bracket(
    gv: VectorStepFunction,
    params: SpaceParams,
    u_conjugate: float,
    budget: int = 16,
    seed: int = 0,
    max_workers: int = 1,
) -> NormBracket:
    """
    Bracket the ℓ^{u′}-valued block-space norm of {g_k}.

    The upper end is the best single-level value of the cellwise ℓ^{u′}
    combination G. The lower end lifts the scalar witness φ for G to
    f_k = |φ|·sgn(g_k)(|g_k|/G)^{u′-1}, whose ℓ^u combination is |φ|, and
    divides Σ_k ∫ f_k g_k by the vector Bourgain-Morrey norm of {f_k}.
    """
    if not 1 < u_conjugate < math.inf:
        raise ValueError(f"u′ must lie in (1, ∞), got {u_conjugate}")
    params.require_finite()
    combined = gv.lp_combine(u_conjugate)
    if combined.is_zero():
        return NormBracket(lower=0.0, upper=0.0)
    upper = min(
        slice_norm(gv, level, params, u_conjugate)
        for level in range(-combined.K, combined.J + 1)
    )
    _, witness = h_norm_lower(combined, params, budget, seed, max_workers)
    magnitude = np.abs(witness.values)
    total = combined.values
    lifted = []
    for g in gv.components:
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(total > 0, np.abs(g.values) / total, 0.0)
        values = magnitude * np.sign(g.values) * np.power(ratio, u_conjugate - 1.0)
        lifted.append(g.with_values(values))
    fv = VectorStepFunction(components=tuple(lifted))
    u = u_conjugate / (u_conjugate - 1.0)
    norm = vector_bm_norm(fv, params, u)
    paired = math.fsum(pairing(f, g) for f, g in zip(fv.components, gv.components))
    lower = paired / norm if norm > 0 else 0.0
    return NormBracket(lower=lower, upper=upper)
