"""
Property helpers: the A₁ ratio of axis weights, cell-reveal ladders and the
parameter lattice of the unit-cube indicator oracle.
"""

from __future__ import annotations

import math
from collections.abc import Iterable

import numpy as np

from mixnorm_lab.grid import StepFunction
from mixnorm_lab.models import ExponentVector, SpaceParams
from mixnorm_lab.norms import AxisWeightProfile


def a1_ratio(weight: AxisWeightProfile, levels: Iterable[int]) -> float:
    """
    sup over dyadic intervals I of the given levels of avg_I(w) / inf_I(w).

    Intervals are clipped to the profile's domain [lo, hi). Averages use the
    closed-form piece integrals; an interval where w vanishes gives ∞.

    Parameters
    ----------
    weight : AxisWeightProfile
        A weight positive on its domain.
    levels : Iterable[int]
        Dyadic levels j; the intervals have length 2^{-j}.

    Returns
    -------
    float
        The largest ratio, 1 for constant weights.
    """
    best = 1.0
    for level in levels:
        side = math.ldexp(1.0, -level)
        first = math.floor(weight.lo / side)
        last = math.ceil(weight.hi / side)
        for m in range(first, last):
            a = max(m * side, weight.lo)
            b = min((m + 1) * side, weight.hi)
            if not a < b:
                continue
            average = weight.power_integral(a, b) / (b - a)
            low, _ = weight.cell_extremes(np.array([a, b]))
            infimum = float(low[0])
            if infimum <= 0:
                return math.inf
            best = max(best, average / infimum)
    return best


def reveal_ladder(
    f: StepFunction, rng: np.random.Generator, steps: int
) -> list[StepFunction]:
    """
    A monotone ladder 0 ≤ |f_1| ≤ ... ≤ |f_m| = |f| built by revealing the
    support cells of f in random order, in at most ``steps`` rungs.
    """
    if steps < 1:
        raise ValueError(f"a ladder needs at least one step, got {steps}")
    support = np.flatnonzero(f.values)
    if support.size == 0:
        return [f]
    order = rng.permutation(support)
    rungs = np.array_split(order, min(steps, support.size))
    revealed = np.zeros(f.values.size, dtype=bool)
    ladder = []
    for rung in rungs:
        revealed[rung] = True
        mask = revealed.reshape(f.values.shape)
        ladder.append(f.with_values(np.where(mask, f.values, 0.0)))
    return ladder


ORACLE_EXPONENTS = (
    "1",
    "2",
    "4",
    "2,2",
    "2,4",
    "4,2",
    "1,3",
    "2,2,2",
    "2,3,4",
    "3,3,3",
)

# multiples of the critical t, and of t for r
ORACLE_T_FACTORS = (1.5, 3.0)
ORACLE_R_FACTORS = (1.5, 3.0)


def indicator_oracle_lattice() -> list[SpaceParams]:
    """
    Parameter tuples in the finite regime for n ∈ {1, 2, 3}, on which the
    norm of χ_{[0,1)^n} has a closed form. (2,4), 4, 8 is always included.
    """
    lattice = [SpaceParams.of("2,4", 4, 8)]
    for text in ORACLE_EXPONENTS:
        pbar = ExponentVector.parse(text)
        critical = SpaceParams(pbar=pbar, t=1.0, r=2.0).critical_t
        for t_factor in ORACLE_T_FACTORS:
            for r_factor in ORACLE_R_FACTORS:
                t = critical * t_factor
                lattice.append(SpaceParams(pbar=pbar, t=t, r=t * r_factor))
    return lattice
