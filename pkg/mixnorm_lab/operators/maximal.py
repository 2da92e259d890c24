"""
Grid-restricted maximal operators.

Competitor cubes and intervals are restricted to ones aligned with the cell
grid (shifted dyadic cubes, unions of consecutive cells), so every output is
an exact cell-constant lower proxy of the corresponding continuous operator.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence

import numpy as np

from mixnorm_lab.grid import (
    SHIFTS,
    DyadicCube,
    StepFunction,
    expand_blocks,
    padded_blocks,
)
from mixnorm_lab.models import ExponentVector
from mixnorm_lab.norms import AxisWeightProfile

# bound on the (rows, N+1, N+1) average tensors built at once
_CHUNK_ENTRIES = 4_000_000


def dyadic_maximal_shifted(
    f: StepFunction,
    shift: Sequence[int],
    levels: Sequence[int] | None = None,
) -> StepFunction:
    """
    M_{D_ā}f: the max of |f|-averages over shifted dyadic cubes containing a cell.

    Parameters
    ----------
    f : StepFunction
        Input of depth 0 or 1; the output has depth 1.
    shift : Sequence[int]
        Grid shift ā ∈ {0,1,2}^n.
    levels : Sequence[int] | None
        Levels to scan, [-K-2, J] by default. Coarser shifted cubes contain
        the window and only lower the average.

    Returns
    -------
    StepFunction
        Depth 1 function on the window of f.
    """
    shift = tuple(shift)
    if len(shift) != f.n or any(a not in SHIFTS for a in shift):
        raise ValueError(f"shift {shift} is not in {{0,1,2}}^{f.n}")
    g = f.abs().refine()
    if levels is None:
        levels = range(-g.K - 2, g.J + 1)
    result = g.values.copy()
    for level in levels:
        if level > g.J:
            raise ValueError(f"level {level} is finer than the resolution {g.J}")
        scale = 2 ** (g.J - level)
        length = 3 * scale
        blocks, fronts = padded_blocks(g.values, length, [scale * a for a in shift])
        inner = tuple(range(g.n, 2 * g.n))
        means = blocks.sum(axis=inner) / float(length) ** g.n
        averages = expand_blocks(means, length, fronts, g.cells_per_axis)
        np.maximum(result, averages, out=result)
    return g.with_values(result)


def hl_maximal_lower(f: StepFunction) -> StepFunction:
    """max over all 3^n shifts ā of M_{D_ā}f, a lower proxy for M f."""
    shifts = list(itertools.product(SHIFTS, repeat=f.n))
    result = dyadic_maximal_shifted(f, shifts[0])
    for shift in shifts[1:]:
        result = result.maximum(dyadic_maximal_shifted(f, shift))
    return result


def _line_maxima(lines: np.ndarray) -> np.ndarray:
    """For rows of cell values, the best average over cell runs containing each cell."""
    rows, size = lines.shape
    prefix = np.zeros((rows, size + 1))
    np.cumsum(lines, axis=1, out=prefix[:, 1:])
    start = np.arange(size + 1)[:, None]
    stop = np.arange(size + 1)[None, :]
    lengths = (stop - start).astype(np.float64)
    valid = lengths > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        averages = (prefix[:, None, :] - prefix[:, :, None]) / lengths
    averages = np.where(valid, averages, -np.inf)
    # best over stops ≥ b, then over starts ≤ a
    best = np.maximum.accumulate(averages[:, :, ::-1], axis=2)[:, :, ::-1]
    best = np.maximum.accumulate(best, axis=1)
    cells = np.arange(size)
    result = best[:, cells, cells + 1]
    return np.maximum(result, lines)


def maximal_1d_grid(f: StepFunction, axis: int) -> StepFunction:
    """
    Grid-restricted uncentered maximal function of |f| along one axis.

    Each cell gets the largest average of |f| over runs of consecutive cells
    of that axis containing it.
    """
    if not 0 <= axis < f.n:
        raise ValueError(f"axis {axis} outside [0, {f.n})")
    magnitude = np.moveaxis(np.abs(f.values), axis, -1)
    shape = magnitude.shape
    size = shape[-1]
    lines = magnitude.reshape(-1, size)
    chunk = max(1, _CHUNK_ENTRIES // (size + 1) ** 2)
    pieces = [
        _line_maxima(lines[i : i + chunk]) for i in range(0, lines.shape[0], chunk)
    ]
    result = np.concatenate(pieces).reshape(shape)
    return f.with_values(np.moveaxis(result, -1, axis))


def iterated_maximal_grid(f: StepFunction) -> StepFunction:
    """M^{(it)}f = M_{(n)} ··· M_{(1)}|f| with the grid-restricted 1D operators."""
    result = f.abs()
    for axis in range(f.n):
        result = maximal_1d_grid(result, axis)
    return result


def mit_chi_weight(
    rectangle: DyadicCube | Sequence[tuple[float, float]],
    eta: float,
    K: int,
    pbar: ExponentVector | None = None,
) -> list[AxisWeightProfile]:
    """
    Per-axis profiles of (M^{(it)}χ_R)^η = ⊗_i (M_{(i)}χ_{I_i})^η on [0, 2^K).

    With ``pbar`` the weight is meant for weighted norms and η must lie in
    (0, 1/max p̄).
    """
    if isinstance(rectangle, DyadicCube):
        corner = [float(c) for c in rectangle.lower_corner()]
        intervals = [(c, c + rectangle.side) for c in corner]
    else:
        intervals = [(float(a), float(b)) for a, b in rectangle]
    if eta <= 0:
        raise ValueError(f"η must be positive, got {eta}")
    if pbar is not None:
        if pbar.n != len(intervals):
            raise ValueError("exponent vector and rectangle dimensions differ")
        if eta * pbar.max_entry >= 1:
            raise ValueError(
                f"η = {eta} outside (0, 1/max p̄) = (0, {1.0 / pbar.max_entry})"
            )
    window = math.ldexp(1.0, K)
    return [
        AxisWeightProfile.maximal_indicator(a, b, eta, 0.0, window)
        for a, b in intervals
    ]
