"""
Mixed Lebesgue norms of step functions, plain, partial and weighted.

Axis 1 (array axis 0) carries the innermost norm; the order is never changed.
"""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np

from mixnorm_lab.grid import StepFunction
from mixnorm_lab.models import ExponentVector

from .weights import AxisWeightProfile


def axis_norm(
    values: np.ndarray,
    p: float,
    weights: float | np.ndarray,
    axis: int = 0,
) -> np.ndarray:
    """
    Reduce one axis by the weighted L^p norm (Σ |v|^p·w)^{1/p}.

    Parameters
    ----------
    values : np.ndarray
        Cell values.
    p : float
        Exponent in (0, ∞].
    weights : float | np.ndarray
        Cell width, or one weight per cell of the axis. For finite p these are
        the integrals of w^p over each cell; for p = ∞ the per-cell suprema.
    axis : int
        Array axis to reduce.

    Returns
    -------
    np.ndarray
        Array with ``axis`` removed.
    """
    magnitude = np.abs(values)
    if not np.isscalar(weights):
        shape = [1] * values.ndim
        shape[axis] = -1
        weights = np.asarray(weights, dtype=np.float64).reshape(shape)
    if math.isinf(p):
        if np.isscalar(weights):
            return magnitude.max(axis=axis)
        # 0·∞ is 0 for cells where the function vanishes
        with np.errstate(invalid="ignore"):
            weighted = np.where(magnitude > 0, magnitude * weights, 0.0)
        return weighted.max(axis=axis)
    peak = magnitude.max(axis=axis, keepdims=True)
    safe = np.where(peak > 0, peak, 1.0)
    powered = np.power(magnitude / safe, p) * weights
    return np.squeeze(safe, axis=axis) * np.power(powered.sum(axis=axis), 1.0 / p)


def _check_dimension(f: StepFunction, pbar: ExponentVector) -> None:
    if pbar.n != f.n:
        raise ValueError(
            f"exponent vector of length {pbar.n} for a function of dimension {f.n}"
        )


def mixed_norm(f: StepFunction, pbar: ExponentVector) -> float:
    """‖f‖_{L^{p̄}}, computed exactly as nested weighted power sums."""
    _check_dimension(f, pbar)
    reduced = f.values
    for p in pbar.entries:
        reduced = axis_norm(reduced, p, f.cell_width, axis=0)
    return float(reduced)


def mixed_norm_partial(
    f: StepFunction,
    pbar: ExponentVector,
    j: int,
    keep_dims: bool = True,
) -> StepFunction:
    """
    The partial norm ‖f‖_{(p_1, ..., p_j)} as a function of the remaining axes.

    With ``keep_dims`` the result lives on the original grid and is constant
    along the first j axes (j = n gives the constant ‖f‖_{L^{p̄}} on the
    window); otherwise it is a step function of dimension n - j.
    """
    _check_dimension(f, pbar)
    if not 0 <= j <= f.n:
        raise ValueError(f"axis count {j} outside [0, {f.n}]")
    reduced = np.abs(f.values)
    for p in pbar.entries[:j]:
        reduced = axis_norm(reduced, p, f.cell_width, axis=0)
    if keep_dims:
        expanded = np.broadcast_to(reduced, f.values.shape)
        return f.with_values(expanded)
    if j == f.n:
        raise ValueError("no axes remain; use keep_dims or mixed_norm")
    return StepFunction(
        n=f.n - j,
        J=f.J,
        K=f.K,
        depth=f.depth,
        values=reduced,
        approximate=f.approximate,
    )


def weighted_mixed_norm(
    f: StepFunction,
    pbar: ExponentVector,
    weights: Sequence[AxisWeightProfile],
) -> float:
    """‖f·(w_1 ⊗ ... ⊗ w_n)‖_{L^{p̄}} with closed-form per-cell weight integrals."""
    _check_dimension(f, pbar)
    if len(weights) != f.n:
        raise ValueError(f"need {f.n} axis weights, got {len(weights)}")
    edges = f.cell_edges()
    reduced = f.values
    for p, profile in zip(pbar.entries, weights):
        if math.isinf(p):
            _, per_cell = profile.cell_extremes(edges)
        else:
            per_cell = profile.cell_integrals(edges, p)
        reduced = axis_norm(reduced, p, per_cell, axis=0)
    return float(reduced)
