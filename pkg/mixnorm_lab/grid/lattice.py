"""
Block views of cell arrays over dyadic and shifted grids.

A level-j cube of a grid at resolution J covers a block of 2^{J-j}·3^d cells
per axis. Reshaping the cell array into (blocks, cells-per-block) pairs turns
per-cube reductions into plain numpy reductions over the trailing axes.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np


def _per_axis(length: int | Sequence[int], ndim: int) -> tuple[int, ...]:
    if isinstance(length, int):
        return (length,) * ndim
    length = tuple(length)
    if len(length) != ndim:
        raise ValueError(f"need {ndim} block lengths, got {len(length)}")
    return length


def block_view(values: np.ndarray, length: int | Sequence[int]) -> np.ndarray:
    """
    View an array as (B_1, ..., B_n, L_1, ..., L_n) blocks.

    Parameters
    ----------
    values : np.ndarray
        Array whose extent along every axis is a multiple of the block length.
    length : int | Sequence[int]
        Block length, shared or per axis.

    Returns
    -------
    np.ndarray
        A view with the block indices first and the in-block offsets last.
    """
    ndim = values.ndim
    lengths = _per_axis(length, ndim)
    shape = []
    for size, step in zip(values.shape, lengths):
        if step <= 0 or size % step:
            raise ValueError(f"axis of {size} cells is not a multiple of {step}")
        shape.extend((size // step, step))
    reshaped = values.reshape(shape)
    order = [2 * i for i in range(ndim)] + [2 * i + 1 for i in range(ndim)]
    return reshaped.transpose(order)


def padded_blocks(
    values: np.ndarray,
    length: int,
    offsets: Sequence[int],
) -> tuple[np.ndarray, tuple[int, ...]]:
    """
    Zero-pad so that cube boundaries at ``offset + m·length`` become block edges.

    Returns the block view of the padded array and the front padding per
    axis; block b of axis i starts at original cell ``b·length - front_i``.
    """
    fronts = tuple((length - offset % length) % length for offset in offsets)
    pads = []
    for size, front in zip(values.shape, fronts):
        total = front + size
        pads.append((front, (-total) % length))
    padded = np.pad(values, pads) if any(sum(p) for p in pads) else values
    return block_view(padded, length), fronts


def expand_blocks(
    block_values: np.ndarray,
    length: int,
    fronts: Sequence[int],
    size: int,
) -> np.ndarray:
    """Broadcast per-block values back to cells, undoing ``padded_blocks``."""
    expanded = block_values
    for axis in range(block_values.ndim):
        expanded = np.repeat(expanded, length, axis=axis)
    index = tuple(slice(front, front + size) for front in fronts)
    return expanded[index]


def block_mixed_norms(blocks: np.ndarray, exponents: Sequence[float]) -> np.ndarray:
    """
    Unnormalized mixed power sums inside every block of a block view.

    The in-block axes are reduced innermost first, axis 1 of the function
    being the first in-block axis. Returns (Σ ... (Σ |v|^{p_1})^{p_2/p_1} ...)
    ^{1/p_n}, i.e. the mixed norm with unit cell width.
    """
    ndim = len(exponents)
    reduced = np.abs(blocks)
    for p in exponents:
        # the first remaining in-block axis sits right after the ndim block axes
        if np.isinf(p):
            reduced = reduced.max(axis=ndim)
        else:
            reduced = np.power(np.power(reduced, p).sum(axis=ndim), 1.0 / p)
    return reduced
