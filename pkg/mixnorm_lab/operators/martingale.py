"""
Dyadic martingale operators: conditional expectations E_k and Doob's maximal
function 𝕄f = sup_k E_k f.
"""

from __future__ import annotations

import numpy as np

from mixnorm_lab.grid import StepFunction, block_view


def cond_expect(f: StepFunction, k: int) -> StepFunction:
    """
    Replace f by its averages over the dyadic cubes of level k.

    The window grows to [0, 2^{-k})^n when the level-k cubes are coarser than
    the window; for k ≥ J the function is returned unchanged.
    """
    if f.depth != 0:
        raise ValueError("conditional expectations need a depth 0 function")
    if k >= f.J:
        return f
    g = f.with_window(max(f.K, -k))
    length = 2 ** (g.J - k)
    blocks = block_view(g.values, length)
    inner = tuple(range(g.n, 2 * g.n))
    means = blocks.mean(axis=inner)
    for axis in range(g.n):
        means = np.repeat(means, length, axis=axis)
    return g.with_values(means)


def doob_maximal(f: StepFunction) -> StepFunction:
    """
    Cellwise sup of E_k f over all levels k.

    Finer levels reproduce f. Below -K the window sits in one cube of each
    level and E_k f = ∫f/2^{-kn} there, which tends to 0: for ∫f > 0 these
    values are dominated by level -K, otherwise their sup is 0.
    """
    if f.depth != 0:
        raise ValueError("the dyadic maximal function needs a depth 0 function")
    result = f.values
    for k in range(-f.K, f.J):
        result = np.maximum(result, cond_expect(f, k).values)
    if f.integral() <= 0:
        result = np.maximum(result, 0.0)
    return f.with_values(result)
