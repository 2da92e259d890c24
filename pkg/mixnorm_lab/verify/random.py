"""
Seeded random step functions.

Every trial owns a NumPy ``Generator(PCG64)`` seeded through
``SeedSequence([seed, index])``, so a (seed, index) witness reproduces the
trial input on any platform and independently of the thread count.
"""

from __future__ import annotations

import numpy as np

from mixnorm_lab.grid import DyadicCube, StepFunction, cubes_intersecting_window
from mixnorm_lab.models import GeneratorSpec, SignMode


def make_generator(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, index])))


def draw_step(
    rng: np.random.Generator, spec: GeneratorSpec, n: int | None = None
) -> StepFunction:
    """
    Draw one step function from an existing generator.

    A cell is occupied with probability ``sparsity``; occupied cells get a
    uniform value in [low, high], negated with probability 1/2 in signed mode.
    """
    n = spec.n if n is None else n
    shape = (spec.cells_per_axis,) * n
    occupied = rng.random(shape) < spec.sparsity
    values = rng.uniform(spec.low, spec.high, size=shape)
    if spec.sign is SignMode.SIGNED:
        values = np.where(rng.random(shape) < 0.5, -values, values)
    return StepFunction(
        n=n, J=spec.J, K=spec.K, values=np.where(occupied, values, 0.0)
    )


def gen_random_step(spec: GeneratorSpec, seed: int, index: int = 0) -> StepFunction:
    """The deterministic step function of trial ``index`` under ``seed``."""
    return draw_step(make_generator(seed, index), spec)


def draw_cube(rng: np.random.Generator, n: int, J: int, K: int) -> DyadicCube:
    """A standard dyadic cube of a random level in [-K, J] meeting [0, 2^K)^n."""
    level = int(rng.integers(-K, J + 1))
    cubes = cubes_intersecting_window(level, K, n)
    return cubes[int(rng.integers(len(cubes)))]
