"""
Step functions on dyadic grids.

A StepFunction stores the values of a compactly supported piecewise constant
function on the window [0, 2^K)^n, cut into cells of width 2^{-J}/3^d with
refinement depth d ∈ {0, 1}. Depth 1 aligns every shifted dyadic cube of
level ≤ J with cell boundaries.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from typing import Any

import dagster as dg
import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from .cubes import DyadicCube
from .lattice import block_view

logger = dg.get_dagster_logger("mixnorm_lab.grid")

Scalar = int | float


def _readonly(values: np.ndarray) -> np.ndarray:
    values.flags.writeable = False
    return values


class StepFunction(BaseModel):
    """An immutable piecewise constant function on a dyadic window."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    J: int
    K: int
    depth: int = 0
    values: np.ndarray
    # set by operators that sample at cell centers instead of averaging
    approximate: bool = False

    @field_validator("values", mode="before")
    @classmethod
    def _copy_values(cls, values: Any) -> np.ndarray:
        return _readonly(np.array(values, dtype=np.float64, copy=True))

    @model_validator(mode="after")
    def _check_grid(self) -> StepFunction:
        if self.n < 1:
            raise ValueError("dimension must be at least 1")
        if self.K < 0:
            raise ValueError(f"window level K must be non-negative, got {self.K}")
        if self.J + self.K < 0:
            raise ValueError(f"J + K must be non-negative, got {self.J + self.K}")
        if self.depth not in (0, 1):
            raise ValueError(f"refinement depth must be 0 or 1, got {self.depth}")
        expected = (self.cells_per_axis,) * self.n
        if self.values.shape != expected:
            raise ValueError(
                f"values of shape {self.values.shape} do not match grid {expected}"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("step function values must be finite")
        return self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StepFunction):
            return NotImplemented
        return (
            self.grid == other.grid
            and self.approximate == other.approximate
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None  # type: ignore[assignment]

    # ------------------------------------------------------------------ #
    # grid geometry

    @property
    def grid(self) -> tuple[int, int, int, int]:
        return (self.n, self.J, self.K, self.depth)

    @property
    def cells_per_axis(self) -> int:
        return 2 ** (self.K + self.J) * 3**self.depth

    @property
    def cell_width(self) -> float:
        return math.ldexp(1.0, -self.J) / 3**self.depth

    @property
    def cell_volume(self) -> float:
        return self.cell_width**self.n

    def cell_centers(self) -> np.ndarray:
        """Centers of the cells along one axis."""
        return (np.arange(self.cells_per_axis) + 0.5) * self.cell_width

    def cell_edges(self) -> np.ndarray:
        return np.arange(self.cells_per_axis + 1) * self.cell_width

    # ------------------------------------------------------------------ #
    # constructors

    @classmethod
    def zeros(cls, n: int, J: int, K: int, depth: int = 0) -> StepFunction:
        size = 2 ** (K + J) * 3**depth
        return cls(n=n, J=J, K=K, depth=depth, values=np.zeros((size,) * n))

    @classmethod
    def constant(
        cls, value: float, n: int, J: int, K: int, depth: int = 0
    ) -> StepFunction:
        size = 2 ** (K + J) * 3**depth
        return cls(n=n, J=J, K=K, depth=depth, values=np.full((size,) * n, value))

    @classmethod
    def indicator(
        cls,
        cube: DyadicCube,
        J: int | None = None,
        K: int = 0,
        value: float = 1.0,
    ) -> StepFunction:
        """
        value·χ_Q on the window [0, 2^K)^n.

        The resolution defaults to the cube level; shifted cubes are placed on
        a third-refined grid.
        """
        J = cube.level if J is None else max(J, cube.level)
        depth = 1 if cube.is_shifted else 0
        f = cls.zeros(cube.n, J, K, depth)
        cells = cube.cell_range(J, depth, f.cells_per_axis)
        values = np.zeros_like(f.values)
        if cells is not None:
            values[cells] = value
        return f.with_values(values)

    def with_values(
        self, values: np.ndarray, approximate: bool | None = None
    ) -> StepFunction:
        return StepFunction(
            n=self.n,
            J=self.J,
            K=self.K,
            depth=self.depth,
            values=values,
            approximate=self.approximate if approximate is None else approximate,
        )

    # ------------------------------------------------------------------ #
    # exact re-representations

    def refine(self) -> StepFunction:
        """Split every cell into 3^n equal cells (depth 0 → 1)."""
        if self.depth == 1:
            return self
        values = self.values
        for axis in range(self.n):
            values = np.repeat(values, 3, axis=axis)
        return StepFunction(
            n=self.n,
            J=self.J,
            K=self.K,
            depth=1,
            values=values,
            approximate=self.approximate,
        )

    def at_depth(self, depth: int) -> StepFunction:
        if depth == self.depth:
            return self
        if depth == 1:
            return self.refine()
        if depth == 0:
            coarse = self._coarsen(3)
            return StepFunction(
                n=self.n,
                J=self.J,
                K=self.K,
                depth=0,
                values=coarse,
                approximate=self.approximate,
            )
        raise ValueError(f"refinement depth must be 0 or 1, got {depth}")

    def _coarsen(self, factor: int) -> np.ndarray:
        blocks = block_view(self.values, factor)
        axes = tuple(range(self.n, 2 * self.n))
        first = blocks[(Ellipsis,) + (0,) * self.n]
        if not np.all(blocks == first.reshape(first.shape + (1,) * self.n)):
            raise ValueError(
                f"function is not constant on blocks of {factor} cells per axis"
            )
        return blocks.max(axis=axes)

    def with_resolution(self, J: int) -> StepFunction:
        """The same function on cells of level J (exact in both directions)."""
        if J == self.J:
            return self
        if J > self.J:
            factor = 2 ** (J - self.J)
            values = self.values
            for axis in range(self.n):
                values = np.repeat(values, factor, axis=axis)
        else:
            if J + self.K < 0:
                raise ValueError(f"level {J} is coarser than the window")
            values = self._coarsen(2 ** (self.J - J))
        return StepFunction(
            n=self.n,
            J=J,
            K=self.K,
            depth=self.depth,
            values=values,
            approximate=self.approximate,
        )

    def with_window(self, K: int) -> StepFunction:
        """Extend (or crop, when the support allows) the window to [0, 2^K)^n."""
        if K == self.K:
            return self
        size = 2 ** (K + self.J) * 3**self.depth
        if K > self.K:
            pad = size - self.cells_per_axis
            values = np.pad(self.values, [(0, pad)] * self.n)
            logger.debug(f"window extended from level {self.K} to {K}")
        else:
            inner = tuple(slice(0, size) for _ in range(self.n))
            values = self.values[inner]
            if np.count_nonzero(values) != np.count_nonzero(self.values):
                raise ValueError(f"support does not fit in the window of level {K}")
        return StepFunction(
            n=self.n,
            J=self.J,
            K=K,
            depth=self.depth,
            values=values,
            approximate=self.approximate,
        )

    def on_grid(self, J: int, K: int, depth: int) -> StepFunction:
        return self.at_depth(max(depth, self.depth)).with_resolution(J).with_window(K)

    # ------------------------------------------------------------------ #
    # pointwise arithmetic

    def abs(self) -> StepFunction:
        return self.with_values(np.abs(self.values))

    def _combine(
        self, other: StepFunction | Scalar, op: Callable[[Any, Any], np.ndarray]
    ) -> StepFunction:
        if isinstance(other, StepFunction):
            left, right = align(self, other)
            return left.with_values(
                op(left.values, right.values),
                approximate=left.approximate or right.approximate,
            )
        return self.with_values(op(self.values, float(other)))

    def __add__(self, other: StepFunction | Scalar) -> StepFunction:
        return self._combine(other, np.add)

    def __radd__(self, other: Scalar) -> StepFunction:
        return self._combine(other, np.add)

    def __sub__(self, other: StepFunction | Scalar) -> StepFunction:
        return self._combine(other, np.subtract)

    def __mul__(self, other: StepFunction | Scalar) -> StepFunction:
        return self._combine(other, np.multiply)

    def __rmul__(self, other: Scalar) -> StepFunction:
        return self._combine(other, np.multiply)

    def __truediv__(self, other: Scalar) -> StepFunction:
        return self.with_values(self.values / float(other))

    def __neg__(self) -> StepFunction:
        return self.with_values(-self.values)

    def maximum(self, other: StepFunction) -> StepFunction:
        return self._combine(other, np.maximum)

    # ------------------------------------------------------------------ #
    # scalars

    def integral(self) -> float:
        return math.fsum(self.values.ravel()) * self.cell_volume

    def is_zero(self) -> bool:
        return not np.any(self.values)

    def max_abs(self) -> float:
        return float(np.abs(self.values).max()) if self.values.size else 0.0

    # ------------------------------------------------------------------ #
    # text format

    def serialize(self) -> str:
        """Header ``n J K d`` (plus `` approx=1``), then one value per line."""
        header = f"{self.n} {self.J} {self.K} {self.depth}"
        if self.approximate:
            header += " approx=1"
        lines = [header]
        lines.extend(repr(float(v)) for v in self.values.ravel())
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> StepFunction:
        lines = [line.strip() for line in text.strip().splitlines()]
        if not lines or not lines[0]:
            raise ValueError("empty step function text")
        header = lines[0].split()
        approximate = False
        if len(header) == 5 and header[4] in {"approx=1", "approx=0"}:
            approximate = header[4] == "approx=1"
            header = header[:4]
        if len(header) != 4:
            raise ValueError(f"malformed header {lines[0]!r}, expected 'n J K d'")
        try:
            n, J, K, depth = (int(item) for item in header)
        except ValueError as e:
            raise ValueError(f"malformed header {lines[0]!r}") from e
        if n < 1 or depth not in (0, 1) or K < 0 or J + K < 0:
            raise ValueError(f"invalid grid in header {lines[0]!r}")
        size = 2 ** (K + J) * 3**depth
        body = lines[1:]
        if len(body) != size**n:
            raise ValueError(f"expected {size**n} values, found {len(body)}")
        try:
            flat = np.array([float(v) for v in body], dtype=np.float64)
        except ValueError as e:
            raise ValueError("cell values must be decimal numbers") from e
        return cls(
            n=n,
            J=J,
            K=K,
            depth=depth,
            values=flat.reshape((size,) * n),
            approximate=approximate,
        )


def align(*functions: StepFunction) -> tuple[StepFunction, ...]:
    """Bring step functions to the finest resolution, widest window, deepest depth."""
    if not functions:
        return ()
    dims = {f.n for f in functions}
    if len(dims) != 1:
        raise ValueError(f"cannot align functions of dimensions {sorted(dims)}")
    J = max(f.J for f in functions)
    K = max(f.K for f in functions)
    depth = max(f.depth for f in functions)
    return tuple(f.on_grid(J, K, depth) for f in functions)


def restrict(f: StepFunction, cube: DyadicCube) -> StepFunction:
    """f·χ_Q, refined to depth 1 for shifted cubes and to level j for small cubes."""
    if cube.n != f.n:
        raise ValueError(
            f"cube of dimension {cube.n} for a function of dimension {f.n}"
        )
    if cube.is_shifted and f.depth == 0:
        logger.debug("refining to depth 1 for a shifted restriction")
        f = f.refine()
    if cube.level > f.J:
        f = f.with_resolution(cube.level)
    cells = cube.cell_range(f.J, f.depth, f.cells_per_axis)
    values = np.zeros_like(f.values)
    if cells is not None:
        values[cells] = f.values[cells]
    return f.with_values(values)


def dilate_dyadic(f: StepFunction, k: int) -> StepFunction:
    """
    The function x ↦ f(2^k x).

    Cell values are unchanged; the cells shrink to level J + k and the window
    to level K - k.
    """
    if f.depth != 0:
        raise ValueError("dyadic dilation needs a depth 0 function")
    if f.K - k < 0:
        raise ValueError(
            f"dilation by 2^{k} would move the window below level 0 (K = {f.K})"
        )
    return StepFunction(
        n=f.n,
        J=f.J + k,
        K=f.K - k,
        depth=0,
        values=f.values,
        approximate=f.approximate,
    )


def translate(f: StepFunction, shift: Sequence[int]) -> StepFunction:
    """
    The function x ↦ f(x - 2^{-J}τ) for τ ≥ 0, extending the window as needed.
    """
    shift = tuple(int(s) for s in shift)
    if len(shift) != f.n:
        raise ValueError(f"translation of length {len(shift)} in dimension {f.n}")
    if any(s < 0 for s in shift):
        raise ValueError("translations must be non-negative")
    if not any(shift):
        return f
    reach = 2 ** (f.K + f.J) + max(shift)
    K = f.K
    while 2 ** (K + f.J) < reach:
        K += 1
    size = 2 ** (K + f.J) * 3**f.depth
    scale = 3**f.depth
    pads = []
    for s in shift:
        front = s * scale
        pads.append((front, size - f.cells_per_axis - front))
    return StepFunction(
        n=f.n,
        J=f.J,
        K=K,
        depth=f.depth,
        values=np.pad(f.values, pads),
        approximate=f.approximate,
    )


class VectorStepFunction(BaseModel):
    """A finite sequence {f_k} of step functions on one shared grid."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    components: tuple[StepFunction, ...]

    @model_validator(mode="after")
    def _check_components(self) -> VectorStepFunction:
        if not self.components:
            raise ValueError("a vector step function needs at least one component")
        grids = {f.grid for f in self.components}
        if len(grids) != 1:
            raise ValueError("all components must share one grid")
        return self

    @classmethod
    def of(cls, functions: Sequence[StepFunction]) -> VectorStepFunction:
        """Build from functions on possibly different grids, aligning them."""
        return cls(components=align(*functions))

    def __len__(self) -> int:
        return len(self.components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VectorStepFunction):
            return NotImplemented
        return self.components == other.components

    __hash__ = None  # type: ignore[assignment]

    @property
    def template(self) -> StepFunction:
        return self.components[0]

    @property
    def n(self) -> int:
        return self.template.n

    @property
    def approximate(self) -> bool:
        return any(f.approximate for f in self.components)

    def stacked(self) -> np.ndarray:
        return np.stack([f.values for f in self.components])

    def lp_combine(self, u: float) -> StepFunction:
        """The cellwise ℓ^u norm (Σ_k |f_k|^u)^{1/u}, max for u = ∞."""
        if u <= 0:
            raise ValueError(f"ℓ^u needs u > 0, got {u}")
        stack = np.abs(self.stacked())
        if math.isinf(u):
            combined = stack.max(axis=0)
        else:
            combined = np.power(np.power(stack, u).sum(axis=0), 1.0 / u)
        return self.template.with_values(combined, approximate=self.approximate)

    def map(
        self, operator: Callable[[StepFunction], StepFunction]
    ) -> VectorStepFunction:
        return VectorStepFunction.of([operator(f) for f in self.components])

    def scale(self, factor: float) -> VectorStepFunction:
        return VectorStepFunction(components=tuple(factor * f for f in self.components))

    def with_resolution(self, J: int) -> VectorStepFunction:
        return VectorStepFunction(
            components=tuple(f.with_resolution(J) for f in self.components)
        )
