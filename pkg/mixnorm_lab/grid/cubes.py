"""
Dyadic cubes, standard and shifted, and their enumeration over a window.

A cube at level j has side 2^{-j}. Its lower corner is 2^{-j}(m + ā/3), where
ā ∈ {0, 1, 2}^n is the shift of the grid (ā = 0 for the standard grid).
Corners are handled with exact rationals so containment tests never round.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, model_validator

SHIFTS = (0, 1, 2)


def _power_of_two(exponent: int) -> Fraction:
    return Fraction(2) ** exponent


class DyadicCube(BaseModel):
    """The cube Q_{j,m} of a standard or shifted dyadic grid."""

    model_config = ConfigDict(frozen=True)

    level: int
    index: tuple[int, ...]
    shift: tuple[int, ...] | None = None

    @model_validator(mode="after")
    def _check_shape(self) -> DyadicCube:
        if not self.index:
            raise ValueError("a cube index needs at least one entry")
        if self.shift is not None:
            if len(self.shift) != len(self.index):
                raise ValueError("shift and index must have the same length")
            if any(a not in SHIFTS for a in self.shift):
                raise ValueError(
                    f"shift entries must lie in {{0,1,2}}, got {self.shift}"
                )
        return self

    @classmethod
    def standard(cls, level: int, *index: int) -> DyadicCube:
        return cls(level=level, index=tuple(index))

    @property
    def n(self) -> int:
        return len(self.index)

    @property
    def offsets(self) -> tuple[int, ...]:
        return self.shift if self.shift is not None else (0,) * self.n

    @property
    def is_shifted(self) -> bool:
        return any(self.offsets)

    @property
    def side(self) -> float:
        return math.ldexp(1.0, -self.level)

    @property
    def volume(self) -> float:
        return math.ldexp(1.0, -self.level * self.n)

    @property
    def exact_side(self) -> Fraction:
        return _power_of_two(-self.level)

    def lower_corner(self) -> tuple[Fraction, ...]:
        side = self.exact_side
        return tuple(
            side * (m + Fraction(a, 3)) for m, a in zip(self.index, self.offsets)
        )

    def contains_region(self, corner: Sequence[Fraction], side: Fraction) -> bool:
        """Whether the half-open cube corner + [0, side)^n lies inside this cube."""
        own_side = self.exact_side
        return all(
            low <= c and c + side <= low + own_side
            for low, c in zip(self.lower_corner(), corner)
        )

    def contains_cube(self, other: DyadicCube) -> bool:
        return self.contains_region(other.lower_corner(), other.exact_side)

    def cell_range(self, J: int, depth: int, cells: int) -> tuple[slice, ...] | None:
        """
        Cells of a (J, depth) grid covered by the cube, clipped to the window.

        Parameters
        ----------
        J : int
            Resolution level of the grid; cells have width 2^{-J}/3^depth.
        depth : int
            Refinement depth (0 or 1).
        cells : int
            Cells per axis of the window.

        Returns
        -------
        tuple[slice, ...] | None
            One slice per axis, or None when the cube misses the window.
        """
        if self.level > J:
            raise ValueError(f"cube level {self.level} is finer than grid level {J}")
        if self.is_shifted and depth == 0:
            raise ValueError("shifted cubes need a third-refined grid")
        scale = 2 ** (J - self.level)
        length = scale * 3**depth
        slices = []
        for m, a in zip(self.index, self.offsets):
            start = m * length + scale * a
            lo, hi = max(start, 0), min(start + length, cells)
            if lo >= hi:
                return None
            slices.append(slice(lo, hi))
        return tuple(slices)


def cubes_intersecting_window(
    level: int,
    K: int,
    n: int,
    shift: Sequence[int] | None = None,
) -> list[DyadicCube]:
    """
    Cubes of one level whose intersection with [0, 2^K)^n has positive volume.

    Parameters
    ----------
    level : int
        Level j of the cubes.
    K : int
        Window level.
    n : int
        Dimension.
    shift : Sequence[int] | None
        Grid shift ā; None for the standard grid.

    Returns
    -------
    list[DyadicCube]
        Pairwise disjoint cubes covering the window, in row-major index order.
    """
    if shift is not None:
        shift = tuple(shift)
        if len(shift) != n:
            raise ValueError(f"shift {shift} does not match dimension {n}")
        if level < -K - 2:
            raise ValueError(
                f"shifted level {level} is below {-K - 2}; coarser shifted cubes "
                "contain the whole window"
            )
    offsets = shift if shift is not None else (0,) * n
    reach = _power_of_two(K + level)
    ranges = []
    for a in offsets:
        third = Fraction(a, 3)
        # m + a/3 < 2^{K+j} and m + 1 + a/3 > 0
        ranges.append(range(math.floor(-1 - third) + 1, math.ceil(reach - third)))
    return [
        DyadicCube(level=level, index=tuple(index), shift=shift)
        for index in itertools.product(*ranges)
    ]


def shifted_containment_witness(
    corner: Sequence[Fraction],
    side: Fraction,
) -> DyadicCube | None:
    """
    Find a shifted dyadic cube R ⊇ Q with |R| ≤ 6^n |Q|.

    Searches every shift ā ∈ {0,1,2}^n and every level whose side lies in
    [side, 6·side], finest level first.
    """
    side = Fraction(side)
    corner = tuple(Fraction(c) for c in corner)
    if side <= 0:
        raise ValueError("cube side must be positive")
    n = len(corner)
    guess = side.denominator.bit_length() - side.numerator.bit_length()
    levels = [
        j
        for j in range(guess + 4, guess - 6, -1)
        if side <= _power_of_two(-j) <= 6 * side
    ]
    for level in levels:
        level_side = _power_of_two(-level)
        for shift in itertools.product(SHIFTS, repeat=n):
            index = tuple(
                math.floor(c / level_side - Fraction(a, 3))
                for c, a in zip(corner, shift)
            )
            candidate = DyadicCube(level=level, index=index, shift=shift)
            if candidate.contains_region(corner, side):
                return candidate
    return None
