"""
Piecewise power weights on one axis.

Each piece is w(s) = c·|s - s₀|^β on [lo, hi). Powers w^q integrate in closed
form through the antiderivative sign(s - s₀)|s - s₀|^E / E with E = βq + 1
(sign(s - s₀)·ln|s - s₀| when E = 0), which keeps weighted norms of step
functions exact.
"""

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class WeightPiece(BaseModel):
    """w(s) = coeff·|s - center|^power on [lo, hi)."""

    model_config = ConfigDict(frozen=True)

    lo: float
    hi: float
    coeff: float = Field(gt=0)
    center: float = 0.0
    power: float = 0.0

    @model_validator(mode="after")
    def _check_interval(self) -> WeightPiece:
        if not self.lo < self.hi:
            raise ValueError(f"empty weight piece [{self.lo}, {self.hi})")
        return self

    def integrable(self, q: float) -> bool:
        return not (self.power * q <= -1 and self.lo <= self.center <= self.hi)

    def _antiderivative(self, s: np.ndarray, q: float) -> np.ndarray:
        exponent = self.power * q + 1.0
        d = s - self.center
        if exponent == 0:
            with np.errstate(divide="ignore"):
                return np.sign(d) * np.log(np.abs(d))
        return np.sign(d) * np.power(np.abs(d), exponent) / exponent

    def integrals(self, a: np.ndarray, b: np.ndarray, q: float) -> np.ndarray:
        """∫_a^b w^q over [a, b] ∩ [lo, hi) for arrays of endpoints."""
        a = np.clip(np.asarray(a, dtype=np.float64), self.lo, self.hi)
        b = np.clip(np.asarray(b, dtype=np.float64), self.lo, self.hi)
        if self.power == 0:
            return self.coeff**q * (b - a)
        values = self._antiderivative(b, q) - self._antiderivative(a, q)
        return np.where(b > a, self.coeff**q * values, 0.0)

    def extremes(self, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """
        Infimum and supremum of w over [a, b] ∩ [lo, hi).

        Cells missing the piece get (+inf, 0) so they drop out of min/max.
        """
        a = np.clip(np.asarray(a, dtype=np.float64), self.lo, self.hi)
        b = np.clip(np.asarray(b, dtype=np.float64), self.lo, self.hi)
        empty = b <= a
        if self.power == 0:
            low = np.full(a.shape, self.coeff)
            high = np.full(a.shape, self.coeff)
        else:
            far = np.maximum(np.abs(a - self.center), np.abs(b - self.center))
            inside = (a <= self.center) & (self.center <= b)
            closest = np.minimum(np.abs(a - self.center), np.abs(b - self.center))
            near = np.where(inside, 0.0, closest)
            with np.errstate(divide="ignore"):
                near_value = self.coeff * np.power(near, self.power)
                far_value = self.coeff * np.power(far, self.power)
            if self.power > 0:
                low, high = near_value, far_value
            else:
                low, high = far_value, near_value
        return np.where(empty, np.inf, low), np.where(empty, 0.0, high)

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        with np.errstate(divide="ignore"):
            values = self.coeff * np.power(np.abs(x - self.center), self.power)
        return np.where((self.lo <= x) & (x < self.hi), values, 0.0)


class AxisWeightProfile(BaseModel):
    """A weight on one axis, made of contiguous power pieces."""

    model_config = ConfigDict(frozen=True)

    pieces: tuple[WeightPiece, ...]

    @model_validator(mode="after")
    def _check_contiguous(self) -> AxisWeightProfile:
        if not self.pieces:
            raise ValueError("a weight profile needs at least one piece")
        for left, right in zip(self.pieces, self.pieces[1:]):
            if left.hi != right.lo:
                raise ValueError(
                    f"weight pieces must be contiguous, gap at {left.hi} / {right.lo}"
                )
        return self

    @property
    def lo(self) -> float:
        return self.pieces[0].lo

    @property
    def hi(self) -> float:
        return self.pieces[-1].hi

    @classmethod
    def constant(cls, value: float, lo: float, hi: float) -> AxisWeightProfile:
        return cls(pieces=(WeightPiece(lo=lo, hi=hi, coeff=value),))

    @classmethod
    def maximal_indicator(
        cls,
        a: float,
        b: float,
        eta: float,
        lo: float,
        hi: float,
    ) -> AxisWeightProfile:
        """
        (Mχ_{[a,b]})^η restricted to [lo, hi).

        Mχ_{[a,b]}(x) is 1 on [a, b], (b - a)/(b - x) left of a and
        (b - a)/(x - a) right of b.
        """
        if not a < b:
            raise ValueError(f"empty interval [{a}, {b}]")
        if not lo < hi:
            raise ValueError(f"empty domain [{lo}, {hi})")
        scale = (b - a) ** eta
        candidates = [
            (lo, min(a, hi), scale, b, -eta),
            (max(a, lo), min(b, hi), 1.0, 0.0, 0.0),
            (max(b, lo), hi, scale, a, -eta),
        ]
        pieces = tuple(
            WeightPiece(lo=p_lo, hi=p_hi, coeff=coeff, center=center, power=power)
            for p_lo, p_hi, coeff, center, power in candidates
            if p_lo < p_hi
        )
        return cls(pieces=pieces)

    def check_integrable(self, q: float) -> None:
        for piece in self.pieces:
            if not piece.integrable(q):
                raise ValueError(
                    f"weight piece on [{piece.lo}, {piece.hi}) with power "
                    f"{piece.power} is not locally integrable to the power {q}"
                )

    def cell_integrals(self, edges: np.ndarray, q: float) -> np.ndarray:
        """∫ w^q over each cell [edges[i], edges[i+1])."""
        self.check_integrable(q)
        edges = np.asarray(edges, dtype=np.float64)
        total = np.zeros(len(edges) - 1)
        for piece in self.pieces:
            total += piece.integrals(edges[:-1], edges[1:], q)
        return total

    def power_integral(self, a: float, b: float, q: float = 1.0) -> float:
        """∫_a^b w^q as a float."""
        return float(self.cell_integrals(np.array([a, b]), q)[0])

    def cell_extremes(self, edges: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Per-cell infimum and supremum of the weight."""
        edges = np.asarray(edges, dtype=np.float64)
        low = np.full(len(edges) - 1, np.inf)
        high = np.zeros(len(edges) - 1)
        for piece in self.pieces:
            piece_low, piece_high = piece.extremes(edges[:-1], edges[1:])
            low = np.minimum(low, piece_low)
            high = np.maximum(high, piece_high)
        # cells outside the profile carry the zero weight
        low = np.where(np.isinf(low), 0.0, low)
        return low, high

    def evaluate(self, x: np.ndarray | float) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        total = np.zeros(x.shape)
        for piece in self.pieces:
            total = total + piece.evaluate(x)
        return total

    def scaled(self, factor: float) -> AxisWeightProfile:
        if factor <= 0:
            raise ValueError("weights scale by positive factors only")
        return AxisWeightProfile(
            pieces=tuple(
                piece.model_copy(update={"coeff": piece.coeff * factor})
                for piece in self.pieces
            )
        )

