"""
Pydantic models for exponent vectors and function-space parameters.

A space is described by an exponent vector p̄ (one entry per axis, axis 1
is the innermost norm), a Morrey exponent t and a summability exponent r.
"""

from __future__ import annotations

import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

REGIME_CONDITION = "n/(Σ1/p_i) < t < r < ∞ or n/(Σ1/p_i) ≤ t < r = ∞"


class RegimeError(ValueError):
    """Raised when (p̄, t, r) lies outside the non-trivial regime."""


class Regime(str, Enum):
    """Which parameter triples give a non-zero space."""

    NONTRIVIAL_FINITE = "nontrivial_finite"
    NONTRIVIAL_MORREY = "nontrivial_morrey"
    DEGENERATE = "degenerate"


def parse_extended(text: str) -> float:
    """Parse a positive extended real, accepting ``inf`` and ``∞``."""
    value = text.strip().lower()
    if value in {"inf", "+inf", "infinity", "∞"}:
        return math.inf
    try:
        return float(value)
    except ValueError as e:
        raise ValueError(f"not a number: {text!r}") from e


def format_extended(value: float) -> str:
    if math.isinf(value):
        return "inf"
    return f"{value:.12g}"


class ExponentVector(BaseModel):
    """The n-tuple p̄ = (p_1, ..., p_n) with entries in (0, ∞]."""

    model_config = ConfigDict(frozen=True)

    entries: tuple[float, ...]

    @field_validator("entries")
    @classmethod
    def _check_entries(cls, entries: tuple[float, ...]) -> tuple[float, ...]:
        if not entries:
            raise ValueError("an exponent vector needs at least one entry")
        for p in entries:
            if math.isnan(p) or p <= 0:
                raise ValueError(f"exponent entries must lie in (0, ∞], got {p}")
        return entries

    @classmethod
    def of(cls, *entries: float) -> ExponentVector:
        return cls(entries=tuple(float(p) for p in entries))

    @classmethod
    def uniform(cls, p: float, n: int) -> ExponentVector:
        return cls(entries=(float(p),) * n)

    @classmethod
    def parse(cls, text: str) -> ExponentVector:
        """Parse a comma separated list such as ``2,4`` or ``2,inf``."""
        return cls(entries=tuple(parse_extended(item) for item in text.split(",")))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def reciprocals(self) -> tuple[float, ...]:
        return tuple(0.0 if math.isinf(p) else 1.0 / p for p in self.entries)

    @property
    def reciprocal_sum(self) -> float:
        return math.fsum(self.reciprocals)

    @property
    def sigma(self) -> float:
        """Mean reciprocal σ = (1/n) Σ 1/p_i."""
        return self.reciprocal_sum / self.n

    @property
    def max_entry(self) -> float:
        return max(self.entries)

    def conjugate(self) -> ExponentVector:
        """
        Conjugate exponents with 1/p_i + 1/p_i′ = 1.

        Raises
        ------
        ValueError
            If some entry is below 1.
        """
        conjugates = []
        for p in self.entries:
            if p < 1:
                raise ValueError(f"exponent {p} < 1 has no conjugate")
            if p == 1:
                conjugates.append(math.inf)
            elif math.isinf(p):
                conjugates.append(1.0)
            else:
                conjugates.append(p / (p - 1.0))
        return ExponentVector(entries=tuple(conjugates))

    def strictly_between_one_and_infinity(self) -> bool:
        return all(1 < p < math.inf for p in self.entries)

    def dominated_by(self, other: ExponentVector) -> bool:
        """True when p_i ≤ s_i on every axis."""
        return self.n == other.n and all(
            p <= s for p, s in zip(self.entries, other.entries)
        )

    def __str__(self) -> str:
        return ",".join(format_extended(p) for p in self.entries)


class SpaceParams(BaseModel):
    """Parameters (p̄, t, r) of a mixed Bourgain-Morrey space."""

    model_config = ConfigDict(frozen=True)

    pbar: ExponentVector
    t: float
    r: float

    @model_validator(mode="after")
    def _check_exponents(self) -> SpaceParams:
        if math.isnan(self.t) or self.t <= 0 or math.isinf(self.t):
            raise ValueError(f"t must be a positive real, got {self.t}")
        if math.isnan(self.r) or self.r <= 0:
            raise ValueError(f"r must lie in (0, ∞], got {self.r}")
        return self

    @classmethod
    def of(cls, pbar: str | ExponentVector, t: float, r: float) -> SpaceParams:
        vector = ExponentVector.parse(pbar) if isinstance(pbar, str) else pbar
        return cls(pbar=vector, t=float(t), r=float(r))

    @property
    def n(self) -> int:
        return self.pbar.n

    @property
    def sigma(self) -> float:
        return self.pbar.sigma

    @property
    def critical_t(self) -> float:
        """The threshold n/(Σ 1/p_i) below which the space is trivial."""
        total = self.pbar.reciprocal_sum
        if total == 0:
            return math.inf
        return self.n / total

    @property
    def cube_exponent(self) -> float:
        """Exponent 1/t − σ of |Q| in the cube weights."""
        return 1.0 / self.t - self.sigma

    @property
    def regime(self) -> Regime:
        critical = self.critical_t
        if math.isinf(self.r):
            if critical <= self.t:
                return Regime.NONTRIVIAL_MORREY
            return Regime.DEGENERATE
        if critical < self.t < self.r:
            return Regime.NONTRIVIAL_FINITE
        return Regime.DEGENERATE

    @property
    def r_conjugate(self) -> float:
        if math.isinf(self.r):
            return 1.0
        if self.r <= 1:
            raise ValueError(f"r = {self.r} ≤ 1 has no conjugate exponent")
        return self.r / (self.r - 1.0)

    @property
    def t_conjugate(self) -> float:
        if self.t <= 1:
            raise ValueError(f"t = {self.t} ≤ 1 has no conjugate exponent")
        return self.t / (self.t - 1.0)

    def require_nontrivial(self) -> Regime:
        regime = self.regime
        if regime is Regime.DEGENERATE:
            raise RegimeError(
                f"degenerate parameters ({self.label()}): the space is {{0}} "
                f"unless {REGIME_CONDITION}"
            )
        return regime

    def require_finite(self) -> None:
        if self.regime is not Regime.NONTRIVIAL_FINITE:
            raise RegimeError(
                f"parameters ({self.label()}) must satisfy "
                "n/(Σ1/p_i) < t < r < ∞"
            )

    def with_r(self, r: float) -> SpaceParams:
        return SpaceParams(pbar=self.pbar, t=self.t, r=r)

    def with_t(self, t: float) -> SpaceParams:
        return SpaceParams(pbar=self.pbar, t=t, r=self.r)

    def with_pbar(self, pbar: ExponentVector) -> SpaceParams:
        return SpaceParams(pbar=pbar, t=self.t, r=self.r)

    def label(self) -> str:
        return (
            f"pbar={self.pbar};t={format_extended(self.t)};"
            f"r={format_extended(self.r)}"
        )


class NormBracket(BaseModel):
    """Certified lower and upper bounds for a norm."""

    model_config = ConfigDict(frozen=True)

    lower: float
    upper: float

    @model_validator(mode="after")
    def _check_order(self) -> NormBracket:
        if math.isnan(self.lower) or math.isnan(self.upper):
            raise ValueError("bracket ends must be numbers")
        if self.lower < 0 or self.upper < 0:
            raise ValueError("bracket ends must be non-negative")
        if math.isinf(self.lower) != math.isinf(self.upper):
            raise ValueError("bracket ends must be both finite or both infinite")
        # one rounding step of slack
        if self.lower > self.upper * (1 + 1e-9):
            raise ValueError(f"lower {self.lower} exceeds upper {self.upper}")
        return self

    @property
    def width(self) -> float:
        if math.isinf(self.upper):
            return 0.0
        return max(self.upper - self.lower, 0.0)

    @property
    def ratio(self) -> float:
        """upper / lower, 1 for the zero bracket."""
        if self.upper == 0 or math.isinf(self.lower):
            return 1.0
        if self.lower == 0:
            return math.inf
        return self.upper / self.lower

    def contains(self, value: float, rtol: float = 1e-12) -> bool:
        slack = rtol * max(abs(value), 1.0)
        return self.lower - slack <= value <= self.upper + slack
