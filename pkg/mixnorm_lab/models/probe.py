"""
Pydantic models for probe specifications, reports and suite configuration.
"""

from __future__ import annotations

import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .space import ExponentVector, SpaceParams, parse_extended

CSV_COLUMNS = (
    "probe",
    "params",
    "trials",
    "max_ratio",
    "witness_seed",
    "pass",
    "notes",
)


class SignMode(str, Enum):
    """Sign of randomly generated cell values."""

    NONNEG = "nonneg"
    SIGNED = "signed"


class ProbeKind(str, Enum):
    """How a probe decides pass/fail."""

    # max_ratio ≤ 1 + 1e-10
    EXACT = "exact"
    # finite and stable under one refinement of the grid
    EMPIRICAL = "empirical"


class GeneratorSpec(BaseModel):
    """Shape and value distribution of random step functions."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(default=2, ge=1, le=3)
    J: int = 1
    K: int = Field(default=1, ge=0)
    sparsity: float = Field(default=0.6, ge=0.0, le=1.0)
    low: float = 0.0
    high: float = 1.0
    sign: SignMode = SignMode.NONNEG

    @model_validator(mode="after")
    def _check_ranges(self) -> GeneratorSpec:
        if self.low > self.high:
            raise ValueError(f"empty value range [{self.low}, {self.high}]")
        if self.J + self.K < 0:
            raise ValueError("J + K must be non-negative")
        if self.J + self.K > 8:
            raise ValueError("J + K above 8 is outside desk scale")
        return self

    @property
    def cells_per_axis(self) -> int:
        return 2 ** (self.J + self.K)


class ProbeSpec(BaseModel):
    """Everything needed to rerun one probe bit-for-bit."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(pattern=r"^[a-z][a-z0-9_]*$")
    trials: int = Field(ge=1)
    seed: int = Field(ge=0, lt=2**64)
    generator: GeneratorSpec = GeneratorSpec()
    params: SpaceParams
    options: dict[str, str] = Field(default_factory=dict)

    def option_float(self, key: str, default: float) -> float:
        if key not in self.options:
            return default
        return parse_extended(self.options[key])

    def option_int(self, key: str, default: int) -> int:
        if key not in self.options:
            return default
        try:
            return int(self.options[key])
        except ValueError as e:
            raise ValueError(f"option {key} must be an integer") from e

    def option_exponents(self, key: str, default: ExponentVector) -> ExponentVector:
        if key not in self.options:
            return default
        return ExponentVector.parse(self.options[key])


class ProbeReport(BaseModel):
    """Outcome of one probe run."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    name: str
    kind: ProbeKind
    params: str
    trials: int
    max_ratio: float
    witness_seed: int
    witness_index: int
    passed: bool = Field(alias="pass")
    notes: tuple[str, ...] = ()

    def csv_row(self) -> list[str]:
        if math.isnan(self.max_ratio):
            ratio = "nan"
        elif math.isinf(self.max_ratio):
            ratio = "inf"
        else:
            ratio = repr(self.max_ratio)
        return [
            self.name,
            self.params,
            str(self.trials),
            ratio,
            f"{self.witness_seed}:{self.witness_index}",
            "true" if self.passed else "false",
            ";".join(self.notes),
        ]


class SuiteConfig(BaseModel):
    """A parsed suite configuration file."""

    model_config = ConfigDict(frozen=True)

    probes: tuple[str, ...] = ()
    seed: int = Field(default=20240601, ge=0, lt=2**64)
    trials: int | None = Field(default=None, ge=1)
    output: str | None = None
    overrides: dict[str, dict[str, str]] = Field(default_factory=dict)
