"""
Pydantic models shared by every module of the laboratory.
"""

from .probe import (
    CSV_COLUMNS,
    GeneratorSpec,
    ProbeKind,
    ProbeReport,
    ProbeSpec,
    SignMode,
    SuiteConfig,
)
from .space import (
    REGIME_CONDITION,
    ExponentVector,
    NormBracket,
    Regime,
    RegimeError,
    SpaceParams,
    format_extended,
    parse_extended,
)

__all__ = [
    "CSV_COLUMNS",
    "REGIME_CONDITION",
    "ExponentVector",
    "GeneratorSpec",
    "NormBracket",
    "ProbeKind",
    "ProbeReport",
    "ProbeSpec",
    "Regime",
    "RegimeError",
    "SignMode",
    "SpaceParams",
    "SuiteConfig",
    "format_extended",
    "parse_extended",
]
