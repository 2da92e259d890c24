"""Tests for the shared models."""

import math

import pytest
from pydantic import ValidationError

from mixnorm_lab.models import (
    ExponentVector,
    GeneratorSpec,
    NormBracket,
    ProbeKind,
    ProbeReport,
    Regime,
    RegimeError,
    SpaceParams,
    parse_extended,
)


def test_exponent_vector_parse():
    """Test parsing of comma-separated exponents."""
    pbar = ExponentVector.parse("2, 4")

    assert pbar.entries == (2.0, 4.0)
    assert pbar.n == 2
    assert pbar.reciprocal_sum == pytest.approx(0.75)
    assert str(pbar) == "2,4"


def test_exponent_vector_conjugate():
    """Test Hölder conjugates, including the endpoints 1 and ∞."""
    conjugate = ExponentVector.of(2, 4).conjugate()

    assert conjugate.entries == pytest.approx((2.0, 4.0 / 3.0))
    assert ExponentVector.of(1, math.inf).conjugate().entries == (math.inf, 1.0)


def test_exponent_vector_rejects_non_positive_entries():
    """Test that zero exponents are rejected and p < 1 has no conjugate."""
    with pytest.raises(ValidationError):
        ExponentVector.of(0, 2)
    with pytest.raises(ValueError):
        ExponentVector.of(0.5, 2).conjugate()


def test_parse_extended():
    """Test that inf parses to +∞."""
    assert parse_extended("inf") == math.inf
    assert parse_extended("2.5") == 2.5


def test_space_params_regimes():
    """Test the three parameter regimes."""
    assert SpaceParams.of("2,4", 4, 8).regime is Regime.NONTRIVIAL_FINITE
    assert SpaceParams.of("2,4", 4, math.inf).regime is Regime.NONTRIVIAL_MORREY
    assert SpaceParams.of("2,4", 2, 8).regime is Regime.DEGENERATE
    assert SpaceParams.of("2,4", 4, 4).regime is Regime.DEGENERATE


def test_space_params_critical_t(params):
    """Test the critical Morrey exponent n/(Σ1/p_i)."""
    assert params.critical_t == pytest.approx(8.0 / 3.0)
    assert params.cube_exponent == pytest.approx(1.0 / 4.0 - 3.0 / 8.0)
    assert params.r_conjugate == pytest.approx(8.0 / 7.0)


def test_require_nontrivial_raises():
    """Test that degenerate parameters raise RegimeError."""
    with pytest.raises(RegimeError):
        SpaceParams.of("2,4", 2, 8).require_nontrivial()


def test_require_finite_rejects_morrey():
    """Test that r = ∞ is not in the finite regime."""
    with pytest.raises(RegimeError):
        SpaceParams.of("2,4", 4, math.inf).require_finite()


def test_norm_bracket_order():
    """Test that brackets keep lower ≤ upper."""
    bracket = NormBracket(lower=1.0, upper=2.0)

    assert bracket.ratio == 2.0
    assert bracket.contains(1.5)
    with pytest.raises(ValidationError):
        NormBracket(lower=2.0, upper=1.0)


def test_generator_spec_ranges():
    """Test that an empty value range is rejected."""
    with pytest.raises(ValidationError):
        GeneratorSpec(low=1.0, high=0.0)
    assert GeneratorSpec(J=1, K=2).cells_per_axis == 8


def test_probe_report_csv_row():
    """Test the CSV row of a probe report."""
    report = ProbeReport(
        name="holder",
        kind=ProbeKind.EXACT,
        params="pbar=2,4;t=4;r=8",
        trials=10,
        max_ratio=math.inf,
        witness_seed=7,
        witness_index=3,
        passed=False,
        notes=("approx",),
    )

    assert report.csv_row() == [
        "holder",
        "pbar=2,4;t=4;r=8",
        "10",
        "inf",
        "7:3",
        "false",
        "approx",
    ]
