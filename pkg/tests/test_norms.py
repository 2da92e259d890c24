"""Tests for the mixed Lebesgue, Morrey and Bourgain-Morrey norms."""

import math

import numpy as np
import pytest

from mixnorm_lab.grid import (
    DyadicCube,
    StepFunction,
    VectorStepFunction,
    cubes_intersecting_window,
)
from mixnorm_lab.models import ExponentVector, SpaceParams
from mixnorm_lab.norms import (
    AxisWeightProfile,
    WeightPiece,
    bm_norm,
    bm_norm_bracket,
    chi_bm_closed_form,
    level_cube_norms,
    mixed_norm,
    mixed_norm_partial,
    morrey_norm,
    slice_norm,
    vector_bm_norm,
    weighted_bm_level_sum,
    weighted_mixed_norm,
)
from mixnorm_lab.verify import indicator_oracle_lattice


def test_mixed_norm_of_square():
    """Test ‖χ_[0,2)²‖ in L^(2,4)."""
    f = StepFunction.indicator(DyadicCube.standard(-1, 0, 0), K=1)

    assert mixed_norm(f, ExponentVector.of(2, 4)) == pytest.approx(4 ** (3 / 8))


def test_mixed_norm_axis_order():
    """Test that the first exponent acts on the first axis."""
    f = StepFunction(n=2, J=0, K=1, values=np.array([[1.0, 1.0], [0.0, 0.0]]))

    assert mixed_norm(f, ExponentVector.of(2, 4)) == pytest.approx(2**0.25)
    assert mixed_norm(f, ExponentVector.of(4, 2)) == pytest.approx(2**0.5)


def test_mixed_norm_infinite_exponent():
    """Test that p = ∞ takes the largest cell magnitude."""
    f = StepFunction(n=1, J=0, K=1, values=np.array([-3.0, 2.0]))

    assert mixed_norm(f, ExponentVector.of(math.inf)) == 3.0


def test_mixed_norm_partial():
    """Test partial norms over the first axis."""
    f = StepFunction(n=2, J=0, K=1, values=np.array([[3.0, 0.0], [4.0, 1.0]]))
    partial = mixed_norm_partial(f, ExponentVector.of(2, 2), 1, keep_dims=False)

    assert partial.n == 1
    assert partial.values.tolist() == pytest.approx([5.0, 1.0])


def test_weighted_mixed_norm():
    """Test ∫_0^1 s ds through a power weight."""
    f = StepFunction.indicator(DyadicCube.standard(0, 0))
    weight = AxisWeightProfile(pieces=(WeightPiece(lo=0, hi=1, coeff=1, power=1),))

    assert weighted_mixed_norm(f, ExponentVector.of(1), [weight]) == pytest.approx(0.5)


def test_weighted_mixed_norm_constant_weight_scales(unit_square):
    """Test that a constant weight c scales the norm by c per axis."""
    weights = [AxisWeightProfile.constant(2.0, 0.0, 1.0)] * 2
    pbar = ExponentVector.of(2, 4)

    assert weighted_mixed_norm(unit_square, pbar, weights) == pytest.approx(4.0)


def test_level_cube_norms(unit_interval):
    """Test per-cube norms at the cell and window levels."""
    pbar = ExponentVector.of(2)

    assert level_cube_norms(unit_interval, 0, pbar).tolist() == pytest.approx([1, 0])
    assert level_cube_norms(unit_interval, -1, pbar).tolist() == pytest.approx([1])


def test_bm_norm_unit_square(unit_square, params):
    """Test the unit-square value (1 + 1/3 + 1/3)^{1/8}."""
    assert bm_norm(unit_square, params) == pytest.approx((5 / 3) ** 0.125, rel=1e-12)


def test_bm_norm_is_homogeneous(unit_square, params):
    """Test ‖λf‖ = |λ|‖f‖."""
    assert bm_norm(-3 * unit_square, params) == pytest.approx(
        3 * bm_norm(unit_square, params)
    )


def test_bm_norm_does_not_depend_on_representation(unit_square, params):
    """Test that finer cells and wider windows give the same norm."""
    wide = unit_square.with_resolution(2).with_window(2)

    expected = bm_norm(unit_square, params)

    assert bm_norm(wide, params) == pytest.approx(expected, rel=1e-12)


def test_bm_norm_zero_and_degenerate(unit_square):
    """Test the zero function and the degenerate regime."""
    degenerate = SpaceParams.of("2,4", 4, 4)

    assert bm_norm(0 * unit_square, degenerate) == 0.0
    assert bm_norm(unit_square, degenerate) == math.inf


def test_bm_norm_rejects_depth_one(unit_square, params):
    """Test that exact norms need depth 0."""
    with pytest.raises(ValueError, match="depth 0"):
        bm_norm(unit_square.refine(), params)


def test_morrey_norm_unit_square(unit_square):
    """Test that the Morrey norm of χ_[0,1)² is attained by the cube itself."""
    params = SpaceParams.of("2,4", 4, math.inf)

    assert morrey_norm(unit_square, params) == pytest.approx(1.0)
    assert bm_norm(unit_square, params) == pytest.approx(1.0)


def test_morrey_norm_below_critical_t_is_infinite(unit_square):
    """Test that 1/t > σ makes coarse cubes blow up."""
    assert morrey_norm(unit_square, SpaceParams.of("2,4", 2, math.inf)) == math.inf


def test_bm_norm_bracket_contains_exact_value(unit_square, params):
    """Test that the certified bracket holds the exact norm."""
    exact = bm_norm(unit_square, params)
    for j_cut in (0, 2):
        bracket = bm_norm_bracket(unit_square, params, j_cut)
        assert bracket.contains(exact, rtol=1e-10)


def test_bm_norm_bracket_shifted(unit_square, params):
    """Test a bracket over a shifted grid."""
    bracket = bm_norm_bracket(unit_square, params, 1, shift=(1, 2))

    assert 0 < bracket.lower <= bracket.upper < math.inf


def test_bm_norm_bracket_rejects_low_cut(unit_square, params):
    """Test that the cut level cannot sit below the first level."""
    with pytest.raises(ValueError):
        bm_norm_bracket(unit_square, params, -1)


def test_vector_bm_norm(unit_square, params):
    """Test the ℓ² combination of two copies of χ."""
    fv = VectorStepFunction.of([unit_square, unit_square])

    assert vector_bm_norm(fv, params, 2.0) == pytest.approx(
        math.sqrt(2) * bm_norm(unit_square, params)
    )


def test_slice_norm_unit_square(unit_square, params):
    """Test the single-level dual quantity of χ at its own level."""
    assert slice_norm(unit_square, 0, params) == pytest.approx(1.0)


def test_slice_norm_rejects_level_outside_window(unit_square, params):
    """Test that the level must lie in [-K, J]."""
    with pytest.raises(ValueError):
        slice_norm(unit_square, 1, params)


def test_slice_norm_vector_needs_exponent(unit_square, params):
    """Test that vector inputs need u′."""
    with pytest.raises(ValueError):
        slice_norm(VectorStepFunction.of([unit_square]), 0, params)


def test_weighted_bm_level_sum_checks_eta(unit_square, params):
    """Test that η must lie below 1/max p̄."""
    with pytest.raises(ValueError):
        weighted_bm_level_sum(unit_square, params, 0.25, [0])
    assert weighted_bm_level_sum(unit_square, params, 0.2, [0]) == pytest.approx(1.0)


@pytest.mark.parametrize("space", indicator_oracle_lattice(), ids=lambda p: p.label())
def test_bm_norm_matches_closed_form(space):
    """Test χ_[0,1)^n against its geometric-series closed form."""
    chi = StepFunction.indicator(DyadicCube.standard(0, *([0] * space.n)))

    assert bm_norm(chi, space) == pytest.approx(chi_bm_closed_form(space), rel=1e-10)


@pytest.mark.parametrize("pbar", ["2,4", "1,3", "4,inf", "3,3"])
def test_mixed_norm_of_cube_indicator(pbar):
    """Test ‖χ_Q‖_{L^{p̄}} = |Q|^σ for cubes of every level in the window."""
    exponents = ExponentVector.parse(pbar)
    for level in range(-1, 3):
        for cube in cubes_intersecting_window(level, 1, 2):
            chi = StepFunction.indicator(cube, J=2, K=1)
            expected = cube.volume**exponents.sigma
            assert mixed_norm(chi, exponents) == pytest.approx(expected, rel=1e-12)
