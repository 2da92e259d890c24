"""Tests for the dyadic grid and step functions."""

from fractions import Fraction

import numpy as np
import pytest

from mixnorm_lab.grid import (
    DyadicCube,
    StepFunction,
    align,
    block_view,
    cubes_intersecting_window,
    dilate_dyadic,
    restrict,
    shifted_containment_witness,
    translate,
)


def test_cubes_intersecting_window_standard():
    """Test cube enumeration on the standard grid."""
    assert len(cubes_intersecting_window(0, 1, 2)) == 4
    assert cubes_intersecting_window(-1, 1, 2) == [DyadicCube.standard(-1, 0, 0)]


def test_cubes_intersecting_window_shifted():
    """Test that a shifted grid needs one extra cube to cover the window."""
    cubes = cubes_intersecting_window(0, 0, 1, shift=(1,))

    assert [cube.index for cube in cubes] == [(-1,), (0,)]
    assert all(cube.is_shifted for cube in cubes)


def test_cubes_intersecting_window_rejects_coarse_shifted_levels():
    """Test that shifted levels below -K-2 are rejected."""
    with pytest.raises(ValueError):
        cubes_intersecting_window(-3, 0, 1, shift=(1,))


def test_cube_geometry():
    """Test side, volume and corners of standard and shifted cubes."""
    cube = DyadicCube(level=1, index=(1, 0), shift=(2, 0))

    assert cube.side == 0.5
    assert cube.volume == 0.25
    assert cube.lower_corner() == (Fraction(5, 6), Fraction(0))


def test_shifted_containment_witness():
    """Test that every cube sits in a shifted cube at most 6^n times larger."""
    corner = (Fraction(1, 2),)
    witness = shifted_containment_witness(corner, Fraction(1))

    assert witness is not None
    assert witness.contains_region(corner, Fraction(1))
    assert witness.exact_side <= 6


def test_indicator_values():
    """Test χ_Q for a cube finer than the window."""
    f = StepFunction.indicator(DyadicCube.standard(0, 1), J=0, K=1)

    assert f.values.tolist() == [0.0, 1.0]
    assert f.integral() == 1.0


def test_refine_and_resolution_keep_the_function(unit_square):
    """Test that refinement and resolution changes are exact."""
    refined = unit_square.refine()
    finer = unit_square.with_resolution(2)

    assert refined.values.shape == (3, 3)
    assert refined.integral() == pytest.approx(1.0)
    assert finer.with_resolution(0) == unit_square


def test_with_window_crop_rejects_lost_support():
    """Test that cropping cannot drop non-zero cells."""
    f = StepFunction.indicator(DyadicCube.standard(0, 1), J=0, K=1)

    with pytest.raises(ValueError):
        f.with_window(0)


def test_align_uses_finest_grid(unit_interval):
    """Test that align brings functions to a common grid."""
    g = StepFunction.constant(2.0, n=1, J=1, K=0)
    left, right = align(unit_interval, g)

    assert left.grid == right.grid == (1, 1, 1, 0)
    assert right.values.tolist() == [2.0, 2.0, 0.0, 0.0]


def test_restrict_standard_cube():
    """Test restriction to a standard cube."""
    f = StepFunction.constant(3.0, n=1, J=1, K=0)
    local = restrict(f, DyadicCube.standard(1, 1))

    assert local.values.tolist() == [0.0, 3.0]


def test_restrict_shifted_cube():
    """Test that shifted restrictions refine to depth 1."""
    f = StepFunction.constant(1.0, n=1, J=0, K=0)
    local = restrict(f, DyadicCube(level=0, index=(0,), shift=(1,)))

    assert local.depth == 1
    assert local.values.tolist() == [0.0, 1.0, 1.0]


def test_dilate_dyadic():
    """Test that f(2x) of χ_[0,2) is χ_[0,1)."""
    f = StepFunction.indicator(DyadicCube.standard(-1, 0), J=0, K=1)

    assert dilate_dyadic(f, 1) == StepFunction.constant(1.0, n=1, J=1, K=0)


def test_translate_extends_window():
    """Test translation by one cell."""
    f = StepFunction.indicator(DyadicCube.standard(0, 0))
    moved = translate(f, (1,))

    assert moved == StepFunction.indicator(DyadicCube.standard(0, 1), J=0, K=1)


def test_translate_rejects_negative_shift(unit_interval):
    """Test that negative translations are rejected."""
    with pytest.raises(ValueError):
        translate(unit_interval, (-1,))


def test_serialize_parse():
    """Test the text format, including the approximate flag."""
    f = StepFunction(
        n=2, J=0, K=1, values=np.arange(4.0).reshape(2, 2), approximate=True
    )
    text = f.serialize()

    assert text.splitlines()[0] == "2 0 1 0 approx=1"
    assert StepFunction.parse(text) == f


def test_parse_rejects_wrong_value_count():
    """Test that a body of the wrong length is rejected."""
    with pytest.raises(ValueError, match="expected 2 values"):
        StepFunction.parse("1 0 1 0\n1.0\n")


def test_step_function_rejects_non_finite_values():
    """Test that NaN cells are rejected."""
    with pytest.raises(ValueError):
        StepFunction(n=1, J=0, K=0, values=np.array([np.nan]))


def test_block_view():
    """Test the block view layout."""
    values = np.arange(16.0).reshape(4, 4)
    blocks = block_view(values, 2)

    assert blocks.shape == (2, 2, 2, 2)
    assert blocks[1, 0].tolist() == [[8.0, 9.0], [12.0, 13.0]]
