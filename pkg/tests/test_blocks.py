"""Tests for blocks, decompositions and duality brackets."""

import pytest

from mixnorm_lab.blocks import (
    BlockDecomposition,
    BlockTerm,
    block_split,
    h_norm_lower,
    h_norm_upper,
    holder_attainer,
    is_block,
    pairing,
    unit_dual,
    vector_block_bracket,
)
from mixnorm_lab.grid import DyadicCube, StepFunction, VectorStepFunction, restrict
from mixnorm_lab.models import ExponentVector, GeneratorSpec
from mixnorm_lab.norms import bm_norm, mixed_norm
from mixnorm_lab.verify import gen_random_step

UNIT_CUBE = DyadicCube.standard(0, 0, 0)


@pytest.fixture
def random_step() -> StepFunction:
    return gen_random_step(GeneratorSpec(n=2, J=1, K=1, sign="signed"), seed=11)


def test_pairing_aligns_grids(unit_square):
    """Test ∫ f g across different grids."""
    g = 2 * unit_square.with_resolution(2)

    assert pairing(unit_square, g) == pytest.approx(2.0)


def test_unit_dual_attains_holder(random_step):
    """Test ∫ f g = ‖f‖ and ‖g‖_{p̄′} = 1 for the extremizer."""
    pbar = ExponentVector.of(2, 4)
    g = unit_dual(random_step, pbar)

    assert pairing(random_step, g) == pytest.approx(mixed_norm(random_step, pbar))
    assert mixed_norm(g, pbar.conjugate()) == pytest.approx(1.0)


def test_unit_dual_needs_finite_exponents(unit_square):
    """Test that p_i = 1 has no extremizer."""
    with pytest.raises(ValueError):
        unit_dual(unit_square, ExponentVector.of(1, 2))


def test_holder_attainer_is_a_block(random_step, params):
    """Test that the attainer is a block pairing to the cube term."""
    cube = DyadicCube.standard(0, 1, 0)
    b = holder_attainer(random_step, cube, params)
    local = restrict(random_step, cube)

    assert is_block(b, cube, params)
    assert pairing(random_step, b) == pytest.approx(
        cube.volume**params.cube_exponent * mixed_norm(local, params.pbar)
    )


def test_block_split(unit_square, params):
    """Test 3χ = 3·χ with χ a block on its own cube."""
    coefficient, block = block_split(3 * unit_square, UNIT_CUBE, params)

    assert coefficient == pytest.approx(3.0)
    assert block == unit_square
    assert is_block(block, UNIT_CUBE, params)


def test_block_split_of_zero(unit_square, params):
    """Test that the zero function splits as 0·(normalized indicator)."""
    coefficient, block = block_split(0 * unit_square, UNIT_CUBE, params)

    assert coefficient == 0.0
    assert is_block(block, UNIT_CUBE, params)


def test_block_split_rejects_outside_support(unit_interval, params):
    """Test that the function must live in the cube."""
    one_dim = params.with_pbar(ExponentVector.of(2)).with_t(3)
    with pytest.raises(ValueError, match="not supported"):
        block_split(unit_interval, DyadicCube.standard(0, 1), one_dim)


def test_is_block_checks_size(unit_square, params):
    """Test that 2χ exceeds the block bound."""
    assert not is_block(2 * unit_square, UNIT_CUBE, params)


def test_h_norm_upper_of_indicator(unit_square, params):
    """Test the single-level bound and its decomposition for χ."""
    value, decomposition = h_norm_upper(unit_square, params)

    assert value == pytest.approx(1.0)
    assert len(decomposition.terms) == 1
    assert decomposition.coefficient_norm(params.r_conjugate) == pytest.approx(1.0)
    decomposition.validate(unit_square, params)
    assert decomposition.serialize() == "0 0,0 0,0 1.0\n"


def test_h_norm_upper_decomposition_is_valid(random_step, params):
    """Test that the best level decomposes g into blocks."""
    value, decomposition = h_norm_upper(random_step, params)

    decomposition.validate(random_step, params)
    assert decomposition.coefficient_norm(params.r_conjugate) == pytest.approx(value)


def test_validate_rejects_wrong_sum(unit_square, params):
    """Test that a decomposition of g does not validate for 2g."""
    _, decomposition = h_norm_upper(unit_square, params)

    with pytest.raises(ValueError, match="misses"):
        decomposition.validate(2 * unit_square, params)


def test_validate_rejects_non_blocks(unit_square, params):
    """Test that oversized terms are rejected."""
    term = BlockTerm(coefficient=1.0, cube=UNIT_CUBE, block=2 * unit_square)

    with pytest.raises(ValueError, match="not a block"):
        BlockDecomposition(terms=(term,)).validate(2 * unit_square, params)


def test_h_norm_bracket_is_ordered(random_step, params):
    """Test lower ≤ upper with a unit-norm witness."""
    upper, _ = h_norm_upper(random_step, params)
    lower, witness = h_norm_lower(random_step, params, budget=4, seed=3)

    assert 0 < lower <= upper * (1 + 1e-10)
    assert bm_norm(witness, params) == pytest.approx(1.0)


def test_h_norm_lower_ignores_thread_count(random_step, params):
    """Test that the lower bound does not depend on the workers."""
    single, _ = h_norm_lower(random_step, params, budget=4, seed=5)
    threaded, _ = h_norm_lower(random_step, params, budget=4, seed=5, max_workers=3)

    assert single == threaded


def test_vector_block_bracket(random_step, unit_square, params):
    """Test that the vector bracket is ordered."""
    gv = VectorStepFunction.of([random_step, unit_square])
    bracket = vector_block_bracket(gv, params, 2.0, budget=2)

    assert 0 < bracket.lower <= bracket.upper * (1 + 1e-10)
