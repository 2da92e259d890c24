"""Tests for the martingale, maximal and integral operators."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from mixnorm_lab.grid import DyadicCube, StepFunction
from mixnorm_lab.models import ExponentVector, GeneratorSpec
from mixnorm_lab.operators import (
    KernelKind,
    SingularKernelModel,
    cond_expect,
    convolve_project,
    doob_maximal,
    dyadic_maximal_shifted,
    frac_integral,
    fractional_potential_1d,
    hilbert_1d,
    hl_maximal_lower,
    iterated_maximal_grid,
    maximal_1d_grid,
    mit_chi_weight,
    riemann_fractional_1d,
    singular_apply,
)
from mixnorm_lab.verify import gen_random_step


@pytest.fixture
def line_function() -> StepFunction:
    return StepFunction(n=1, J=1, K=1, values=np.array([0.5, -1.0, 2.0, 0.0]))


def test_cond_expect_coarser_than_window(unit_interval):
    """Test averaging over a cube that covers the window."""
    result = cond_expect(unit_interval, -1)

    assert result.K == 1
    assert result.values.tolist() == [0.5, 0.5]


def test_cond_expect_grows_window():
    """Test that coarse levels extend the window to the cube."""
    f = StepFunction.indicator(DyadicCube.standard(0, 0))
    result = cond_expect(f, -1)

    assert result.K == 1
    assert result.integral() == pytest.approx(1.0)


def test_cond_expect_fine_level_is_identity(line_function):
    """Test that E_k f = f for k ≥ J."""
    assert cond_expect(line_function, 1) is line_function


def test_doob_maximal(unit_interval):
    """Test 𝕄χ_[0,1) on the window [0, 2)."""
    assert doob_maximal(unit_interval).values.tolist() == [1.0, 0.5]


def test_doob_maximal_negative_mass(unit_interval):
    """Test that coarse averages of -χ_[0,1) climb to 0, their supremum."""
    result = doob_maximal(-unit_interval)

    assert result.values.tolist() == [0.0, 0.0]


def test_doob_maximal_positive_mass_keeps_levels(line_function):
    """Test that ∫f > 0 leaves the max over the window levels unchanged."""
    result = doob_maximal(line_function)

    np.testing.assert_allclose(result.values, [0.5, 0.375, 2.0, 1.0])


def test_maximal_1d_grid(unit_interval):
    """Test the grid-restricted maximal function on the line."""
    result = maximal_1d_grid(unit_interval, 0)

    assert result.values.tolist() == pytest.approx([1.0, 0.5])


def test_iterated_maximal_grid():
    """Test that the iterated maximal function is a tensor product for χ_Q."""
    f = StepFunction.indicator(DyadicCube.standard(0, 0, 0), J=0, K=1)
    result = iterated_maximal_grid(f)

    np.testing.assert_allclose(result.values, [[1.0, 0.5], [0.5, 0.25]])


def test_maximal_1d_grid_rejects_bad_axis(unit_interval):
    """Test that the axis must exist."""
    with pytest.raises(ValueError):
        maximal_1d_grid(unit_interval, 1)


def test_dyadic_maximal_standard_shift(unit_interval):
    """Test M_D on the standard grid, returned at depth 1."""
    result = dyadic_maximal_shifted(unit_interval, (0,))

    assert result.depth == 1
    assert result.values.tolist() == pytest.approx([1, 1, 1, 0.5, 0.5, 0.5])


def test_hl_maximal_lower_dominates_every_shift(unit_interval):
    """Test that the shift maximum dominates each shifted operator."""
    lower = hl_maximal_lower(unit_interval)
    for shift in ((0,), (1,), (2,)):
        shifted = dyadic_maximal_shifted(unit_interval, shift)
        assert np.all(lower.values >= shifted.values)
    assert lower.values[3] >= 2.0 / 3.0 - 1e-12
    assert lower.max_abs() == pytest.approx(1.0)


def test_dyadic_maximal_rejects_bad_shift(unit_interval):
    """Test that shifts live in {0,1,2}."""
    with pytest.raises(ValueError):
        dyadic_maximal_shifted(unit_interval, (3,))


def test_mit_chi_weight():
    """Test the tensor weight (M^{it}χ_R)^η."""
    profiles = mit_chi_weight(DyadicCube.standard(0, 0), 1.0, K=2)

    assert len(profiles) == 1
    assert profiles[0].evaluate(2.0) == pytest.approx(0.5)


def test_mit_chi_weight_checks_eta():
    """Test that weighted use needs η < 1/max p̄."""
    with pytest.raises(ValueError):
        mit_chi_weight(
            DyadicCube.standard(0, 0, 0), 0.5, K=1, pbar=ExponentVector.of(2, 2)
        )


def test_fractional_potential_closed_form():
    """Test I_{1/2}χ_[0,1)(2) = 2(√2 - 1)."""
    f = StepFunction.indicator(DyadicCube.standard(0, 0))

    value = fractional_potential_1d(f, 0.5, 2.0)[0]

    assert value == pytest.approx(2 * (math.sqrt(2) - 1))


def test_riemann_sums_approach_closed_form(line_function):
    """Test the Riemann oracle away from the support."""
    x = np.array([3.0, 5.5])
    exact = fractional_potential_1d(line_function, 0.25, x)

    approx = riemann_fractional_1d(line_function, 0.25, x)

    assert approx == pytest.approx(exact, rel=1e-6)


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
def test_riemann_sums_match_closed_form_on_support(alpha):
    """Test the oracle at 100 points across and around a signed function."""
    f = gen_random_step(GeneratorSpec(n=1, J=2, K=1, sign="signed"), seed=4)
    x = np.linspace(-0.6, 2.6, 100)
    exact = fractional_potential_1d(f, alpha, x)

    approx = riemann_fractional_1d(f, alpha, x)

    scale = np.max(np.abs(exact))
    np.testing.assert_allclose(approx, exact, rtol=1e-6, atol=1e-6 * scale)


def test_frac_integral_matches_riemann_oracle():
    """Test cell-center samples of I_α against the independent oracle."""
    f = gen_random_step(GeneratorSpec(n=1, J=3, K=2, sign="signed"), seed=8)
    result = frac_integral(f, 0.25)

    oracle = riemann_fractional_1d(f, 0.25, f.cell_centers(), m=1000)

    scale = np.max(np.abs(oracle))
    np.testing.assert_allclose(result.values, oracle, rtol=1e-6, atol=1e-6 * scale)


def test_frac_integral_samples_centers(line_function):
    """Test that the line operator is exact at cell centers."""
    result = frac_integral(line_function, 0.5)
    exact = fractional_potential_1d(line_function, 0.5, line_function.cell_centers())

    assert not result.approximate
    assert result.values == pytest.approx(exact)


def test_frac_integral_flags_quadrature(unit_square):
    """Test that n ≥ 2 results are approximate and positive for f ≥ 0."""
    result = frac_integral(unit_square.with_resolution(1), 1.0)

    assert result.approximate
    assert np.all(result.values > 0)


def test_frac_integral_rejects_order(unit_interval):
    """Test that α must lie below n."""
    with pytest.raises(ValueError):
        frac_integral(unit_interval, 1.0)


def test_hilbert_1d_closed_form():
    """Test Hχ_[0,1)(2) = ln 2 / π."""
    f = StepFunction.indicator(DyadicCube.standard(0, 0))

    assert hilbert_1d(f, 2.0)[0] == pytest.approx(math.log(2) / math.pi)


def test_hilbert_1d_snaps_cell_edges(unit_interval):
    """Test that points on cell edges are finite."""
    assert np.all(np.isfinite(hilbert_1d(unit_interval, np.array([0.0, 1.0]))))


def test_singular_apply_hilbert_matches_closed_form(line_function):
    """Test the Hilbert kernel table against the closed form at centers."""
    result = singular_apply(line_function, SingularKernelModel.hilbert())
    exact = hilbert_1d(line_function, line_function.cell_centers())

    assert result.values == pytest.approx(exact)


def test_singular_apply_riesz(unit_square):
    """Test that truncated Riesz transforms are flagged approximate."""
    kernel = SingularKernelModel.riesz(axis=1, epsilon=0.1)
    result = singular_apply(unit_square.with_resolution(2), kernel)

    assert kernel.kind is KernelKind.RIESZ
    assert result.approximate


def test_kernel_models_validate():
    """Test that Riesz needs ε > 0 and Hilbert lives on the line."""
    with pytest.raises(ValidationError):
        SingularKernelModel(kind=KernelKind.RIESZ)
    with pytest.raises(ValueError):
        SingularKernelModel.hilbert().check_dimension(2)


def test_convolve_project():
    """Test E_J(χ * χ) for χ = χ_[0,1)."""
    f = StepFunction.indicator(DyadicCube.standard(0, 0))
    result = convolve_project(f, f)

    assert result.K == 1
    assert result.values.tolist() == pytest.approx([0.5, 0.5])


def test_convolve_project_keeps_mass(line_function):
    """Test ∫ f * g = ∫ f ∫ g."""
    g = StepFunction.constant(1.0, n=1, J=1, K=0)
    result = convolve_project(line_function, g)

    assert result.integral() == pytest.approx(line_function.integral() * g.integral())
