"""Shared fixtures."""

import pytest

from mixnorm_lab.grid import DyadicCube, StepFunction
from mixnorm_lab.models import SpaceParams


@pytest.fixture
def params() -> SpaceParams:
    return SpaceParams.of("2,4", 4, 8)


@pytest.fixture
def unit_square() -> StepFunction:
    """χ_{[0,1)^2} at J = 0, K = 0."""
    return StepFunction.indicator(DyadicCube.standard(0, 0, 0))


@pytest.fixture
def unit_interval() -> StepFunction:
    """χ_{[0,1)} at J = 0, K = 1."""
    return StepFunction.indicator(DyadicCube.standard(0, 0), J=0, K=1)
