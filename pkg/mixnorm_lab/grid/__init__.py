"""
Dyadic geometry and the step-function representation.
"""

from .cubes import (
    SHIFTS,
    DyadicCube,
    cubes_intersecting_window,
    shifted_containment_witness,
)
from .lattice import block_mixed_norms, block_view, expand_blocks, padded_blocks
from .step import (
    StepFunction,
    VectorStepFunction,
    align,
    dilate_dyadic,
    restrict,
    translate,
)

__all__ = [
    "SHIFTS",
    "DyadicCube",
    "StepFunction",
    "VectorStepFunction",
    "align",
    "block_mixed_norms",
    "block_view",
    "cubes_intersecting_window",
    "dilate_dyadic",
    "expand_blocks",
    "padded_blocks",
    "restrict",
    "shifted_containment_witness",
    "translate",
]
