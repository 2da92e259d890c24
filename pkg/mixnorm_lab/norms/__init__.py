"""
Exact norms of step functions: mixed Lebesgue, weighted, Morrey and
Bourgain-Morrey, with certified brackets where exactness is out of reach.
"""

from .mixed import axis_norm, mixed_norm, mixed_norm_partial, weighted_mixed_norm
from .morrey import (
    bm_norm,
    bm_norm_bracket,
    chi_bm_closed_form,
    level_cube_norms,
    morrey_norm,
    slice_norm,
    vector_bm_norm,
    weighted_bm_level_sum,
)
from .weights import AxisWeightProfile, WeightPiece

__all__ = [
    "AxisWeightProfile",
    "WeightPiece",
    "axis_norm",
    "bm_norm",
    "bm_norm_bracket",
    "chi_bm_closed_form",
    "level_cube_norms",
    "mixed_norm",
    "mixed_norm_partial",
    "morrey_norm",
    "slice_norm",
    "vector_bm_norm",
    "weighted_bm_level_sum",
    "weighted_mixed_norm",
]
