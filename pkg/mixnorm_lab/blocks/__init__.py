"""
Blocks, decompositions and duality brackets for the predual block space.
"""

from .decomposition import (
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

__all__ = [
    "BlockDecomposition",
    "BlockTerm",
    "block_split",
    "h_norm_lower",
    "h_norm_upper",
    "holder_attainer",
    "is_block",
    "pairing",
    "unit_dual",
    "vector_block_bracket",
]
