"""
Aggregation of all definitions of the laboratory.

If you've added a new probe family, register its definitions in
``verify/definitions.py``; this module only merges the top-level pieces.
"""

import dagster as dg

# Make sure to not import the defs vars directly. As it will
# trigger "Multiple Definitions Error"
from . import resources as resources
from .verify import definitions as verify


defs = dg.Definitions.merge(
    verify.defs,
    resources.defs,
)
