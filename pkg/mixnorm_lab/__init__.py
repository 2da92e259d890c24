"""
Mixed Bourgain-Morrey norm laboratory

Exact norms, operators and block-space duality brackets for dyadic step
functions, with a Dagster pipeline of seeded inequality probes.
"""
