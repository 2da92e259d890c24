"""
Probe families, one Dagster asset per family.
"""
