"""
Maximal operator probes, scalar and vector valued.
"""
