"""
Hölder, attainer and block-space duality probes.
"""
