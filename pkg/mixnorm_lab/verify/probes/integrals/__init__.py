"""
Fractional and singular integral probes.
"""
