"""
Convolution probes: the projected convolution mass identity and Young's inequality.
"""
