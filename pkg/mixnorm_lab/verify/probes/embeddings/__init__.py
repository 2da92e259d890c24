"""
Embedding, dilation, translation and shifted-grid probes.
"""
