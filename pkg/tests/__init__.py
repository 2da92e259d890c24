"""Tests for the mixed Bourgain-Morrey norm laboratory."""
