"""Koszul modules W(V, K) and vanishing of resonance varieties, in exact arithmetic."""

__version__ = "0.1.0"
