"""Dimer models on contracting square-hexagon lattices and their limit shapes."""
