"""Exact lattice, polytope and quiver-data algebra behind the wallx commands."""
