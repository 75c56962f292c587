"""Tile sets, tilings, tiling encodings and torus countermodels."""
