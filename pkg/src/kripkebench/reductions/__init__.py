"""Formula and model transformations for the single-letter reductions."""
