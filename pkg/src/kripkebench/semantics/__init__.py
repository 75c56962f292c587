"""Finite predicate Kripke frames, models and truth evaluation."""
