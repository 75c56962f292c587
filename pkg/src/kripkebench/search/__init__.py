"""Bounded model enumeration."""
