"""Shared error types and document models."""
