"""Tests for kripkebench."""
