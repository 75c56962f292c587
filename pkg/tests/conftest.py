"""Pytest configuration and fixtures for kripkebench tests."""

import os

import pytest

# Set test environment variables before importing the package
os.environ["KRIPKEBENCH_SEED"] = "7"
os.environ["KRIPKEBENCH_SEARCH_BUDGET"] = "200000"
os.environ["KRIPKEBENCH_TILING_BUDGET"] = "100000"
os.environ["KRIPKEBENCH_LOG_LEVEL"] = "WARNING"

from kripkebench.core.models import Mode, Track
from kripkebench.logic.parser import parse
from kripkebench.reductions.context import ReductionContext
from kripkebench.semantics.model import Model, build_model


@pytest.fixture
def chain_model() -> Model:
    """Three-world modal chain w0 -> w1 -> w2 with growing domains."""
    return build_model(
        ["w0", "w1", "w2"],
        [("w0", "w1"), ("w1", "w2")],
        {"w0": ["a"], "w1": ["a", "b"], "w2": ["a", "b"]},
        {("w0", "P"): [["a"]], ("w1", "P"): [["b"]], ("w2", "P"): [["a"], ["b"]]},
    )


@pytest.fixture
def int_model() -> Model:
    """Reflexive two-world intuitionistic model where a new individual appears above."""
    return build_model(
        ["w0", "w1"],
        [("w0", "w0"), ("w0", "w1"), ("w1", "w1")],
        {"w0": ["a"], "w1": ["a", "b"]},
        {("w0", "P"): [["a"]], ("w1", "P"): [["a"]]},
        Mode.INTUITIONISTIC,
    )


@pytest.fixture
def ctx_k() -> ReductionContext:
    """Two source letters on the K track."""
    return ReductionContext.standard(2, Track.K)


@pytest.fixture
def sample_formula_text() -> str:
    """A closed two-variable modal formula over P1 and P2."""
    return "forall x. (box P1(x) -> exists y. dia P2(y))"


@pytest.fixture
def sample_formula(sample_formula_text: str):
    """Parsed form of sample_formula_text."""
    return parse(sample_formula_text)


@pytest.fixture
def uniform_tileset_json() -> str:
    """A one-tile set that tiles the plane."""
    return '{"tiles": [{"name": "u", "left": "0", "right": "0", "up": "0", "down": "0"}]}'


@pytest.fixture
def blocked_tileset_json() -> str:
    """A one-tile set whose horizontal colours never match."""
    return '{"tiles": [{"name": "t", "left": "0", "right": "1", "up": "0", "down": "0"}]}'
