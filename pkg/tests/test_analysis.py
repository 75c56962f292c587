"""Tests for syntactic profiles."""

from kripkebench.logic.analysis import is_positive, node_count, profile, shape
from kripkebench.logic.formula import And
from kripkebench.logic.parser import parse


class TestProfile:
    """Tests for profile."""

    def test_counts_and_arities(self):
        """Test letters map to (arity, occurrences)."""
        p = profile(parse("forall x. (P(x) -> exists y. Q(x,y) & P(y)) | r"))
        assert p.letters == {"P": (1, 2), "Q": (2, 1), "r": (0, 1)}
        assert p.variables == {"x", "y"}
        assert p.variable_count == 2
        assert p.closed
        assert p.positive

    def test_open_formula(self):
        """Test free variables make a formula open."""
        p = profile(parse("exists y. Q(x,y)"))
        assert p.free_variables == {"x"}
        assert not p.closed

    def test_negation_and_bot_not_positive(self):
        """Test positivity excludes ~ and bot but allows ->."""
        assert not is_positive(parse("~P(x)"))
        assert not is_positive(parse("P(x) -> bot"))
        assert is_positive(parse("(P(x) -> q) -> q"))


class TestShape:
    """Tests for shape and node_count."""

    def test_node_count(self):
        """Test nodes are counted as a tree."""
        assert node_count(parse("P(x) & ~q")) == 4

    def test_shape_matches_profile(self):
        """Test shape agrees with profile on an ordinary formula."""
        f = parse("forall x. box (P1(x) | ~P2(x))")
        s = shape(f)
        p = profile(f)
        assert s.letters == set(p.letters)
        assert s.variables == p.variables
        assert s.positive == p.positive

    def test_shape_on_shared_subtrees(self):
        """Test shape handles a heavily shared formula."""
        f = parse("P(x) -> q")
        for _ in range(60):
            f = And(f, f)
        s = shape(f)
        assert s.letters == {"P", "q"}
        assert s.variables == {"x"}
        assert s.positive
