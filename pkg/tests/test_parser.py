"""Tests for the formula parser and printer."""

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from kripkebench.core.errors import ArityError, FormulaSyntaxError
from kripkebench.logic.formula import (
    BOT,
    TOP,
    And,
    Atom,
    Box,
    Dia,
    Exists,
    Forall,
    Formula,
    Imp,
    Neg,
    Or,
    atom,
)
from kripkebench.logic.parser import check_arities, parse
from kripkebench.logic.printer import to_text

VARS = st.sampled_from(["x", "y"])

LEAVES = st.one_of(
    st.builds(lambda v: Atom("P", (v,)), VARS),
    st.builds(lambda u, v: Atom("Q", (u, v)), VARS, VARS),
    st.just(Atom("p", ())),
    st.just(BOT),
    st.just(TOP),
)


def _extend(children: st.SearchStrategy[Formula]) -> st.SearchStrategy[Formula]:
    return st.one_of(
        st.builds(Neg, children),
        st.builds(Box, children),
        st.builds(Dia, children),
        st.builds(And, children, children),
        st.builds(Or, children, children),
        st.builds(Imp, children, children),
        st.builds(Forall, VARS, children),
        st.builds(Exists, VARS, children),
    )


FORMULAS = st.recursive(LEAVES, _extend, max_leaves=12)


class TestParse:
    """Tests for parsing formula text."""

    def test_atoms(self):
        """Test predicate and propositional atoms."""
        assert parse("P(x)") == atom("P", "x")
        assert parse("Q(x, y)") == atom("Q", "x", "y")
        assert parse("p") == atom("p")
        assert parse("top") == TOP
        assert parse("bot") == BOT

    def test_primed_identifiers(self):
        """Test trailing primes belong to the identifier."""
        assert parse("P(x')") == atom("P", "x'")

    def test_precedence(self):
        """Test & binds tighter than | which binds tighter than ->."""
        a, b, c = atom("a"), atom("b"), atom("c")
        assert parse("a & b | c") == Or(And(a, b), c)
        assert parse("a | b -> c") == Imp(Or(a, b), c)
        assert parse("~a & b") == And(Neg(a), b)

    def test_implication_right_associative(self):
        """Test a -> b -> c groups to the right."""
        a, b, c = atom("a"), atom("b"), atom("c")
        assert parse("a -> b -> c") == Imp(a, Imp(b, c))

    def test_quantifier_scope_is_maximal(self):
        """Test a quantifier body extends to the right."""
        assert parse("forall x. P(x) & q") == Forall("x", And(atom("P", "x"), atom("q")))
        assert parse("(forall x. P(x)) & q") == And(Forall("x", atom("P", "x")), atom("q"))

    def test_modal_prefixes(self):
        """Test box and dia bind like negation."""
        assert parse("box dia P(x) & q") == And(Box(Dia(atom("P", "x"))), atom("q"))

    def test_whitespace_ignored(self):
        """Test spacing does not matter."""
        assert parse(" exists y .P( y ) ") == Exists("y", atom("P", "y"))

    def test_syntax_error(self):
        """Test malformed text raises with a position."""
        with pytest.raises(FormulaSyntaxError):
            parse("P(x")
        with pytest.raises(FormulaSyntaxError):
            parse("forall . P(x)")

    @pytest.mark.parametrize("text", ["forall box. P(box)", "P(exists)", "exists x. top(x)"])
    def test_keyword_names(self, text):
        """Test keywords cannot name letters or variables."""
        with pytest.raises(FormulaSyntaxError):
            parse(text)

    def test_keyword_prefix(self):
        """Test identifiers that merely start with a keyword are letters."""
        assert parse("boxer & topx(y)") == And(Atom("boxer"), atom("topx", "y"))

    def test_arity_clash(self):
        """Test a letter used with two arities raises."""
        with pytest.raises(ArityError) as exc:
            parse("P(x) & P(x, y)")
        assert exc.value.letter == "P"
        assert exc.value.expected == 1
        assert exc.value.found == 2

    def test_check_arities(self):
        """Test arities are collected per letter."""
        assert check_arities(parse("Q(x,y) -> p | P(y)")) == {"Q": 2, "p": 0, "P": 1}


class TestPrint:
    """Tests for the printer."""

    def test_binary_connectives_parenthesized(self):
        """Test every binary connective gets parentheses."""
        assert to_text(parse("a & b | c")) == "((a & b) | c)"

    def test_quantified_operand_parenthesized(self):
        """Test a quantified operand keeps its scope when printed."""
        assert to_text(parse("(forall x. P(x)) & q")) == "((forall x. P(x)) & q)"
        assert to_text(parse("~forall x. P(x)")) == "~(forall x. P(x))"

    def test_quantifier_body(self):
        """Test a quantifier at the top prints without extra parentheses."""
        assert to_text(parse("exists y. box Q(x,y)")) == "exists y. box Q(x,y)"

    @given(FORMULAS)
    @settings(max_examples=200)
    def test_print_parse_identity(self, f: Formula):
        """Test printed text parses back to the same tree."""
        assert parse(to_text(f)) == f
