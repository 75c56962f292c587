"""Tests for the guarded embedding, gadgets and gadget attachment."""

import pytest

from kripkebench.core.errors import FrameClassError, IndexRangeError, ReductionError
from kripkebench.core.models import FrameProperty, Mode, Track
from kripkebench.logic.analysis import node_count, shape
from kripkebench.logic.formula import And, Box, Dia, Forall, Imp, Neg, atom
from kripkebench.logic.parser import parse
from kripkebench.reductions.context import ReductionContext
from kripkebench.reductions.gadgets import (
    alpha_gl,
    beta,
    build_gadget,
    delta_gl,
    delta_ktb,
    gl_chain,
    ktb_chain,
)
from kripkebench.reductions.modal import (
    attach_gadgets,
    bf_formula,
    build_b,
    embed_e,
    extend_with_guard,
    guard_worlds,
    normalize_modal_basis,
    prime_embed,
    restrict_to_guard,
    substitution_witness,
)
from kripkebench.semantics.evaluator import Evaluator
from kripkebench.semantics.frames import has_property
from kripkebench.semantics.model import build_model, validate


@pytest.fixture
def one_letter() -> ReductionContext:
    """A single source letter P1 with guard P2."""
    return ReductionContext.standard(1, Track.K)


@pytest.fixture
def host():
    """One modal world with P1 true of a only."""
    return build_model(["w0"], [], {"w0": ["a", "b"]}, {("w0", "P1"): [["a"]]})


class TestReductionContext:
    """Tests for letter inventories."""

    def test_standard(self, ctx_k):
        """Test the standard numbering."""
        assert ctx_k.letters == ("P1", "P2")
        assert ctx_k.fresh == "P3"
        assert ctx_k.letter(3) == "P3"

    def test_letter_index_range(self, ctx_k):
        """Test indices outside 1..n+1 raise."""
        with pytest.raises(ReductionError):
            ctx_k.letter(4)

    def test_standard_needs_a_letter(self):
        """Test n = 0 is rejected."""
        with pytest.raises(ReductionError):
            ReductionContext.standard(0)

    def test_for_formula(self, sample_formula):
        """Test the context follows the formula's letters and first variable."""
        ctx = ReductionContext.for_formula(sample_formula, Track.GL)
        assert ctx.letters == ("P1", "P2")
        assert ctx.fresh == "P3"
        assert ctx.var == "x"
        assert ctx.track is Track.GL

    def test_for_formula_skips_taken_fresh_name(self):
        """Test the fresh letter avoids letters already in use."""
        ctx = ReductionContext.for_formula(parse("exists x. (P1(x) & P3(x))"))
        assert ctx.fresh == "P4"

    def test_for_formula_rejects_binary(self):
        """Test source formulas must be monadic."""
        with pytest.raises(ReductionError):
            ReductionContext.for_formula(parse("exists x. Q(x, x)"))

    def test_for_formula_rejects_target(self):
        """Test the target letter may not occur in the source."""
        with pytest.raises(ReductionError):
            ReductionContext.for_formula(parse("exists x. P(x)"))


class TestGuardedEmbedding:
    """Tests for the prime and star translations."""

    def test_guard(self, ctx_k):
        """Test the guard formula."""
        assert build_b(ctx_k) == Forall("x", atom("P3", "x"))

    def test_barcan_formula(self):
        """Test the Barcan formula shape."""
        p = atom("P", "x")
        assert bf_formula() == Imp(Forall("x", Box(p)), Box(Forall("x", p)))

    def test_normalize_basis(self):
        """Test the derived connectives are rewritten."""
        a, b = atom("a"), atom("b")
        assert normalize_modal_basis(parse("a | b")) == Neg(And(Neg(a), Neg(b)))
        assert normalize_modal_basis(parse("dia a")) == Neg(Box(Neg(a)))
        assert normalize_modal_basis(parse("exists x. P(x)")) == Neg(
            Forall("x", Neg(atom("P", "x")))
        )

    def test_prime_relativizes_boxes(self, ctx_k):
        """Test each box gains the guard as antecedent."""
        out = prime_embed(parse("box P1(x)"), ctx_k)
        assert out == Box(Imp(build_b(ctx_k), atom("P1", "x")))

    def test_prime_rejects_reserved_letters(self, ctx_k):
        """Test the guard and target letters cannot occur in the source."""
        with pytest.raises(ReductionError):
            prime_embed(parse("P3(x)"), ctx_k)
        with pytest.raises(ReductionError):
            prime_embed(parse("P(x)"), ctx_k)

    def test_prime_rejects_unknown_letters(self, ctx_k):
        """Test letters outside the context raise."""
        with pytest.raises(ReductionError):
            prime_embed(parse("R(x)"), ctx_k)

    def test_embed_needs_closed_formula(self, ctx_k):
        """Test open formulas are rejected."""
        with pytest.raises(ReductionError):
            embed_e(parse("P1(x)"), ctx_k)

    @pytest.mark.parametrize("track", list(Track))
    def test_embedding_shape(self, sample_formula, track):
        """Test the output uses the single letter and the input's variables."""
        ctx = ReductionContext.for_formula(sample_formula, track)
        s = shape(embed_e(sample_formula, ctx))
        assert s.letters == {"P"}
        assert s.variables <= {"x", "y"}


class TestGadgets:
    """Tests for gadget chains and models."""

    def test_delta_gl_first_level(self):
        """Test delta_1 unfolds once above box-plus P."""
        ctx = ReductionContext.standard(1, Track.GL)
        p = atom("P", "x")
        expected = And(p, Dia(And(Neg(p), Dia(And(p, Box(p))))))
        assert delta_gl(1, "x", ctx) == expected
        assert delta_gl(2, "x", ctx) == And(p, Dia(And(Neg(p), Dia(expected))))

    @pytest.mark.parametrize("m", range(1, 6))
    def test_gl_node_counts(self, m):
        """Test delta and alpha sizes against the recursion."""
        ctx = ReductionContext.standard(4, Track.GL)

        def delta_nodes(k: int) -> int:
            return 4 if k == 0 else delta_nodes(k - 1) + 7

        assert node_count(delta_gl(m, "x", ctx)) == delta_nodes(m)
        # two conjunctions, the negation and dia box-plus ~P(x)
        assert node_count(alpha_gl(m, "x", ctx)) == delta_nodes(m) + delta_nodes(m + 1) + 10

    def test_gl_chain_shape(self):
        """Test the level-1 GL chain."""
        chain = gl_chain(1)
        assert chain.nodes == ("0", "1", "2", "*")
        assert chain.a_nodes == {"0", "2"}
        assert chain.frame.sees("0", "2")
        assert has_property(chain.frame, FrameProperty.CONVERSE_WELL_FOUNDED)

    def test_ktb_chain_shape(self):
        """Test the block layout of KTB chains."""
        one = ktb_chain(1)
        assert len(one.nodes) == 7
        assert one.a_nodes == {"0", "4", "5", "6"}
        two = ktb_chain(2)
        assert len(two.nodes) == 13
        assert two.a_nodes == {"0", "4", "10", "11", "12"}
        assert has_property(two.frame, FrameProperty.SYMMETRIC)

    def test_chain_level_must_be_positive(self):
        """Test k = 0 is rejected."""
        with pytest.raises(IndexRangeError):
            gl_chain(0)

    def test_build_gadget(self):
        """Test the pivot holds exactly at the a-worlds."""
        m = build_gadget(1, Track.GL, "a", {"a", "b"})
        assert validate(m) == []
        assert [w for w in m.worlds if m.holds(w, "P", "a")] == ["0", "2"]
        assert not any(m.holds(w, "P", "b") for w in m.worlds)

    def test_reflexive_gadget(self):
        """Test the reflexive variant adds loops."""
        m = build_gadget(1, Track.GL, "a", {"a"}, reflexive=True)
        assert has_property(m.frame, FrameProperty.REFLEXIVE)

    def test_pivot_outside_domain(self):
        """Test the pivot must belong to the domain."""
        with pytest.raises(ReductionError):
            build_gadget(1, Track.GL, "c", {"a", "b"})

    def test_ktb_index_range(self, ctx_k):
        """Test delta_ktb checks 1 <= i <= k."""
        with pytest.raises(IndexRangeError):
            delta_ktb(3, 2, "x", ctx_k)

    def test_beta_index_range(self, ctx_k):
        """Test beta checks the level."""
        with pytest.raises(IndexRangeError):
            beta(0, "x", ctx_k)


class TestModelSurgery:
    """Tests for guard extension, restriction, attachment and read-back."""

    def test_extend_with_guard(self, host, one_letter):
        """Test the guard letter holds of everything."""
        m = extend_with_guard(host, one_letter)
        assert m.extension("w0", "P2") == {("a",), ("b",)}
        assert guard_worlds(m, one_letter) == ["w0"]

    def test_restrict_to_guard(self, one_letter):
        """Test worlds where the guard fails are dropped."""
        m = build_model(
            ["w0", "w1"],
            [("w0", "w1")],
            {"w0": ["a"], "w1": ["a", "b"]},
            {("w0", "P2"): [["a"]], ("w1", "P2"): [["a"]]},
        )
        restricted = restrict_to_guard(m, one_letter)
        assert restricted.worlds == ("w0",)
        assert restricted.frame.relation == frozenset()

    def test_attach_bridges_letters(self, host, one_letter):
        """Test beta_k at a host matches P_k there."""
        attached = attach_gadgets(extend_with_guard(host, one_letter), one_letter)
        assert validate(attached) == []
        ev = Evaluator(attached)
        beta1 = beta(1, "x", one_letter)
        beta2 = beta(2, "x", one_letter)
        assert ev.eval("w0", {"x": "a"}, beta1)
        assert not ev.eval("w0", {"x": "b"}, beta1)
        assert ev.eval("w0", {"x": "b"}, beta2)

    def test_attach_keeps_hosts_letter_free(self, host, one_letter):
        """Test hosts carry no letters after attachment."""
        attached = attach_gadgets(extend_with_guard(host, one_letter), one_letter)
        assert attached.extension("w0", "P") == frozenset()
        assert "P1" not in attached.letters

    def test_attach_reads_back(self, host, one_letter):
        """Test the read-back model recovers the source letters at hosts."""
        extended = extend_with_guard(host, one_letter)
        witness = substitution_witness(attach_gadgets(extended, one_letter), one_letter)
        assert witness.extension("w0", "P1") == {("a",)}
        assert witness.extension("w0", "P2") == {("a",), ("b",)}

    def test_attach_needs_global_guard(self, host, one_letter):
        """Test attachment refuses a model where the guard fails."""
        with pytest.raises(ReductionError):
            attach_gadgets(host, one_letter)

    def test_attach_needs_modal_model(self, host, one_letter):
        """Test intuitionistic models are refused."""
        with pytest.raises(ReductionError):
            attach_gadgets(extend_with_guard(host, one_letter).with_mode(Mode.INTUITIONISTIC),
                           one_letter)

    def test_attach_checks_frame_class(self, one_letter):
        """Test a reflexive frame is outside the GL class."""
        ctx = ReductionContext.standard(1, Track.GL)
        m = build_model(["w0"], [("w0", "w0")], {"w0": ["a"]}, {("w0", "P2"): [["a"]]})
        with pytest.raises(FrameClassError) as exc:
            attach_gadgets(m, ctx)
        assert exc.value.track == "gl"

    @pytest.mark.parametrize("track", list(Track))
    def test_attached_frame_class(self, host, track):
        """Test each track's attachment lands in its frame class."""
        ctx = ReductionContext.standard(1, track)
        m = host
        if track is Track.GRZ:
            m = m.with_frame(m.frame.of(m.worlds, [("w0", "w0")]))
        if track is Track.KTB:
            m = m.with_frame(m.frame.of(m.worlds, [("w0", "w0")]))
        attached = attach_gadgets(extend_with_guard(m, ctx), ctx)
        assert validate(attached) == []
        if track is Track.GL:
            assert has_property(attached.frame, FrameProperty.CONVERSE_WELL_FOUNDED)
        if track is Track.KTB:
            assert has_property(attached.frame, FrameProperty.SYMMETRIC)
