"""Tests for frames, models and truth evaluation."""

from itertools import combinations, product

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from kripkebench.core.errors import EvaluationError, ModelValidationError
from kripkebench.core.models import (
    ClosureKind,
    FrameProperty,
    Mode,
    SearchBounds,
    ViolationKind,
)
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
)
from kripkebench.logic.parser import parse
from kripkebench.search.oracle import enumerate_models
from kripkebench.semantics.evaluator import Evaluator, evaluate, reference_eval, sat_at
from kripkebench.semantics.frames import Frame, closure, frame_properties, has_property
from kripkebench.semantics.model import (
    build_model,
    constant_domain_model,
    ensure_valid,
    model_from_json,
    model_to_json,
    validate,
)


def all_frames(n: int) -> list[Frame]:
    """Every relation over n named worlds."""
    worlds = [f"w{i}" for i in range(n)]
    pairs = list(product(worlds, repeat=2))
    return [
        Frame.of(worlds, chosen)
        for size in range(len(pairs) + 1)
        for chosen in combinations(pairs, size)
    ]


class TestFrames:
    """Tests for frames and closures."""

    def test_successors_sorted(self):
        """Test successors are listed in sorted order."""
        fr = Frame.of(["u", "v", "w"], [("u", "w"), ("u", "v")])
        assert fr.successors["u"] == ("v", "w")
        assert fr.successors["w"] == ()

    def test_reflexive_transitive_closure(self):
        """Test the reflexive transitive closure of a chain."""
        fr = closure(Frame.of(["a", "b", "c"], [("a", "b"), ("b", "c")]),
                     ClosureKind.REFLEXIVE_TRANSITIVE)
        assert fr.sees("a", "c")
        assert all(fr.sees(w, w) for w in "abc")
        assert not fr.sees("c", "a")

    def test_transitive_closure_of_cycle_adds_loops(self):
        """Test every world on a cycle sees itself after transitive closure."""
        fr = closure(Frame.of(["a", "b"], [("a", "b"), ("b", "a")]), ClosureKind.TRANSITIVE)
        assert fr.sees("a", "a")
        assert fr.sees("b", "b")

    def test_transitive_closure_without_cycle(self):
        """Test no loops appear on an acyclic frame."""
        fr = closure(Frame.of(["a", "b", "c"], [("a", "b"), ("b", "c")]), ClosureKind.TRANSITIVE)
        assert fr.relation == {("a", "b"), ("b", "c"), ("a", "c")}

    def test_reflexive_symmetric_closure(self):
        """Test the KTB closure."""
        fr = closure(Frame.of(["a", "b"], [("a", "b")]), ClosureKind.REFLEXIVE_SYMMETRIC)
        assert fr.relation == {("a", "a"), ("b", "b"), ("a", "b"), ("b", "a")}

    @pytest.mark.parametrize("kind", list(ClosureKind))
    def test_closure_idempotent_and_extensive(self, kind):
        """Test closing twice changes nothing and no pair is lost."""
        for fr in all_frames(3):
            closed = closure(fr, kind)
            assert fr.relation <= closed.relation
            assert closure(closed, kind).relation == closed.relation

    @pytest.mark.parametrize("kind", list(ClosureKind))
    def test_closure_monotone(self, kind):
        """Test a larger relation has a larger closure."""
        frames = all_frames(2)
        closed = {fr.relation: closure(fr, kind).relation for fr in frames}
        for small, large in product(frames, repeat=2):
            if small.relation <= large.relation:
                assert closed[small.relation] <= closed[large.relation]

    def test_properties(self):
        """Test structural properties of small frames."""
        strict = Frame.of(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
        props = frame_properties(strict)
        assert FrameProperty.TRANSITIVE in props
        assert FrameProperty.IRREFLEXIVE in props
        assert FrameProperty.CONVERSE_WELL_FOUNDED in props
        assert FrameProperty.REFLEXIVE not in props

    def test_convergence(self):
        """Test a fork without a common successor is not convergent."""
        fork = closure(
            Frame.of(["r", "u", "v"], [("r", "u"), ("r", "v")]), ClosureKind.REFLEXIVE_TRANSITIVE
        )
        assert not has_property(fork, FrameProperty.CONVERGENT)
        diamond = closure(
            Frame.of(["r", "u", "v", "t"], [("r", "u"), ("r", "v"), ("u", "t"), ("v", "t")]),
            ClosureKind.REFLEXIVE_TRANSITIVE,
        )
        assert has_property(diamond, FrameProperty.CONVERGENT)

    def test_loops_break_converse_well_foundedness(self):
        """Test a reflexive loop is not converse well-founded but is acyclic."""
        fr = Frame.of(["a"], [("a", "a")])
        assert has_property(fr, FrameProperty.ACYCLIC)
        assert not has_property(fr, FrameProperty.CONVERSE_WELL_FOUNDED)

    def test_restrict(self):
        """Test the induced subframe."""
        fr = Frame.of(["a", "b", "c"], [("a", "b"), ("b", "c")])
        assert fr.restrict(["a", "b"]).relation == {("a", "b")}


class TestModelValidation:
    """Tests for model side conditions."""

    def test_valid_model(self, chain_model, int_model):
        """Test the fixtures validate."""
        assert validate(chain_model) == []
        assert ensure_valid(int_model) is int_model

    def test_shrinking_domain(self):
        """Test domains must grow along the relation."""
        m = build_model(["u", "v"], [("u", "v")], {"u": ["a", "b"], "v": ["a"]})
        kinds = {v.kind for v in validate(m)}
        assert ViolationKind.EXPANDING_DOMAIN in kinds

    def test_empty_domain(self):
        """Test every world needs individuals."""
        m = build_model(["u"], [], {"u": []})
        assert validate(m)[0].kind is ViolationKind.DOMAIN

    def test_tuple_outside_domain(self):
        """Test extensions stay inside the local domain."""
        m = build_model(["u"], [], {"u": ["a"]}, {("u", "P"): [["b"]]})
        assert validate(m)[0].kind is ViolationKind.TUPLE_DOMAIN

    def test_arity_mismatch(self):
        """Test a letter keeps one tuple width."""
        m = build_model(["u"], [], {"u": ["a"]}, {("u", "P"): [["a"], ["a", "a"]]})
        assert ViolationKind.ARITY in {v.kind for v in validate(m)}

    def test_keyword_letter(self):
        """Test a formula keyword cannot name a letter."""
        m = build_model(["u"], [], {"u": ["a"]}, {("u", "box"): [["a"]], ("u", "P"): [["a"]]})
        violations = validate(m)
        assert [(v.kind, v.letter) for v in violations] == [(ViolationKind.LETTER, "box")]
        with pytest.raises(ModelValidationError):
            ensure_valid(m)

    def test_heredity(self):
        """Test intuitionistic extensions must persist upward."""
        m = build_model(
            ["u", "v"],
            [("u", "u"), ("u", "v"), ("v", "v")],
            {"u": ["a"], "v": ["a"]},
            {("u", "P"): [["a"]]},
            Mode.INTUITIONISTIC,
        )
        violations = validate(m)
        assert [v.kind for v in violations] == [ViolationKind.HEREDITY]
        assert violations[0].letter == "P"

    def test_intuitionistic_frame_class(self):
        """Test intuitionistic models need a partial order."""
        m = build_model(["u"], [], {"u": ["a"]}, mode=Mode.INTUITIONISTIC)
        with pytest.raises(ModelValidationError) as exc:
            ensure_valid(m)
        assert exc.value.violations[0].kind is ViolationKind.FRAME_CLASS

    def test_visser_allows_irreflexive(self):
        """Test visser models only need transitivity and antisymmetry."""
        m = build_model(["u", "v"], [("u", "v")], {"u": ["a"], "v": ["a"]}, mode=Mode.VISSER)
        assert validate(m) == []


class TestModelJson:
    """Tests for the JSON model format."""

    def test_round_trip(self, chain_model):
        """Test a model survives JSON."""
        restored = model_from_json(model_to_json(chain_model))
        assert restored.frame == chain_model.frame
        assert dict(restored.domains) == dict(chain_model.domains)
        assert dict(restored.interpretation) == dict(chain_model.interpretation)
        assert restored.mode is chain_model.mode

    def test_tuple_field_name(self, chain_model):
        """Test interpretation entries use the "tuple" key."""
        assert '"tuple"' in model_to_json(chain_model)

    def test_reads_document(self):
        """Test a hand-written document."""
        m = model_from_json(
            '{"mode": "intuitionistic", "worlds": ["w0"], "relation": [["w0", "w0"]],'
            ' "domains": {"w0": ["a"]},'
            ' "interpretation": [{"world": "w0", "letter": "p", "tuple": []}]}'
        )
        assert m.mode is Mode.INTUITIONISTIC
        assert m.holds("w0", "p")


class TestModalEvaluation:
    """Tests for the classical modal clauses."""

    def test_atoms_and_box(self, chain_model):
        """Test box quantifies over successors with a fixed assignment."""
        assert evaluate(chain_model, "w0", {"x": "a"}, parse("P(x)"))
        assert not evaluate(chain_model, "w0", {"x": "a"}, parse("box P(x)"))
        assert evaluate(chain_model, "w1", {"x": "a"}, parse("box P(x)"))

    def test_dia_and_negation(self, chain_model):
        """Test diamond and classical negation."""
        assert evaluate(chain_model, "w0", {"x": "a"}, parse("dia ~P(x)"))
        assert not evaluate(chain_model, "w2", {"x": "a"}, parse("dia top"))

    def test_quantifiers_are_local(self, chain_model):
        """Test quantifiers range over the current world's domain."""
        assert sat_at(chain_model, "w0", parse("forall x. P(x)"))
        assert not sat_at(chain_model, "w1", parse("forall x. P(x)"))
        assert sat_at(chain_model, "w0", parse("box exists y. P(y)"))

    def test_sat_at_is_universal_closure(self, chain_model):
        """Test free variables are read universally by sat_at."""
        assert not sat_at(chain_model, "w1", parse("P(x)"))
        assert sat_at(chain_model, "w2", parse("P(x)"))

    def test_unassigned_variable(self, chain_model):
        """Test evaluate rejects incomplete assignments."""
        with pytest.raises(EvaluationError):
            evaluate(chain_model, "w0", {}, parse("P(x)"))

    def test_value_outside_domain(self, chain_model):
        """Test evaluate rejects values outside D(w)."""
        with pytest.raises(EvaluationError):
            evaluate(chain_model, "w0", {"x": "b"}, parse("P(x)"))

    def test_unknown_world(self, chain_model):
        """Test an unknown world raises."""
        with pytest.raises(EvaluationError):
            sat_at(chain_model, "w9", TOP)


class TestIntuitionisticEvaluation:
    """Tests for the intuitionistic and visser clauses."""

    def test_forall_sees_new_individuals(self, int_model):
        """Test forall ranges over later domains too."""
        assert sat_at(int_model, "w0", parse("exists x. P(x)"))
        assert not sat_at(int_model, "w0", parse("forall x. P(x)"))

    def test_classical_tautology_fails(self, int_model):
        """Test a classically valid disjunction fails at the root only."""
        f = parse("(forall x. P(x)) | exists y. ~P(y)")
        assert not sat_at(int_model, "w0", f)
        assert sat_at(int_model, "w1", f)

    def test_implication_is_upward(self, int_model):
        """Test implication looks at every successor."""
        f = parse("(exists x. P(x)) -> forall y. P(y)")
        assert not sat_at(int_model, "w0", f)

    def test_diamond_rejected(self, int_model):
        """Test diamond has no intuitionistic reading."""
        with pytest.raises(EvaluationError):
            sat_at(int_model, "w0", parse("dia P(x)"))

    def test_visser_without_loops(self):
        """Test visser implication ignores the current world."""
        m = build_model(["u", "v"], [("u", "v")], {"u": ["a"], "v": ["a"]}, mode=Mode.VISSER)
        assert sat_at(m, "v", parse("top -> bot"))
        assert not sat_at(m, "u", parse("top -> bot"))
        assert sat_at(m, "u", parse("top -> (top -> bot)"))

    def test_visser_forall_block(self):
        """Test a block of universals is evaluated at one successor."""
        m = build_model(
            ["u", "v"],
            [("u", "v")],
            {"u": ["a"], "v": ["a", "b"]},
            {("v", "Q"): [["a", "b"], ["b", "a"]]},
            Mode.VISSER,
        )
        assert not sat_at(m, "u", parse("forall x. forall y. Q(x,y)"))
        assert sat_at(m, "v", parse("forall x. forall y. Q(x,y)"))

    def test_evaluator_memo_is_consistent(self, int_model):
        """Test repeated calls agree."""
        ev = Evaluator(int_model)
        f = parse("exists x. P(x) -> P(x)")
        first = ev.true_worlds(f)
        assert ev.true_worlds(f) == first


# =============================================================================
# Differential Testing
# =============================================================================

VARS = st.sampled_from(["x", "y"])

LEAVES = st.one_of(
    st.builds(lambda v: Atom("P", (v,)), VARS),
    st.builds(lambda u, v: Atom("Q", (u, v)), VARS, VARS),
    st.just(BOT),
    st.just(TOP),
)


def _connectives(with_dia: bool):
    def extend(children: st.SearchStrategy[Formula]) -> st.SearchStrategy[Formula]:
        options = [
            st.builds(Neg, children),
            st.builds(Box, children),
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Imp, children, children),
            st.builds(Forall, VARS, children),
            st.builds(Exists, VARS, children),
        ]
        if with_dia:
            options.append(st.builds(Dia, children))
        return st.one_of(options)

    return extend


MODAL_FORMULAS = st.recursive(LEAVES, _connectives(True), max_leaves=10)
INT_FORMULAS = st.recursive(LEAVES, _connectives(False), max_leaves=10)

_RELATION = [("w0", "w1"), ("w0", "w2"), ("w1", "w2")]
_DOMAINS = {"w0": ["a"], "w1": ["a", "b"], "w2": ["a", "b"]}
_LETTERS = {
    ("w0", "P"): [["a"]],
    ("w1", "P"): [["a"]],
    ("w2", "P"): [["a"], ["b"]],
    ("w1", "Q"): [["a", "b"]],
    ("w2", "Q"): [["a", "b"], ["b", "b"]],
}

DIFFERENTIAL_MODELS = [
    build_model(["w0", "w1", "w2"], _RELATION, _DOMAINS, _LETTERS, Mode.MODAL),
    build_model(
        ["w0", "w1", "w2"],
        [*_RELATION, ("w0", "w0"), ("w1", "w1"), ("w2", "w2")],
        _DOMAINS,
        _LETTERS,
        Mode.INTUITIONISTIC,
    ),
    build_model(["w0", "w1", "w2"], _RELATION, _DOMAINS, _LETTERS, Mode.VISSER),
    constant_domain_model(["u", "v"], [("u", "v"), ("v", "u")], ["a", "b"],
                          {("v", "P"): [["b"]], ("u", "Q"): [["a", "a"]]}),
]


class TestDifferential:
    """The memoized evaluator agrees with the direct reading of the clauses."""

    @given(MODAL_FORMULAS)
    @settings(max_examples=150)
    def test_modal_agrees(self, f: Formula):
        """Test modal models."""
        for m in (DIFFERENTIAL_MODELS[0], DIFFERENTIAL_MODELS[3]):
            ev = Evaluator(m)
            for w in m.worlds:
                for g in ev.assignments(w, f):
                    assert ev.eval(w, g, f) == reference_eval(m, w, g, f)

    @given(INT_FORMULAS)
    @settings(max_examples=150)
    def test_intuitionistic_agrees(self, f: Formula):
        """Test intuitionistic and visser models."""
        for m in DIFFERENTIAL_MODELS[1:3]:
            assert validate(m) == []
            ev = Evaluator(m)
            for w in m.worlds:
                for g in ev.assignments(w, f):
                    assert ev.eval(w, g, f) == reference_eval(m, w, g, f)

    @given(INT_FORMULAS)
    @settings(max_examples=100)
    def test_heredity_of_truth(self, f: Formula):
        """Test truth persists along the intuitionistic relation."""
        m = DIFFERENTIAL_MODELS[1]
        ev = Evaluator(m)
        for u, v in m.frame.relation:
            for g in ev.assignments(u, f):
                if ev.eval(u, g, f):
                    assert ev.eval(v, g, f)


MONOTONE_FORMULAS = [
    parse(text)
    for text in [
        "P(x)",
        "~P(x)",
        "P(x) -> P(y)",
        "~~P(x) -> P(x)",
        "P(x) | ~P(x)",
        "forall y. P(y)",
        "forall y. (P(y) -> P(x))",
        "exists y. (P(y) & ~P(x))",
        "~forall y. P(y) -> exists y. ~P(y)",
        "(P(x) -> P(y)) | (P(y) -> P(x))",
        "forall x. ~~P(x) -> ~~forall x. P(x)",
    ]
]


class TestMonotonicity:
    """Intuitionistic truth persists along the relation in every small model."""

    @pytest.mark.parametrize(
        "max_worlds", [2, pytest.param(3, marks=pytest.mark.slow)]
    )
    def test_every_model(self, max_worlds):
        """Test every formula, model, related pair and assignment."""
        bounds = SearchBounds(max_worlds=max_worlds, max_domain=2, mode=Mode.INTUITIONISTIC)
        checked = 0
        for m in enumerate_models(bounds, {"P": 1}):
            ev = Evaluator(m)
            for u, v in m.frame.relation:
                for f in MONOTONE_FORMULAS:
                    for g in ev.assignments(u, f):
                        if ev.eval(u, g, f):
                            assert ev.eval(v, g, f), (f, u, v, g)
                        checked += 1
        assert checked > 0
