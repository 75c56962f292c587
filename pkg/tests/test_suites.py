"""Tests for the verification suites and their registry."""

import pytest

from kripkebench.core.errors import SuiteError
from kripkebench.core.models import Mode, SearchBounds, SuiteReport
from kripkebench.logic.parser import parse
from kripkebench.search.oracle import enumerate_models
from kripkebench.semantics.evaluator import Evaluator
from kripkebench.suites.base import SuiteRecorder
from kripkebench.suites.factory import get_suite, list_suites, run_suite, suite_aliases
from kripkebench.suites.intuitionistic import PointSpace


def assert_clean(report: SuiteReport) -> None:
    assert report.cases_run > 0
    assert report.passed, [f.model_dump() for f in report.failures[:5]]


class TestRegistry:
    """Tests for suite lookup and parameters."""

    def test_names(self):
        """Test every documented suite is registered."""
        assert set(list_suites()) == {
            "gadget-gl",
            "gadget-gl-reflexive",
            "gadget-ktb",
            "guard-embedding",
            "attach-k",
            "attach-gl",
            "attach-grz",
            "attach-ktb",
            "frame-f",
            "frame-f-qfl",
            "qint-main",
            "qkc-main",
            "qfl-main",
            "binary-elimination",
            "godel",
            "tiling-torus",
            "syntax",
            "oracle-cross-check",
        }

    @pytest.mark.parametrize(
        ("alias", "name"),
        [("lemma-2.2", "gadget-gl"), ("vp-b", "guard-embedding"), ("vp-ast-ktb", "attach-ktb")],
    )
    def test_aliases(self, alias, name):
        """Test result names resolve to their suites without being listed."""
        assert get_suite(alias).name == name
        assert alias in suite_aliases(name)
        assert alias not in list_suites()

    def test_unknown_suite(self):
        """Test an unknown name raises."""
        with pytest.raises(SuiteError):
            get_suite("nope")

    def test_unknown_param(self):
        """Test a parameter the suite does not take raises."""
        with pytest.raises(SuiteError):
            run_suite("syntax", n=2)

    def test_descriptions(self):
        """Test every suite describes itself."""
        for name in list_suites():
            assert get_suite(name).description


class TestRecorder:
    """Tests for SuiteRecorder."""

    def test_failures_sorted(self):
        """Test the report sorts failures by case id."""
        rec = SuiteRecorder("demo")
        rec.check("b", False, "second", formula=parse("p & q"))
        rec.check("a", False, "first", world="w0", assignment={"x": "a"})
        rec.check("c", True, "fine")
        report = rec.report({"n": 1}, 0.01234)
        assert report.cases_run == 3
        assert [f.case_id for f in report.failures] == ["a", "b"]
        assert report.failures[1].formula == "(p & q)"
        assert report.wall_time_seconds == 0.012
        assert not report.passed


class TestModalSuites:
    """Tests for the gadget, guard and attachment suites."""

    @pytest.mark.parametrize("name", ["gadget-gl", "gadget-gl-reflexive"])
    def test_gl_gadgets(self, name):
        """Test the GL gadgets at small levels."""
        assert_clean(run_suite(name, n=2))

    def test_ktb_gadgets(self):
        """Test the KTB gadgets at small levels."""
        assert_clean(run_suite("gadget-ktb", n=2))

    def test_guard_embedding(self):
        """Test the guarded embedding on the corpus."""
        assert_clean(run_suite("guard-embedding"))

    @pytest.mark.parametrize("track", ["gl", "grz"])
    def test_attach(self, track):
        """Test attachment for GL and Grz over both corpus letters."""
        report = run_suite(f"attach-{track}", n=2)
        assert_clean(report)
        assert report.params == {"n": 2}

    @pytest.mark.parametrize("name", ["attach-k", "guard-embedding"])
    def test_too_few_letters(self, name):
        """Test n below the corpus letters is a parameter error."""
        with pytest.raises(SuiteError, match="n >= 2"):
            run_suite(name, n=1)

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["gadget-gl", "gadget-ktb", "attach-k", "attach-ktb"])
    def test_documented_params(self, name):
        """Test the modal suites at their defaults."""
        assert_clean(run_suite(name))


class TestIntuitionisticSuites:
    """Tests for the level frames, single-letter models and translations."""

    def test_frame_f(self):
        """Test the level frames at depth 2."""
        assert_clean(run_suite("frame-f", n=2))

    def test_frame_f_qfl(self):
        """Test the irreflexive level frames at depth 2."""
        assert_clean(run_suite("frame-f-qfl", n=2))

    @pytest.mark.parametrize("name", ["qint-main", "qkc-main", "qfl-main"])
    def test_main(self, name):
        """Test the single-letter countermodels."""
        report = run_suite(name)
        assert_clean(report)
        assert report.params == {"depth": 2}

    def test_binary_elimination(self):
        """Test binary elimination on the corpus."""
        assert_clean(run_suite("binary-elimination"))

    def test_godel_small(self):
        """Test the translation over a small closure."""
        assert_clean(run_suite("godel", size_cap=4, max_worlds=2, max_domain=1, audit=5))

    @pytest.mark.slow
    def test_frame_f_default(self):
        """Test the level frames at the default depth."""
        assert_clean(run_suite("frame-f"))

    @pytest.mark.slow
    def test_godel_default(self):
        """Test the translation at the documented bounds."""
        assert_clean(run_suite("godel"))


class TestMiscSuites:
    """Tests for the tiling, syntax and oracle suites."""

    def test_tiling_torus(self):
        """Test the torus countermodels for small periods."""
        assert_clean(run_suite("tiling-torus", max_period=2))

    def test_syntax(self):
        """Test the syntax checks."""
        assert_clean(run_suite("syntax"))

    def test_oracle_small(self):
        """Test the oracle cross-check on single worlds."""
        assert_clean(run_suite("oracle-cross-check", max_worlds=1, max_domain=1))

    @pytest.mark.slow
    def test_oracle_default(self):
        """Test the oracle cross-check at its defaults."""
        assert_clean(run_suite("oracle-cross-check"))


class TestPointSpace:
    """Tests for the bitset algebra behind the godel suite."""

    @pytest.mark.parametrize("mode", [Mode.INTUITIONISTIC, Mode.VISSER])
    def test_matches_evaluator(self, mode):
        """Test box, the local quantifiers and implication against the evaluator."""
        bounds = SearchBounds(max_worlds=2, max_domain=2, mode=mode)
        models = list(enumerate_models(bounds, {"P": 1}))
        space = PointSpace(models)
        evaluators = [Evaluator(m.with_mode(Mode.MODAL)) for m in models]
        px, py = space.atom_x, space.atom_y
        vectors = {
            "box P(x)": space.box(px),
            "box ~P(y)": space.not_box(py),
            "exists x. P(x)": space.local_any("x", px),
            "forall y. (P(x) & P(y))": space.local_all("y", px & py),
            "box (P(x) -> P(y))": space.imp_box(px, py),
        }
        for text, v in vectors.items():
            f = parse(text)
            for bit, (mi, w, gx, gy) in space.points.items():
                expected = evaluators[mi].eval(w, {"x": gx, "y": gy}, f)
                assert space.truth(v, bit) == expected, (text, mi, w, gx, gy)

    def test_no_stray_bits(self):
        """Test every vector stays inside the point bits."""
        models = list(enumerate_models(SearchBounds(max_worlds=2, mode=Mode.VISSER), {"P": 1}))
        space = PointSpace(models)
        for v in (space.not_box(space.atom_x), space.local_any("y", space.valid), space.bottom):
            assert v & ~space.valid == 0
