"""Suites for tilings, syntactic shape and agreement with the bounded oracle."""

import logging
from collections.abc import Mapping
from typing import ClassVar

from kripkebench.config import settings
from kripkebench.core.errors import KripkeBenchError, SearchBudgetExceeded
from kripkebench.core.models import Mode, SearchBounds, TilingVariant, Track
from kripkebench.logic.analysis import shape
from kripkebench.logic.formula import And, Formula, variables
from kripkebench.logic.parser import parse
from kripkebench.passes.pipeline import parse_pipeline, run_pipeline
from kripkebench.reductions.context import ReductionContext
from kripkebench.reductions.intuitionistic import (
    BinaryNames,
    eliminate_binary,
    read_back_binary,
    witness_eliminate_binary,
)
from kripkebench.reductions.modal import (
    attach_gadgets,
    build_b,
    embed_e,
    extend_with_guard,
    prime_embed,
    substitution_witness,
)
from kripkebench.search.oracle import DESIGNATED, bounded_refute, bounded_sat, enumerate_models
from kripkebench.semantics.evaluator import Evaluator
from kripkebench.semantics.model import Model
from kripkebench.suites.base import Suite, SuiteRecorder
from kripkebench.suites.corpus import (
    BINARY_ORACLE_FORMULAS,
    ORACLE_FORMULAS,
    modal_formulas,
    tileable_sets,
    untileable_sets,
)
from kripkebench.tiling.countermodel import ROOT, torus_countermodel
from kripkebench.tiling.encoding import encode_tiling
from kripkebench.tiling.tiles import Tiling, TileSet, check_tiling, find_periodic_tiling, unfold

logger = logging.getLogger(__name__)


def periods(max_period: int) -> list[tuple[int, int]]:
    """Periods in search order: by height, then width."""
    return [(w, h) for h in range(1, max_period + 1) for w in range(1, max_period + 1)]


def first_periodic_tiling(ts: TileSet, max_period: int) -> Tiling | None:
    for w, h in periods(max_period):
        tau = find_periodic_tiling(ts, w, h)
        if tau is not None:
            return tau
    return None


# =============================================================================
# Tilings
# =============================================================================

class TilingTorusSuite(Suite):
    """Periodic tilings give verified countermodels; untileable sets have none."""

    name = "tiling-torus"
    description = "Torus tilings refute the tiling formula in both readings"
    defaults: ClassVar[dict[str, int]] = {"max_period": 3}

    def run(self, rec: SuiteRecorder, params: Mapping[str, int]) -> None:
        max_period = params["max_period"]
        for name, ts in tileable_sets():
            tau = first_periodic_tiling(ts, max_period)
            if not rec.check(f"{name}/found", tau is not None, "expected a periodic tiling"):
                continue
            assert tau is not None
            rec.check(
                f"{name}/unfold", check_tiling(ts, unfold(tau)), "unfolded tiling is invalid"
            )
            for variant in TilingVariant:
                case = f"{name}/{variant.value}"
                try:
                    m = torus_countermodel(ts, tau, variant)
                except KripkeBenchError as e:
                    rec.guard(case, e)
                    continue
                encoding = encode_tiling(ts, variant)
                ev = Evaluator(m)
                for label, part in encoding.parts.items():
                    rec.check(
                        f"{case}/{label}",
                        ev.sat_at(ROOT, part),
                        f"conjunct {label} should hold at the root",
                        world=ROOT,
                    )
                rec.check(
                    f"{case}/refuted",
                    not ev.sat_at(ROOT, encoding.phi),
                    "tiling formula should fail at the root",
                    world=ROOT,
                )
        for name, ts in untileable_sets():
            rec.check(
                f"{name}/none",
                first_periodic_tiling(ts, max_period) is None,
                "untileable set produced a tiling",
            )


# =============================================================================
# Syntactic Shape
# =============================================================================

TILING_PIPELINES = [
    "encode-tiling | eliminate-binary*2 | expand-prop | star-int:depth=shallow",
    "encode-tiling:variant=visser | eliminate-binary*2 | expand-prop | star-int:depth=shallow",
]


class SyntaxSuite(Suite):
    """Reduction outputs use one letter and no new variables."""

    name = "syntax"
    description = "Reduction outputs stay within one letter and two variables"
    defaults: ClassVar[dict[str, int]] = {}

    def run(self, rec: SuiteRecorder, params: Mapping[str, int]) -> None:
        for name, f in modal_formulas():
            for track in Track:
                case = f"{name}/{track.value}"
                try:
                    out = embed_e(f, ReductionContext.for_formula(f, track))
                except KripkeBenchError as e:
                    rec.guard(case, e)
                    continue
                s = shape(out)
                rec.check(
                    f"{case}/letters", s.letters == {"P"}, f"letters {sorted(s.letters)}", formula=f
                )
                rec.check(
                    f"{case}/variables",
                    s.variables <= variables(f),
                    f"variables {sorted(s.variables)} exceed the input's",
                    formula=f,
                )

        for text in TILING_PIPELINES:
            passes = parse_pipeline(text)
            for name, ts in tileable_sets() + untileable_sets():
                case = f"{name}/{passes[0]!r}"
                try:
                    out = run_pipeline(passes, ts)
                except KripkeBenchError as e:
                    rec.guard(case, e)
                    continue
                assert isinstance(out, Formula)
                s = shape(out)
                rec.check(f"{case}/positive", s.positive, "pipeline output is not positive")
                rec.check(
                    f"{case}/variables",
                    len(s.variables) <= 2,
                    f"pipeline output uses {sorted(s.variables)}",
                )
                rec.check(
                    f"{case}/letters", s.letters == {"P"}, f"letters {sorted(s.letters)}"
                )


# =============================================================================
# Bounded Oracle
# =============================================================================

class OracleCrossCheckSuite(Suite):
    """
    Bounded satisfiability agrees on both sides of the modal reduction.

    The target side scans host models over the source letter and attaches
    gadgets, so a single-letter model is found exactly when the guarded
    source formula is satisfiable within the same bounds. The binary
    elimination is checked in both directions on whatever refutations the
    oracle finds.
    """

    name = "oracle-cross-check"
    description = "The bounded oracle agrees with the reductions on tiny formulas"
    defaults: ClassVar[dict[str, int]] = {"max_worlds": 2, "max_domain": 2}

    def run(self, rec: SuiteRecorder, params: Mapping[str, int]) -> None:
        ctx = ReductionContext.standard(1, Track.K)
        bounds = SearchBounds(
            max_worlds=params["max_worlds"], max_domain=params["max_domain"], mode=Mode.MODAL
        )
        for i, text in enumerate(ORACLE_FORMULAS, start=1):
            case = f"modal{i}"
            f = parse(text)
            guarded = And(build_b(ctx), prime_embed(f, ctx))
            try:
                source = bounded_sat(guarded, bounds)
                target = self.scan_hosts(embed_e(f, ctx), ctx, bounds)
            except KripkeBenchError as e:
                rec.guard(case, e)
                continue
            rec.check(
                f"{case}/agree",
                (source is None) == (target is None),
                f"source {'sat' if source else 'unsat'}, target {'sat' if target else 'unsat'}",
                formula=f,
            )
            if target is not None:
                witness = substitution_witness(target, ctx)
                rec.check(
                    f"{case}/witness",
                    Evaluator(witness).sat_at(DESIGNATED, guarded),
                    "read-back model should satisfy B & phi'",
                    world=DESIGNATED,
                    formula=f,
                )

        int_bounds = bounds.model_copy(update={"mode": Mode.INTUITIONISTIC})
        letter = "Q"
        names = BinaryNames.numbered(letter, 1)
        for i, text in enumerate(BINARY_ORACLE_FORMULAS, start=1):
            case = f"binary{i}"
            chi = parse(text)
            eliminated = eliminate_binary(chi, letter, names)
            try:
                refuter = bounded_refute(chi, int_bounds)
                if refuter is not None:
                    witness = witness_eliminate_binary(refuter, DESIGNATED, chi, letter, names)
                    rec.check(
                        f"{case}/forward",
                        not Evaluator(witness).sat_at(DESIGNATED, eliminated),
                        "witness model should refute the eliminated formula",
                        formula=chi,
                    )
                refuter = bounded_refute(eliminated, int_bounds)
                if refuter is not None:
                    restored = read_back_binary(refuter, letter, names)
                    rec.check(
                        f"{case}/backward",
                        not Evaluator(restored).sat_at(DESIGNATED, chi),
                        "read-back model should refute the original formula",
                        formula=chi,
                    )
            except KripkeBenchError as e:
                rec.guard(case, e)

    def scan_hosts(
        self, embedded: Formula, ctx: ReductionContext, bounds: SearchBounds
    ) -> Model | None:
        """
        First host model whose single-letter version satisfies the embedding at w0.

        Raises:
            SearchBudgetExceeded: If more hosts than the search budget are needed
        """
        limit = settings.search_budget
        examined = 0
        for host in enumerate_models(bounds, {letter: 1 for letter in ctx.letters}):
            examined += 1
            if examined > limit:
                raise SearchBudgetExceeded(limit, examined)
            m_star = attach_gadgets(extend_with_guard(host, ctx), ctx)
            if Evaluator(m_star).sat_at(DESIGNATED, embedded):
                logger.info(f"Host scan hit after {examined} candidates")
                return m_star
        return None
