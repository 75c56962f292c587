"""Suites for the single-letter modal reductions."""

import logging
from collections.abc import Mapping
from typing import ClassVar

from kripkebench.core.errors import KripkeBenchError
from kripkebench.core.models import Track
from kripkebench.logic.formula import And, Forall
from kripkebench.reductions.context import ReductionContext
from kripkebench.reductions.gadgets import alpha, beta, build_gadget, chain_for
from kripkebench.reductions.modal import (
    TRACK_FRAME_CLASS,
    attach_gadgets,
    build_b,
    embed_e,
    extend_with_guard,
    prime_embed,
    restrict_to_guard,
)
from kripkebench.semantics.evaluator import Evaluator
from kripkebench.semantics.frames import missing_properties
from kripkebench.semantics.model import Model, validate
from kripkebench.suites.base import Suite, SuiteRecorder
from kripkebench.suites.corpus import MODAL_LETTER_COUNT, modal_formulas, modal_models

logger = logging.getLogger(__name__)

PIVOT = "a"
BYSTANDER = "b"


# =============================================================================
# Gadgets in Isolation
# =============================================================================

class GadgetGLSuite(Suite):
    """alpha_m holds of the pivot only at the root of the level-m chain."""

    name = "gadget-gl"
    description = "GL chain gadgets address exactly their own level at their root"
    defaults: ClassVar[dict[str, int]] = {"n": 3}
    reflexive = False

    def run(self, rec: SuiteRecorder, params: Mapping[str, int]) -> None:
        track = Track.GRZ if self.reflexive else Track.GL
        ctx = ReductionContext.standard(params["n"], track)
        for k in range(1, ctx.n + 2):
            m = build_gadget(
                k, track, PIVOT, {PIVOT, BYSTANDER}, ctx.target, reflexive=self.reflexive
            )
            ev = Evaluator(m)
            for level in range(1, ctx.n + 2):
                formula = alpha(level, ctx.var, ctx)
                for w in m.worlds:
                    expected = level == k and w == chain_for(k, track).root
                    rec.check(
                        f"k{k}/alpha{level}/{w}/{PIVOT}",
                        ev.eval(w, {ctx.var: PIVOT}, formula) == expected,
                        f"alpha_{level}[{PIVOT}] should be {expected}",
                        world=w,
                        assignment={ctx.var: PIVOT},
                        formula=formula,
                    )
                    rec.check(
                        f"k{k}/alpha{level}/{w}/{BYSTANDER}",
                        not ev.eval(w, {ctx.var: BYSTANDER}, formula),
                        f"alpha_{level}[{BYSTANDER}] should be false",
                        world=w,
                        assignment={ctx.var: BYSTANDER},
                    )


class GadgetGLReflexiveSuite(GadgetGLSuite):
    name = "gadget-gl-reflexive"
    description = "Reflexive GL chains behave like the irreflexive ones"
    reflexive = True


class GadgetKTBSuite(Suite):
    """Root addressing and world count of the symmetric chains."""

    name = "gadget-ktb"
    description = "KTB chain gadgets address exactly their own level at their root"
    defaults: ClassVar[dict[str, int]] = {"n": 3}

    def run(self, rec: SuiteRecorder, params: Mapping[str, int]) -> None:
        ctx = ReductionContext.standard(params["n"], Track.KTB)
        for k in range(1, ctx.n + 2):
            chain = chain_for(k, Track.KTB)
            m = build_gadget(k, Track.KTB, PIVOT, {PIVOT, BYSTANDER}, ctx.target)
            rec.check(
                f"k{k}/size",
                len(m.worlds) == k * k + 3 * k + 3,
                f"chain should have {k * k + 3 * k + 3} worlds, has {len(m.worlds)}",
            )
            ev = Evaluator(m)
            for level in range(1, ctx.n + 2):
                formula = alpha(level, ctx.var, ctx)
                at_root = ev.eval(chain.root, {ctx.var: PIVOT}, formula)
                rec.check(
                    f"k{k}/alpha{level}/root",
                    at_root == (level == k),
                    f"alpha_{level}[{PIVOT}] at the root should be {level == k}",
                    world=chain.root,
                    formula=formula,
                )
                for w in sorted(set(m.worlds) - chain.a_nodes):
                    rec.check(
                        f"k{k}/alpha{level}/{w}",
                        not ev.eval(w, {ctx.var: PIVOT}, formula),
                        f"alpha_{level}[{PIVOT}] should fail off the a-worlds",
                        world=w,
                    )


# =============================================================================
# Guarded Embedding
# =============================================================================

def partial_guard(m: Model, ctx: ReductionContext) -> Model:
    """Drop the first individual from the guard at every odd-numbered world but w0."""
    interpretation = dict(m.interpretation)
    for i, w in enumerate(m.worlds):
        if i % 2 == 1:
            interpretation[(w, ctx.fresh)] = frozenset(
                (a,) for a in sorted(m.domain(w))[1:]
            )
    return Model(m.frame, m.domains, interpretation, m.mode)


class GuardEmbeddingSuite(Suite):
    """Both directions of the guarded embedding on the modal corpus."""

    name = "guard-embedding"
    description = "phi holds iff B & phi' holds, with the guard total or partial"
    defaults: ClassVar[dict[str, int]] = {"n": 2}
    minimums: ClassVar[dict[str, int]] = {"n": MODAL_LETTER_COUNT}

    def run(self, rec: SuiteRecorder, params: Mapping[str, int]) -> None:
        ctx = ReductionContext.standard(params["n"], Track.K)
        guard = build_b(ctx)
        formulas = modal_formulas()
        for model_name, m in modal_models(Track.K):
            try:
                extended = extend_with_guard(m, ctx)
                partial = partial_guard(extended, ctx)
                restricted = restrict_to_guard(partial, ctx)
            except KripkeBenchError as e:
                rec.guard(f"{model_name}/surgery", e)
                continue
            source = Evaluator(m)
            on_extended = Evaluator(extended)
            on_partial = Evaluator(partial)
            on_restricted = Evaluator(restricted)
            w0 = m.worlds[0]
            for formula_name, f in formulas:
                case = f"{model_name}/{formula_name}"
                try:
                    primed = prime_embed(f, ctx)
                except KripkeBenchError as e:
                    rec.guard(case, e)
                    continue
                rec.check(
                    f"{case}/extend",
                    source.sat_at(w0, f) == on_extended.sat_at(w0, And(guard, primed)),
                    "phi and B & phi' disagree on the extended model",
                    world=w0,
                    formula=f,
                )
                if on_partial.sat_at(w0, guard):
                    rec.check(
                        f"{case}/restrict",
                        on_partial.sat_at(w0, primed) == on_restricted.sat_at(w0, f),
                        "phi' on the partial model and phi on its restriction disagree",
                        world=w0,
                        formula=f,
                    )


# =============================================================================
# Gadget Attachment
# =============================================================================

class AttachSuite(Suite):
    """Attach gadgets to the corpus closed for one track and check the bridge."""

    defaults: ClassVar[dict[str, int]] = {"n": 2}
    minimums: ClassVar[dict[str, int]] = {"n": MODAL_LETTER_COUNT}
    track: ClassVar[Track] = Track.K

    @property
    def name(self) -> str:
        return f"attach-{self.track.value}"

    @property
    def description(self) -> str:
        return f"Single-letter {self.track.value.upper()} models preserve every corpus formula"

    def run(self, rec: SuiteRecorder, params: Mapping[str, int]) -> None:
        ctx = ReductionContext.standard(params["n"], self.track)
        guard = build_b(ctx)
        guard_beta = Forall(ctx.var, beta(ctx.n + 1, ctx.var, ctx))
        betas = {k: beta(k, ctx.var, ctx) for k in range(1, ctx.n + 2)}
        formulas = modal_formulas()
        for model_name, m in modal_models(self.track):
            try:
                extended = extend_with_guard(m, ctx)
                attached = attach_gadgets(extended, ctx)
            except KripkeBenchError as e:
                rec.guard(f"{model_name}/attach", e)
                continue
            rec.check(
                f"{model_name}/valid",
                not validate(attached),
                f"attached model is invalid: {validate(attached)[:3]}",
            )
            missing = missing_properties(attached.frame, TRACK_FRAME_CLASS[self.track])
            rec.check(
                f"{model_name}/frame-class",
                not missing,
                f"attached frame lacks {[p.value for p in missing]}",
            )
            hosts = set(m.worlds)
            ev = Evaluator(attached)
            for w in m.worlds:
                for a in sorted(m.domain(w)):
                    for k, template in betas.items():
                        expected = extended.holds(w, ctx.letter(k), a)
                        rec.check(
                            f"{model_name}/bridge/{w}/{a}/{k}",
                            ev.eval(w, {ctx.var: a}, template) == expected,
                            f"beta_{k}[{a}] should be {expected}",
                            world=w,
                            assignment={ctx.var: a},
                        )
                for u in attached.successors(w):
                    if u not in hosts:
                        rec.check(
                            f"{model_name}/confine/{u}",
                            not ev.sat_at(u, guard_beta),
                            "a gadget world seen by a host satisfies the guard",
                            world=u,
                        )

            source = Evaluator(extended)
            for formula_name, f in formulas:
                case = f"{model_name}/{formula_name}"
                try:
                    primed = And(guard, prime_embed(f, ctx))
                    embedded = embed_e(f, ctx)
                except KripkeBenchError as e:
                    rec.guard(case, e)
                    continue
                for w in m.worlds:
                    rec.check(
                        f"{case}/{w}",
                        source.sat_at(w, primed) == ev.sat_at(w, embedded),
                        "B & phi' and the single-letter formula disagree",
                        world=w,
                        formula=f,
                    )


class AttachKSuite(AttachSuite):
    track = Track.K


class AttachGLSuite(AttachSuite):
    track = Track.GL


class AttachGrzSuite(AttachSuite):
    track = Track.GRZ


class AttachKTBSuite(AttachSuite):
    track = Track.KTB
