"""The built-in transformation passes."""

import logging
import re
from dataclasses import replace

from kripkebench.core.errors import PassError
from kripkebench.core.models import ArtifactKind, AtomClause, MstarVariant, TilingVariant
from kripkebench.logic.formula import (
    And,
    Atom,
    Forall,
    Formula,
    free_variables,
    map_atoms,
    substitute_atoms,
    variables,
)
from kripkebench.logic.parser import check_arities
from kripkebench.passes.base import Artifact, Pass, PipelineState, Stage
from kripkebench.reductions.context import ReductionContext, natural_key
from kripkebench.reductions.gadgets import beta
from kripkebench.reductions.godel import godel_translate
from kripkebench.reductions.intuitionistic import (
    BinaryNames,
    build_mstar_int,
    eliminate_binary,
    expand_propositional,
    shallowest_depth,
    sib_simulate,
    star_subst_int,
)
from kripkebench.reductions.modal import (
    attach_gadgets,
    beta_templates,
    bf_formula,
    embed_e,
    extend_with_guard,
    prime_embed,
    restrict_to_guard,
    star,
    substitution_witness,
)
from kripkebench.semantics.model import Model
from kripkebench.tiling.encoding import encode_tiling
from kripkebench.tiling.tiles import TileSet

logger = logging.getLogger(__name__)

_SOURCE_LETTER = re.compile(r"^P([1-9]\d*)$")


def _formula(artifact: Artifact) -> Formula:
    if isinstance(artifact, Model | TileSet):
        raise PassError(f"Expected a formula, got {type(artifact).__name__}")
    return artifact


def _model(artifact: Artifact) -> Model:
    if not isinstance(artifact, Model):
        raise PassError(f"Expected a model, got {type(artifact).__name__}")
    return artifact


def _numbered_letters(letters: set[str] | frozenset[str]) -> int | None:
    """The largest i with P_i among the letters, or None if some letter is not numbered."""
    indices = []
    for letter in letters:
        match = _SOURCE_LETTER.match(letter)
        if match is None:
            return None
        indices.append(int(match.group(1)))
    return max(indices, default=0)


# =============================================================================
# Guarded Embedding Passes
# =============================================================================

class _ModalFormulaPass(Pass):
    """Shared context handling for the guarded-embedding passes."""

    params_allowed = frozenset({"track"})
    input_kind = ArtifactKind.FORMULA
    output_kind = ArtifactKind.FORMULA

    def context(self, f: Formula, state: PipelineState) -> ReductionContext:
        track = self.track_param(state)
        if state.context is None:
            state.context = ReductionContext.for_formula(f, track)
        elif state.context.track is not track:
            state.context = replace(state.context, track=track)
        return state.context


class PrimePass(_ModalFormulaPass):
    """Relativize boxes to the guard."""

    name = "prime"

    def apply(self, artifact: Artifact, state: PipelineState) -> Artifact:
        f = _formula(artifact)
        if state.stage is not Stage.SOURCE:
            raise PassError(f"prime expects a source formula, got a {state.stage.value} one")
        out = prime_embed(f, self.context(f, state))
        state.stage = Stage.PRIMED
        return out


class StarPass(_ModalFormulaPass):
    """Substitute beta_k for P_k, priming first if needed."""

    name = "star"

    def apply(self, artifact: Artifact, state: PipelineState) -> Artifact:
        f = _formula(artifact)
        if state.stage is Stage.STARRED:
            raise PassError("star applied twice")
        if state.stage is Stage.PRIMED:
            assert state.context is not None
            out = substitute_atoms(f, beta_templates(state.context))
        else:
            out = star(f, self.context(f, state))
        state.stage = Stage.STARRED
        return out


class EmbedEPass(_ModalFormulaPass):
    """Conjoin forall v. beta_{n+1}(v), running prime and star as needed."""

    name = "embed-e"

    def apply(self, artifact: Artifact, state: PipelineState) -> Artifact:
        f = _formula(artifact)
        if state.stage is Stage.SOURCE:
            out = embed_e(f, self.context(f, state))
        else:
            ctx = state.context
            assert ctx is not None
            if free_variables(f):
                raise PassError(
                    f"embed-e needs a closed formula; free: {sorted(free_variables(f))}"
                )
            if state.stage is Stage.PRIMED:
                f = substitute_atoms(f, beta_templates(ctx))
            out = And(Forall(ctx.var, beta(ctx.n + 1, ctx.var, ctx)), f)
        state.stage = Stage.STARRED
        return out


class BfPass(Pass):
    """Conjoin the Barcan formula for the target letter."""

    name = "bf"
    params_allowed = frozenset({"letter"})
    input_kind = ArtifactKind.FORMULA
    output_kind = ArtifactKind.FORMULA

    def apply(self, artifact: Artifact, state: PipelineState) -> Artifact:
        f = _formula(artifact)
        default = state.context.target if state.context else "P"
        names = sorted(variables(f))
        return And(f, bf_formula(self.params.get("letter", default), names[0] if names else "x"))


# =============================================================================
# Intuitionistic Passes
# =============================================================================

class EncodeTilingPass(Pass):
    """Tile set to its tiling formula."""

    name = "encode-tiling"
    params_allowed = frozenset({"variant"})
    input_kind = ArtifactKind.TILESET
    output_kind = ArtifactKind.FORMULA

    def apply(self, artifact: Artifact, state: PipelineState) -> Artifact:
        if not isinstance(artifact, TileSet):
            raise PassError(f"Expected a tile set, got {type(artifact).__name__}")
        variant = self.enum_param("variant", TilingVariant, TilingVariant.INT)
        return encode_tiling(artifact, variant).phi


class EliminateBinaryPass(Pass):
    """
    Simulate one binary letter by monadic and 0-ary ones.

    Without a letter parameter the first binary letter in natural order is
    taken. The k-th elimination of a pipeline uses Q1, Q2, rk, sk.
    """

    name = "eliminate-binary"
    params_allowed = frozenset({"letter"})
    input_kind = ArtifactKind.FORMULA
    output_kind = ArtifactKind.FORMULA

    def apply(self, artifact: Artifact, state: PipelineState) -> Artifact:
        f = _formula(artifact)
        binary = sorted(
            (name for name, arity in check_arities(f).items() if arity == 2), key=natural_key
        )
        letter = self.params.get("letter") or (binary[0] if binary else None)
        if letter is None:
            raise PassError("eliminate-binary found no binary letter")
        names = BinaryNames.numbered(letter, state.binary_count + 1)
        out = eliminate_binary(f, letter, names)
        state.binary_count += 1
        logger.info(f"Eliminated {letter} with {tuple(names)}")
        return out


class ExpandPropPass(Pass):
    """Replace 0-ary letters by existential statements."""

    name = "expand-prop"
    input_kind = ArtifactKind.FORMULA
    output_kind = ArtifactKind.FORMULA

    def apply(self, artifact: Artifact, state: PipelineState) -> Artifact:
        return expand_propositional(_formula(artifact))


class StarIntPass(Pass):
    """
    Substitute the level formulas for the monadic letters.

    Letters other than P1..Pn are first renamed onto P1..Pn in natural
    order. depth is a level number, "n" for level n (the default), or
    "shallow" for the smallest level wide enough.
    """

    name = "star-int"
    params_allowed = frozenset({"n", "depth", "target"})
    input_kind = ArtifactKind.FORMULA
    output_kind = ArtifactKind.FORMULA

    def apply(self, artifact: Artifact, state: PipelineState) -> Artifact:
        f = _formula(artifact)
        letters = sorted(check_arities(f), key=natural_key)
        highest = _numbered_letters(set(letters))
        if highest is None:
            state.renaming = {old: f"P{i}" for i, old in enumerate(letters, start=1)}
            f = map_atoms(f, lambda a: Atom(state.renaming[a.letter], a.args))
            logger.info(f"Renamed {len(letters)} letters onto P1..P{len(letters)}")
            highest = len(letters)
        n = max(2, highest)
        requested = self.int_param("n")
        if requested is not None:
            if requested < n:
                raise PassError(f"star-int: n={requested} but the formula needs {n} letters")
            n = requested
        depth_raw = self.params.get("depth", "n")
        if depth_raw == "shallow":
            depth = shallowest_depth(n)
        elif depth_raw == "n":
            depth = n
        else:
            depth = self.int_param("depth")
        return star_subst_int(f, n, self.params.get("target", "P"), depth)


class GodelPass(Pass):
    """Intuitionistic to modal translation."""

    name = "godel"
    params_allowed = frozenset({"atom_clause"})
    input_kind = ArtifactKind.FORMULA
    output_kind = ArtifactKind.FORMULA

    def apply(self, artifact: Artifact, state: PipelineState) -> Artifact:
        clause = self.enum_param("atom_clause", AtomClause, AtomClause.BOX)
        return godel_translate(_formula(artifact), clause)


class SibPass(Pass):
    """Simulate a symmetric irreflexive binary letter by a boxed monadic one."""

    name = "sib"
    params_allowed = frozenset({"s", "p"})
    input_kind = ArtifactKind.FORMULA
    output_kind = ArtifactKind.FORMULA

    def apply(self, artifact: Artifact, state: PipelineState) -> Artifact:
        return sib_simulate(
            _formula(artifact), self.params.get("s", "S"), self.params.get("p", "P")
        )


# =============================================================================
# Model Passes
# =============================================================================

class _GuardModelPass(Pass):
    """Model surgery that needs the source letters; n is required without a context."""

    params_allowed = frozenset({"n", "track"})
    input_kind = ArtifactKind.MODEL
    output_kind = ArtifactKind.MODEL

    def context(self, state: PipelineState) -> ReductionContext:
        track = self.track_param(state)
        if state.context is not None:
            if state.context.track is not track:
                state.context = replace(state.context, track=track)
            return state.context
        n = self.int_param("n")
        if n is None:
            raise PassError(f"Pass {self.name} needs n when no context is set")
        state.context = ReductionContext.standard(n, track)
        return state.context


class ExtendGuardPass(_GuardModelPass):
    """Make the guard letter hold of everything."""

    name = "extend-guard"

    def apply(self, artifact: Artifact, state: PipelineState) -> Artifact:
        return extend_with_guard(_model(artifact), self.context(state))


class RestrictGuardPass(_GuardModelPass):
    """Keep only the worlds where the guard holds."""

    name = "restrict-guard"

    def apply(self, artifact: Artifact, state: PipelineState) -> Artifact:
        return restrict_to_guard(_model(artifact), self.context(state))


class AttachPass(_GuardModelPass):
    """Hang gadgets below every world."""

    name = "attach"

    def apply(self, artifact: Artifact, state: PipelineState) -> Artifact:
        return attach_gadgets(_model(artifact), self.context(state))


class ReadBackPass(_GuardModelPass):
    """Interpret P_k by beta_k on a single-letter model."""

    name = "read-back"

    def apply(self, artifact: Artifact, state: PipelineState) -> Artifact:
        return substitution_witness(_model(artifact), self.context(state))


class MstarIntPass(Pass):
    """Hang level frames below a countermodel over P1..Pn."""

    name = "mstar-int"
    params_allowed = frozenset({"n", "variant", "depth", "target"})
    input_kind = ArtifactKind.MODEL
    output_kind = ArtifactKind.MODEL

    def apply(self, artifact: Artifact, state: PipelineState) -> Artifact:
        m = _model(artifact)
        highest = _numbered_letters(m.letters - {self.params.get("target", "P")})
        if highest is None:
            raise PassError("mstar-int needs a model over P1..Pn")
        n = self.int_param("n", max(2, highest))
        assert n is not None
        return build_mstar_int(
            m,
            n,
            self.enum_param("variant", MstarVariant, MstarVariant.INT),
            self.params.get("target", "P"),
            self.int_param("depth"),
        )
