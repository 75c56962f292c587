"""Guarded embedding, single-letter substitution and gadget attachment for modal logics."""

import logging

from kripkebench.core.errors import FrameClassError, ReductionError
from kripkebench.core.models import ClosureKind, FrameProperty, Mode, Track
from kripkebench.logic.formula import (
    And,
    Atom,
    Bot,
    Box,
    Dia,
    Exists,
    Forall,
    Formula,
    Imp,
    Neg,
    Or,
    Template,
    Top,
    free_variables,
    substitute_atoms,
)
from kripkebench.logic.parser import check_arities
from kripkebench.reductions.context import ReductionContext
from kripkebench.reductions.gadgets import beta, chain_for
from kripkebench.semantics.evaluator import Evaluator
from kripkebench.semantics.frames import Frame, World, closure, missing_properties
from kripkebench.semantics.model import Extension, Individual, Model

logger = logging.getLogger(__name__)

TRACK_FRAME_CLASS: dict[Track, tuple[FrameProperty, ...]] = {
    Track.K: (),
    Track.GL: (FrameProperty.TRANSITIVE, FrameProperty.CONVERSE_WELL_FOUNDED),
    Track.GRZ: (
        FrameProperty.REFLEXIVE,
        FrameProperty.TRANSITIVE,
        FrameProperty.ANTISYMMETRIC,
    ),
    Track.KTB: (FrameProperty.REFLEXIVE, FrameProperty.SYMMETRIC),
}

TRACK_CLOSURE: dict[Track, ClosureKind | None] = {
    Track.K: None,
    Track.GL: ClosureKind.TRANSITIVE,
    Track.GRZ: ClosureKind.REFLEXIVE_TRANSITIVE,
    Track.KTB: ClosureKind.REFLEXIVE_SYMMETRIC,
}


def build_b(ctx: ReductionContext) -> Formula:
    """The guard: forall v. P_{n+1}(v)."""
    return Forall(ctx.var, Atom(ctx.fresh, (ctx.var,)))


def bf_formula(letter: str = "P", var: str = "x") -> Formula:
    """The Barcan formula: forall x. box P(x) -> box forall x. P(x)."""
    p = Atom(letter, (var,))
    return Imp(Forall(var, Box(p)), Box(Forall(var, p)))


def normalize_modal_basis(f: Formula) -> Formula:
    """Rewrite |, ->, exists and dia into &, ~, box and forall."""
    match f:
        case Atom() | Top() | Bot():
            return f
        case Neg(b):
            return Neg(normalize_modal_basis(b))
        case And(l, r):
            return And(normalize_modal_basis(l), normalize_modal_basis(r))
        case Or(l, r):
            return Neg(And(Neg(normalize_modal_basis(l)), Neg(normalize_modal_basis(r))))
        case Imp(l, r):
            return Neg(And(normalize_modal_basis(l), Neg(normalize_modal_basis(r))))
        case Box(b):
            return Box(normalize_modal_basis(b))
        case Dia(b):
            return Neg(Box(Neg(normalize_modal_basis(b))))
        case Forall(v, b):
            return Forall(v, normalize_modal_basis(b))
        case Exists(v, b):
            return Neg(Forall(v, Neg(normalize_modal_basis(b))))
    raise TypeError(f"Not a formula: {f!r}")


def _check_source_letters(f: Formula, ctx: ReductionContext) -> None:
    arities = check_arities(f)
    if ctx.fresh in arities or ctx.target in arities:
        raise ReductionError(
            f"Source formula uses reserved letter {ctx.fresh} or {ctx.target}"
        )
    unknown = sorted(set(arities) - set(ctx.letters))
    if unknown:
        raise ReductionError(f"Letters outside P_1..P_n: {unknown}")
    wrong = sorted(name for name, arity in arities.items() if arity != 1)
    if wrong:
        raise ReductionError(f"Source letters must be monadic: {wrong}")


def prime_embed(f: Formula, ctx: ReductionContext) -> Formula:
    """
    Relativize every box to the guard: (box phi)' = box(B -> phi').

    The input is first normalized to the &, ~, box, forall basis.

    Raises:
        ReductionError: If f uses P_{n+1}, the target letter or unknown letters
    """
    _check_source_letters(f, ctx)
    guard = build_b(ctx)

    def prime(node: Formula) -> Formula:
        match node:
            case Atom() | Top() | Bot():
                return node
            case Neg(b):
                return Neg(prime(b))
            case And(l, r):
                return And(prime(l), prime(r))
            case Box(b):
                return Box(Imp(guard, prime(b)))
            case Forall(v, b):
                return Forall(v, prime(b))
        raise ReductionError(f"Unexpected connective after normalization: {node!r}")

    return prime(normalize_modal_basis(f))


def beta_templates(ctx: ReductionContext) -> dict[str, Template]:
    """P_k -> beta_k for every k in 1..n+1."""
    return {
        ctx.letter(k): Template(ctx.var, beta(k, ctx.var, ctx))
        for k in range(1, ctx.n + 2)
    }


def star(f: Formula, ctx: ReductionContext) -> Formula:
    """phi*: the primed formula with every P_k replaced by beta_k."""
    return substitute_atoms(prime_embed(f, ctx), beta_templates(ctx))


def embed_e(f: Formula, ctx: ReductionContext) -> Formula:
    """
    The single-letter embedding: forall v. beta_{n+1}(v) & phi*.

    Raises:
        ReductionError: If f is not closed or uses letters outside the context
    """
    if free_variables(f):
        raise ReductionError(f"embed-e needs a closed formula; free: {sorted(free_variables(f))}")
    guard = Forall(ctx.var, beta(ctx.n + 1, ctx.var, ctx))
    return And(guard, star(f, ctx))


# =============================================================================
# Model Surgery
# =============================================================================

def extend_with_guard(m: Model, ctx: ReductionContext) -> Model:
    """Make P_{n+1} true of every individual at every world."""
    interpretation = dict(m.interpretation)
    for w in m.worlds:
        interpretation[(w, ctx.fresh)] = frozenset((a,) for a in m.domain(w))
    return Model(m.frame, m.domains, interpretation, m.mode)


def guard_worlds(m: Model, ctx: ReductionContext) -> list[World]:
    return Evaluator(m).true_worlds(build_b(ctx))


def restrict_to_guard(m: Model, ctx: ReductionContext) -> Model:
    """Submodel on the worlds where the guard holds."""
    return m.restrict(guard_worlds(m, ctx))


def substitution_witness(m_star: Model, ctx: ReductionContext) -> Model:
    """
    Read P_1..P_{n+1} back off a single-letter model as the extensions of beta_k.

    On the result, B & phi' holds at a world exactly where
    forall v. beta_{n+1}(v) & phi* holds in m_star.
    """
    ev = Evaluator(m_star)
    interpretation: dict[tuple[World, str], Extension] = {
        key: ext for key, ext in m_star.interpretation.items() if key[1] != ctx.target
    }
    for k in range(1, ctx.n + 2):
        template = beta(k, ctx.var, ctx)
        for w in m_star.worlds:
            interpretation[(w, ctx.letter(k))] = frozenset(
                (a,) for a in sorted(m_star.domain(w)) if ev.eval(w, {ctx.var: a}, template)
            )
    return Model(m_star.frame, m_star.domains, interpretation, m_star.mode)


def non_antitone_letters(m: Model, ctx: ReductionContext) -> list[tuple[World, World, str]]:
    """Pairs (w, w') with wRw' where some a in D(w) gains P_k at w'."""
    found = []
    for w, u in sorted(m.frame.relation):
        for k in range(1, ctx.n + 2):
            letter = ctx.letter(k)
            gained = {
                t for t in m.extension(u, letter) - m.extension(w, letter) if t[0] in m.domain(w)
            }
            if gained:
                found.append((w, u, letter))
    return found


def copy_name(host: World, k: int, node: str) -> World:
    return f"{host}:{k}:{node}"


def attach_gadgets(m: Model, ctx: ReductionContext) -> Model:
    """
    Hang one level-k gadget below every world for each k in 1..n+1.

    The copy (w, k) has domain D(w), and the target letter holds of a at its
    a-worlds exactly when P_k holds of a at w. Hosts keep no letters. The
    whole relation is then closed according to the track.

    Raises:
        ReductionError: If m is not modal or the guard fails at some world
        FrameClassError: If m's frame lies outside the track's frame class
    """
    if m.mode is not Mode.MODAL:
        raise ReductionError(f"Gadget attachment needs a modal model, got {m.mode.value}")
    missing = missing_properties(m.frame, TRACK_FRAME_CLASS[ctx.track])
    if missing:
        raise FrameClassError(ctx.track.value, [p.value for p in missing])
    off_guard = sorted(set(m.worlds) - set(guard_worlds(m, ctx)))
    if off_guard:
        raise ReductionError(f"Guard {ctx.fresh} is not global; fails at {off_guard}")
    if ctx.track in (Track.GL, Track.GRZ):
        drifting = non_antitone_letters(m, ctx)
        if drifting:
            logger.warning(
                f"Letters grow along the relation at {drifting[:3]}; transitive "
                f"attachment lets hosts see successors' gadgets"
            )

    worlds: list[World] = list(m.worlds)
    edges: set[tuple[World, World]] = set(m.frame.relation)
    domains: dict[World, frozenset[Individual]] = dict(m.domains)
    interpretation: dict[tuple[World, str], Extension] = {}

    for w in m.worlds:
        for k in range(1, ctx.n + 2):
            chain = chain_for(k, ctx.track)
            active = frozenset(
                (a,) for a in sorted(m.domain(w)) if m.holds(w, ctx.letter(k), a)
            )
            for node in chain.nodes:
                name = copy_name(w, k, node)
                if name in domains:
                    raise ReductionError(f"Gadget world name {name} collides with a host")
                worlds.append(name)
                domains[name] = m.domain(w)
                if node in chain.a_nodes and active:
                    interpretation[(name, ctx.target)] = active
            edges.update(
                (copy_name(w, k, u), copy_name(w, k, v)) for u, v in chain.frame.relation
            )
            edges.add((w, copy_name(w, k, chain.root)))

    frame = Frame(tuple(worlds), frozenset(edges))
    kind = TRACK_CLOSURE[ctx.track]
    if kind is not None:
        frame = closure(frame, kind)
    logger.info(
        f"Attached {ctx.track.value} gadgets: {len(m.worlds)} hosts, {len(worlds)} worlds"
    )
    return Model(frame, domains, interpretation, Mode.MODAL)
