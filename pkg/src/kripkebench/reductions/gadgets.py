"""Addressing formulas and chain gadgets for the single-letter modal reduction.

Each source letter P_k is simulated by beta_k, which holds of a at a world
exactly when that world sees the root of an a-suitable chain of level k. The
GL chains serve the K, GL and Grz tracks; the KTB chains the reflexive
symmetric track.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

from kripkebench.core.errors import IndexRangeError, ReductionError
from kripkebench.core.models import ClosureKind, Mode, PowerKind, Track
from kripkebench.logic.formula import (
    And,
    Atom,
    Dia,
    Formula,
    Neg,
    Variable,
    box_plus,
    box_power,
    conj,
)
from kripkebench.reductions.context import ReductionContext
from kripkebench.semantics.frames import Frame, closure
from kripkebench.semantics.model import Individual, Model

logger = logging.getLogger(__name__)

STAR = "*"


def _check_level(k: int, ctx: ReductionContext, name: str = "k") -> None:
    if not 1 <= k <= ctx.n + 1:
        raise IndexRangeError(f"{name} must be in 1..{ctx.n + 1}, got {k}")


# =============================================================================
# GL Track Formulas
# =============================================================================

def delta_gl(m: int, v: Variable, ctx: ReductionContext) -> Formula:
    """P(v) & dia(~P(v) & dia delta_{m-1}(v)), bottoming out in box-plus P(v)."""
    if m < 1:
        raise IndexRangeError(f"m must be at least 1, got {m}")
    p = Atom(ctx.target, (v,))
    inner: Formula = box_plus(p)
    for _ in range(m):
        inner = And(p, Dia(And(Neg(p), Dia(inner))))
    return inner


def alpha_gl(k: int, v: Variable, ctx: ReductionContext) -> Formula:
    _check_level(k, ctx)
    p = Atom(ctx.target, (v,))
    return conj(delta_gl(k, v, ctx), Neg(delta_gl(k + 1, v, ctx)), Dia(box_plus(Neg(p))))


# =============================================================================
# KTB Track Formulas
# =============================================================================

def delta_ktb(i: int, k: int, v: Variable, ctx: ReductionContext) -> Formula:
    """
    The KTB distance formula of index i for level k.

    Raises:
        IndexRangeError: Unless 1 <= i <= k <= n+1
    """
    _check_level(k, ctx)
    if not 1 <= i <= k:
        raise IndexRangeError(f"i must be in 1..{k}, got {i}")
    p = Atom(ctx.target, (v,))
    # innermost level k first, then wrap outward down to i
    result = conj(
        box_power(Neg(p), k, PowerKind.UP_TO),
        box_power(p, k + 1, PowerKind.DIAMOND_EXACT),
        box_power(box_plus(p), k + 2, PowerKind.DIAMOND_EXACT),
    )
    for j in range(k - 1, i - 1, -1):
        result = conj(
            box_power(Neg(p), j, PowerKind.UP_TO),
            box_power(p, j + 1, PowerKind.DIAMOND_EXACT),
            box_power(result, 2 * j + 3, PowerKind.DIAMOND_EXACT),
        )
    return result


def alpha_ktb(k: int, v: Variable, ctx: ReductionContext) -> Formula:
    _check_level(k, ctx)
    p = Atom(ctx.target, (v,))
    return And(p, box_power(delta_ktb(1, k, v, ctx), 2, PowerKind.DIAMOND_EXACT))


def alpha(k: int, v: Variable, ctx: ReductionContext) -> Formula:
    """The track's addressing formula for level k."""
    if ctx.track is Track.KTB:
        return alpha_ktb(k, v, ctx)
    return alpha_gl(k, v, ctx)


def beta(k: int, v: Variable, ctx: ReductionContext) -> Formula:
    """~P(v) & dia alpha_k(v) with the track's alpha."""
    _check_level(k, ctx)
    return And(Neg(Atom(ctx.target, (v,))), Dia(alpha(k, v, ctx)))


# =============================================================================
# Chain Gadgets
# =============================================================================

@dataclass(frozen=True)
class GadgetChain:
    """
    Shape of a level-k gadget: local world names, covering edges and a-worlds.

    Local names are "0", "1", ... with "0" the root; the GL chain adds "*".
    """

    track: Track
    k: int
    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    a_nodes: frozenset[str]
    root: str = "0"

    @property
    def closure_kind(self) -> ClosureKind:
        if self.track is Track.KTB:
            return ClosureKind.REFLEXIVE_SYMMETRIC
        return ClosureKind.TRANSITIVE

    @cached_property
    def frame(self) -> Frame:
        return closure(Frame.of(self.nodes, self.edges), self.closure_kind)


def gl_chain(k: int) -> GadgetChain:
    """Worlds 0..2k in a chain plus 0 -> *, with a at the even worlds."""
    if k < 1:
        raise IndexRangeError(f"k must be at least 1, got {k}")
    nodes = tuple(str(i) for i in range(2 * k + 1)) + (STAR,)
    edges = tuple((str(i), str(i + 1)) for i in range(2 * k)) + (("0", STAR),)
    a_nodes = frozenset(str(i) for i in range(0, 2 * k + 1, 2))
    return GadgetChain(Track.GL, k, nodes, edges, a_nodes)


def ktb_chain(k: int) -> GadgetChain:
    """
    Root a-world, then for i = 1..k a block of 2i+1 other worlds, each block but
    the last followed by one a-world, ending with three a-worlds.
    """
    if k < 1:
        raise IndexRangeError(f"k must be at least 1, got {k}")
    pattern = [True]
    for i in range(1, k + 1):
        pattern.extend([False] * (2 * i + 1))
        if i < k:
            pattern.append(True)
    pattern.extend([True] * 3)
    nodes = tuple(str(i) for i in range(len(pattern)))
    edges = tuple((str(i), str(i + 1)) for i in range(len(pattern) - 1))
    a_nodes = frozenset(str(i) for i, is_a in enumerate(pattern) if is_a)
    return GadgetChain(Track.KTB, k, nodes, edges, a_nodes)


def chain_for(k: int, track: Track) -> GadgetChain:
    return ktb_chain(k) if track is Track.KTB else gl_chain(k)


def build_gadget(
    k: int,
    track: Track,
    a: Individual,
    domain: set[Individual] | frozenset[Individual],
    target: str = "P",
    reflexive: bool = False,
) -> Model:
    """
    Build the a-suitable level-k gadget model with constant domain.

    Args:
        k: Level, k >= 1
        track: KTB selects the symmetric chain; every other track the GL chain
        a: Pivot individual
        domain: Constant domain containing a
        target: The single letter
        reflexive: Replace the relation by its reflexive closure

    Returns:
        Modal model where target holds of a exactly at the a-worlds

    Raises:
        ReductionError: If a is not in domain
    """
    if a not in domain:
        raise ReductionError(f"Pivot {a} is not in the domain {sorted(domain)}")
    chain = chain_for(k, track)
    frame = chain.frame
    if reflexive:
        frame = closure(frame, ClosureKind.REFLEXIVE)
    shared = frozenset(domain)
    interpretation = {(w, target): frozenset({(a,)}) for w in sorted(chain.a_nodes)}
    logger.info(f"Built {track.value} gadget k={k} with {len(frame.worlds)} worlds")
    return Model(
        frame=frame,
        domains={w: shared for w in frame.worlds},
        interpretation=interpretation,
        mode=Mode.MODAL,
    )
