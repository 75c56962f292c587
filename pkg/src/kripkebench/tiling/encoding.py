"""Positive two-variable intuitionistic formulas describing tilings of the grid."""

import logging
from dataclasses import dataclass

from kripkebench.core.errors import EmptyTileSetError
from kripkebench.core.models import TilingVariant
from kripkebench.logic.formula import (
    TOP,
    And,
    Atom,
    Exists,
    Forall,
    Formula,
    Imp,
    Or,
    conj,
    disj,
)
from kripkebench.tiling.tiles import TileSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TileAtomNames:
    """Letters used by the tiling encoding."""

    horizontal: str = "H"
    vertical: str = "V"
    marker: str = "D"
    p: str = "p"
    q: str = "q"
    tile_prefix: str = "P_"

    def tile(self, name: str) -> str:
        return f"{self.tile_prefix}{name}"


NAMES = TileAtomNames()


def box(f: Formula) -> Formula:
    """Intuitionistic box: top -> f."""
    return Imp(TOP, f)


def box_n(f: Formula, n: int) -> Formula:
    for _ in range(n):
        f = box(f)
    return f


@dataclass(frozen=True)
class TilingEncoding:
    """The antecedent psi, the whole formula phi and the conjuncts of psi by label."""

    psi: Formula
    phi: Formula
    parts: dict[str, Formula]


def encode_tiling(
    ts: TileSet,
    variant: TilingVariant = TilingVariant.INT,
    names: TileAtomNames = NAMES,
) -> TilingEncoding:
    """
    Encode "ts tiles the grid" as the failure of a positive formula.

    Args:
        ts: Nonempty tile set
        variant: int, or visser which adds the H-decidability conjunct and
            boxes the conclusion
        names: Letters to use

    Returns:
        TilingEncoding; empty conjunction families are omitted from psi

    Raises:
        EmptyTileSetError: If ts has no tiles
    """
    if not ts.tiles:
        raise EmptyTileSetError("Cannot encode an empty tile set")

    x, y = "x", "y"
    q = Atom(names.q, ())
    p = Atom(names.p, ())

    def h(u: str, v: str) -> Atom:
        return Atom(names.horizontal, (u, v))

    def v_(u: str, v: str) -> Atom:
        return Atom(names.vertical, (u, v))

    def tile(name: str, u: str) -> Atom:
        return Atom(names.tile(name), (u,))

    def d(u: str) -> Atom:
        return Atom(names.marker, (u,))

    def forall_xy(body: Formula) -> Formula:
        return Forall(x, Forall(y, body))

    parts: dict[str, Formula] = {}

    parts["one-tile"] = Forall(x, disj(*(
        conj(tile(t.name, x), *(Imp(tile(o.name, x), q) for o in ts if o.name != t.name))
        for t in ts
    )))

    horizontal = [
        forall_xy(Imp(conj(h(x, y), tile(t.name, x), tile(o.name, y)), q))
        for t in ts for o in ts if t.right != o.left
    ]
    if horizontal:
        parts["horizontal-match"] = conj(*horizontal)

    vertical = [
        forall_xy(Imp(conj(v_(x, y), tile(t.name, x), tile(o.name, y)), q))
        for t in ts for o in ts if t.up != o.down
    ]
    if vertical:
        parts["vertical-match"] = conj(*vertical)

    parts["successors"] = And(Forall(x, Exists(y, h(x, y))), Forall(x, Exists(y, v_(x, y))))
    parts["vertical-decided"] = forall_xy(Or(v_(x, y), Imp(v_(x, y), q)))
    parts["commute"] = forall_xy(Imp(
        And(v_(x, y), Exists(x, And(d(x), h(y, x)))),
        Forall(y, Imp(h(x, y), Forall(x, Imp(d(x), v_(y, x))))),
    ))

    if variant is TilingVariant.VISSER:
        parts["horizontal-decided"] = forall_xy(Or(h(x, y), Imp(h(x, y), q)))
        psi = conj(*parts.values())
        conclusion = Imp(Imp(Exists(x, Imp(d(x), box_n(q, 5))), p), box(p))
    else:
        psi = conj(*parts.values())
        conclusion = Imp(Imp(Exists(x, Imp(d(x), q)), p), p)

    logger.info(f"Encoded {len(ts)} tiles ({variant.value}): {len(parts)} conjuncts")
    return TilingEncoding(psi=psi, phi=Imp(psi, conclusion), parts=parts)
