"""Finite countermodels for the tiling formulas built from torus tilings."""

import logging

from kripkebench.core.errors import CountermodelVerificationError, TilingError
from kripkebench.core.models import Mode, TilingVariant
from kripkebench.semantics.evaluator import Evaluator
from kripkebench.semantics.frames import World
from kripkebench.semantics.model import Extension, Model, build_model, validate
from kripkebench.tiling.encoding import NAMES, TileAtomNames, encode_tiling
from kripkebench.tiling.tiles import Cell, TileSet, Tiling, check_tiling

logger = logging.getLogger(__name__)

ROOT = "root"


def cell_name(cell: Cell) -> str:
    return f"c{cell[0]}_{cell[1]}"


def cell_world(cell: Cell) -> World:
    return f"u{cell[0]}_{cell[1]}"


def torus_countermodel(
    ts: TileSet,
    tau: Tiling,
    variant: TilingVariant = TilingVariant.INT,
    names: TileAtomNames = NAMES,
) -> Model:
    """
    Build and verify a model refuting the tiling formula at its root.

    The root sees one world per cell, everything is reflexive and the domain
    is the set of cells. Tile letters, H and V are read off the torus
    everywhere; D holds of a cell only at its own world; q is false
    everywhere and p false only at the root.

    Raises:
        TilingError: If tau is not a valid torus tiling of ts
        CountermodelVerificationError: If the model checker rejects the result
    """
    if not tau.torus:
        raise TilingError("A torus tiling is required")
    if not check_tiling(ts, tau):
        raise TilingError("The tiling is not valid for the tile set")

    cells = tau.grid()
    individuals = [cell_name(c) for c in cells]
    worlds = [ROOT] + [cell_world(c) for c in cells]
    relation = {(w, w) for w in worlds} | {(ROOT, cell_world(c)) for c in cells}

    shared: dict[str, Extension] = {
        names.horizontal: frozenset(
            (cell_name(c), cell_name(r)) for c in cells if (r := tau.right_of(c)) is not None
        ),
        names.vertical: frozenset(
            (cell_name(c), cell_name(u)) for c in cells if (u := tau.above(c)) is not None
        ),
    }
    for t in ts:
        shared[names.tile(t.name)] = frozenset(
            (cell_name(c),) for c in cells if tau.cells[c] == t.name
        )

    interpretation: dict[tuple[World, str], Extension] = {}
    for w in worlds:
        for letter, ext in shared.items():
            interpretation[(w, letter)] = ext
    for c in cells:
        interpretation[(cell_world(c), names.marker)] = frozenset({(cell_name(c),)})
        interpretation[(cell_world(c), names.p)] = frozenset({()})

    mode = Mode.VISSER if variant is TilingVariant.VISSER else Mode.INTUITIONISTIC
    m = build_model(worlds, relation, {w: individuals for w in worlds}, interpretation, mode)

    violations = validate(m)
    if violations:
        raise CountermodelVerificationError(f"Countermodel is not a valid model: {violations[0]}")
    encoding = encode_tiling(ts, variant, names)
    ev = Evaluator(m)
    if not ev.sat_at(ROOT, encoding.psi):
        raise CountermodelVerificationError("The tiling axioms fail at the root")
    if ev.sat_at(ROOT, encoding.phi):
        raise CountermodelVerificationError("The tiling formula holds at the root")
    logger.info(f"Verified torus countermodel with {len(worlds)} worlds")
    return m
