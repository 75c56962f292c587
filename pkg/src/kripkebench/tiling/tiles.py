"""Tile sets, finite tilings and periodic tiling search."""

import logging
import re
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property
from itertools import product

from kripkebench.config import settings
from kripkebench.core.errors import (
    EmptyTileSetError,
    SearchBudgetExceeded,
    TilingError,
    UnknownTileError,
)
from kripkebench.core.models import TileDocument, TileSetDocument, TilingDocument

logger = logging.getLogger(__name__)

Cell = tuple[int, int]

_NAME = re.compile(r"^[A-Za-z0-9_]+$")


@dataclass(frozen=True)
class Tile:
    """A tile type: four edge colours."""

    name: str
    left: str
    right: str
    up: str
    down: str


@dataclass(frozen=True)
class TileSet:
    """A finite set of tile types with distinct names."""

    tiles: tuple[Tile, ...]

    def __post_init__(self) -> None:
        names = [t.name for t in self.tiles]
        if len(set(names)) != len(names):
            raise TilingError(f"Tile names repeat: {names}")
        bad = [name for name in names if not _NAME.match(name)]
        if bad:
            raise TilingError(f"Tile names must be letters, digits or underscores: {bad}")

    @cached_property
    def by_name(self) -> dict[str, Tile]:
        return {t.name: t for t in self.tiles}

    def __len__(self) -> int:
        return len(self.tiles)

    def __iter__(self) -> Iterator[Tile]:
        return iter(self.tiles)

    def tile(self, name: str, cell: Cell = (-1, -1)) -> Tile:
        try:
            return self.by_name[name]
        except KeyError:
            raise UnknownTileError(cell, name) from None

    @classmethod
    def from_document(cls, doc: TileSetDocument) -> "TileSet":
        return cls(tuple(Tile(**t.model_dump()) for t in doc.tiles))

    @classmethod
    def from_json(cls, text: str) -> "TileSet":
        return cls.from_document(TileSetDocument.model_validate_json(text))

    def to_document(self) -> TileSetDocument:
        return TileSetDocument(tiles=[TileDocument(**vars(t)) for t in self.tiles])


@dataclass(frozen=True)
class Tiling:
    """Tile names on a width x height grid; cells[(i, j)] is column i, row j."""

    width: int
    height: int
    cells: Mapping[Cell, str]
    torus: bool = True

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise TilingError(f"Grid must be positive, got {self.width}x{self.height}")
        missing = [c for c in self.grid() if c not in self.cells]
        if missing:
            raise TilingError(f"Tiling is not total; missing cells {missing[:5]}")

    def grid(self) -> list[Cell]:
        """Cells in row-major order."""
        return [(i, j) for j in range(self.height) for i in range(self.width)]

    def right_of(self, cell: Cell) -> Cell | None:
        i, j = cell
        if i + 1 < self.width:
            return i + 1, j
        return (0, j) if self.torus else None

    def above(self, cell: Cell) -> Cell | None:
        i, j = cell
        if j + 1 < self.height:
            return i, j + 1
        return (i, 0) if self.torus else None

    @classmethod
    def from_document(cls, doc: TilingDocument) -> "Tiling":
        if len(doc.rows) != doc.height or any(len(row) != doc.width for row in doc.rows):
            raise TilingError(f"Rows do not form a {doc.width}x{doc.height} grid")
        cells = {(i, j): name for j, row in enumerate(doc.rows) for i, name in enumerate(row)}
        return cls(doc.width, doc.height, cells, doc.torus)

    @classmethod
    def from_json(cls, text: str) -> "Tiling":
        return cls.from_document(TilingDocument.model_validate_json(text))

    def to_document(self) -> TilingDocument:
        rows = [[self.cells[(i, j)] for i in range(self.width)] for j in range(self.height)]
        return TilingDocument(width=self.width, height=self.height, torus=self.torus, rows=rows)


def check_tiling(ts: TileSet, tau: Tiling) -> bool:
    """
    Check both adjacency families, wrapping around iff tau is a torus.

    Raises:
        UnknownTileError: If a cell names a tile outside ts
    """
    for cell in tau.grid():
        ts.tile(tau.cells[cell], cell)
    for cell in tau.grid():
        here = ts.by_name[tau.cells[cell]]
        right = tau.right_of(cell)
        if right is not None and here.right != ts.by_name[tau.cells[right]].left:
            logger.debug(f"Horizontal mismatch at {cell}")
            return False
        up = tau.above(cell)
        if up is not None and here.up != ts.by_name[tau.cells[up]].down:
            logger.debug(f"Vertical mismatch at {cell}")
            return False
    return True


def unfold(tau: Tiling, times_x: int = 3, times_y: int = 3) -> Tiling:
    """Repeat a torus tiling into a larger grid without wraparound."""
    cells = {
        (i, j): tau.cells[(i % tau.width, j % tau.height)]
        for i, j in product(range(tau.width * times_x), range(tau.height * times_y))
    }
    return Tiling(tau.width * times_x, tau.height * times_y, cells, torus=False)


def find_periodic_tiling(
    ts: TileSet,
    width: int,
    height: int,
    budget: int | None = None,
) -> Tiling | None:
    """
    Find the lexicographically first torus tiling of the given period.

    Cells are filled in row-major order with tiles in tile-set order; a
    placement that already clashes with a filled neighbour is abandoned.

    Args:
        ts: Tile set
        width: Torus width
        height: Torus height
        budget: Maximum number of placements tried (default from settings)

    Returns:
        A valid torus tiling, or None if none exists at this period

    Raises:
        EmptyTileSetError: If ts has no tiles
        SearchBudgetExceeded: If the budget runs out before a verdict
    """
    if not ts.tiles:
        raise EmptyTileSetError("Cannot tile with an empty tile set")
    if width < 1 or height < 1:
        raise TilingError(f"Period must be positive, got {width}x{height}")
    limit = settings.tiling_budget if budget is None else budget
    order = [(i, j) for j in range(height) for i in range(width)]
    placed: dict[Cell, Tile] = {}
    tried = 0

    def fits(cell: Cell, tile: Tile) -> bool:
        i, j = cell

        # a neighbour may be the cell itself on a period of 1
        def at(c: Cell) -> Tile | None:
            return tile if c == cell else placed.get(c)

        left = at(((i - 1) % width, j))
        if left is not None and left.right != tile.left:
            return False
        below = at((i, (j - 1) % height))
        if below is not None and below.up != tile.down:
            return False
        right = at(((i + 1) % width, j))
        if right is not None and tile.right != right.left:
            return False
        above = at((i, (j + 1) % height))
        return above is None or tile.up == above.down

    def extend(k: int) -> bool:
        nonlocal tried
        if k == len(order):
            return True
        cell = order[k]
        for tile in ts.tiles:
            tried += 1
            if tried > limit:
                raise SearchBudgetExceeded(limit, tried)
            if fits(cell, tile):
                placed[cell] = tile
                if extend(k + 1):
                    return True
                del placed[cell]
        return False

    found = extend(0)
    logger.info(f"Periodic tiling search {width}x{height}: {tried} placements, found={found}")
    if not found:
        return None
    tau = Tiling(width, height, {c: t.name for c, t in placed.items()}, torus=True)
    if not check_tiling(ts, tau):
        raise TilingError("Search returned a tiling that fails its own check")
    return tau
