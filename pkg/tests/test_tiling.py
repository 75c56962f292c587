"""Tests for tile sets, tiling search, the tiling formula and torus countermodels."""

import pytest

from kripkebench.core.errors import (
    EmptyTileSetError,
    SearchBudgetExceeded,
    TilingError,
    UnknownTileError,
)
from kripkebench.core.models import Mode, TilingVariant
from kripkebench.logic.analysis import shape
from kripkebench.semantics.evaluator import Evaluator
from kripkebench.semantics.model import validate
from kripkebench.suites.corpus import tileable_sets, untileable_sets
from kripkebench.tiling.countermodel import ROOT, torus_countermodel
from kripkebench.tiling.encoding import encode_tiling
from kripkebench.tiling.tiles import (
    Tile,
    TileSet,
    Tiling,
    check_tiling,
    find_periodic_tiling,
    unfold,
)

TILE_SETS = dict(tileable_sets() + untileable_sets())


def _grid(rows: list[list[str]], torus: bool = True) -> Tiling:
    cells = {(i, j): name for j, row in enumerate(rows) for i, name in enumerate(row)}
    return Tiling(len(rows[0]), len(rows), cells, torus)


class TestTileSet:
    """Tests for tile sets and their JSON form."""

    def test_from_json(self, uniform_tileset_json):
        """Test a tile set is read from JSON."""
        ts = TileSet.from_json(uniform_tileset_json)
        assert len(ts) == 1
        assert ts.tile("u").right == "0"

    def test_duplicate_names(self):
        """Test tile names are unique."""
        t = Tile("t", "0", "0", "0", "0")
        with pytest.raises(TilingError):
            TileSet((t, t))

    def test_bad_names(self):
        """Test tile names must be usable in letter names."""
        with pytest.raises(TilingError):
            TileSet((Tile("a-b", "0", "0", "0", "0"),))

    def test_unknown_tile(self):
        """Test looking up a missing tile."""
        with pytest.raises(UnknownTileError) as exc:
            TILE_SETS["uniform"].tile("zz", (1, 2))
        assert exc.value.cell == (1, 2)


class TestTilingCheck:
    """Tests for checking finite and torus tilings."""

    def test_checkerboard(self):
        """Test a 2x2 checkerboard torus."""
        ts = TILE_SETS["checkerboard"]
        assert check_tiling(ts, _grid([["b", "w"], ["w", "b"]]))
        assert not check_tiling(ts, _grid([["b", "b"], ["w", "w"]]))

    def test_wraparound_only_on_torus(self):
        """Test a plain grid does not wrap around."""
        ts = TILE_SETS["no-horizontal"]
        assert not check_tiling(ts, _grid([["t"]]))
        assert check_tiling(ts, _grid([["t"]], torus=False))

    def test_unknown_cell(self):
        """Test a cell naming a missing tile raises."""
        with pytest.raises(UnknownTileError):
            check_tiling(TILE_SETS["uniform"], _grid([["x"]]))

    def test_partial_grid(self):
        """Test tilings must be total."""
        with pytest.raises(TilingError):
            Tiling(2, 1, {(0, 0): "u"})

    def test_unfold(self):
        """Test unfolding a torus keeps it valid."""
        tau = _grid([["b", "w"], ["w", "b"]])
        big = unfold(tau)
        assert (big.width, big.height, big.torus) == (6, 6, False)
        assert check_tiling(TILE_SETS["checkerboard"], big)

    def test_json(self):
        """Test a tiling document."""
        tau = Tiling.from_json('{"width": 2, "height": 1, "rows": [["s1", "s2"]]}')
        assert tau.cells[(1, 0)] == "s2"
        assert check_tiling(TILE_SETS["stripes"], tau)
        with pytest.raises(TilingError):
            Tiling.from_json('{"width": 3, "height": 1, "rows": [["s1", "s2"]]}')


class TestPeriodicSearch:
    """Tests for torus tiling search."""

    @pytest.mark.parametrize(
        "name,period",
        [("uniform", (1, 1)), ("checkerboard", (2, 2)), ("stripes", (2, 1))],
    )
    def test_finds_tiling(self, name, period):
        """Test each tileable set has a tiling at its period."""
        tau = find_periodic_tiling(TILE_SETS[name], *period)
        assert tau is not None
        assert check_tiling(TILE_SETS[name], tau)

    def test_first_in_order(self):
        """Test the lexicographically first tiling is returned."""
        tau = find_periodic_tiling(TILE_SETS["checkerboard"], 2, 2)
        assert tau is not None
        assert tau.cells[(0, 0)] == "b"

    def test_wrong_period(self):
        """Test the checkerboard has no 1x1 torus."""
        assert find_periodic_tiling(TILE_SETS["checkerboard"], 1, 1) is None

    @pytest.mark.parametrize("name", ["no-horizontal", "no-vertical"])
    def test_untileable(self, name):
        """Test untileable sets have no small torus."""
        for w, h in [(1, 1), (2, 2), (3, 2)]:
            assert find_periodic_tiling(TILE_SETS[name], w, h) is None

    def test_empty_set(self):
        """Test the empty tile set raises."""
        with pytest.raises(EmptyTileSetError):
            find_periodic_tiling(TileSet(()), 1, 1)

    def test_budget(self):
        """Test the placement budget."""
        with pytest.raises(SearchBudgetExceeded) as exc:
            find_periodic_tiling(TILE_SETS["no-vertical"], 3, 3, budget=5)
        assert exc.value.budget == 5


class TestEncoding:
    """Tests for the tiling formula."""

    def test_parts(self):
        """Test empty families are omitted."""
        enc = encode_tiling(TILE_SETS["uniform"])
        assert "horizontal-match" not in enc.parts
        assert "vertical-match" not in enc.parts
        assert "horizontal-decided" not in enc.parts
        assert {"one-tile", "successors", "vertical-decided", "commute"} <= set(enc.parts)

    def test_visser_adds_decidability(self):
        """Test the visser variant decides H too."""
        enc = encode_tiling(TILE_SETS["checkerboard"], TilingVariant.VISSER)
        assert "horizontal-decided" in enc.parts
        assert "horizontal-match" in enc.parts

    @pytest.mark.parametrize("variant", list(TilingVariant))
    def test_shape(self, variant):
        """Test the formula is positive and uses two variables."""
        s = shape(encode_tiling(TILE_SETS["stripes"], variant).phi)
        assert s.positive
        assert s.variables == {"x", "y"}
        assert {"H", "V", "D", "p", "q", "P_s1", "P_s2", "P_s3"} == s.letters

    def test_empty_set(self):
        """Test the empty tile set raises."""
        with pytest.raises(EmptyTileSetError):
            encode_tiling(TileSet(()))


class TestTorusCountermodel:
    """Tests for countermodels built from torus tilings."""

    @pytest.mark.parametrize("variant", list(TilingVariant))
    def test_refutes_formula(self, variant):
        """Test the countermodel satisfies every axiom but refutes the formula."""
        ts = TILE_SETS["checkerboard"]
        tau = find_periodic_tiling(ts, 2, 2)
        assert tau is not None
        m = torus_countermodel(ts, tau, variant)
        assert validate(m) == []
        assert m.mode is (Mode.VISSER if variant is TilingVariant.VISSER else Mode.INTUITIONISTIC)
        enc = encode_tiling(ts, variant)
        ev = Evaluator(m)
        assert all(ev.sat_at(ROOT, part) for part in enc.parts.values())
        assert not ev.sat_at(ROOT, enc.phi)

    def test_needs_torus(self):
        """Test plain grids are refused."""
        tau = _grid([["u"]], torus=False)
        with pytest.raises(TilingError):
            torus_countermodel(TILE_SETS["uniform"], tau)

    def test_needs_valid_tiling(self):
        """Test an invalid tiling is refused."""
        with pytest.raises(TilingError):
            torus_countermodel(TILE_SETS["checkerboard"], _grid([["b", "b"], ["b", "b"]]))
