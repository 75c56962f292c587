"""The level frame for single-letter intuitionistic reductions.

Worlds are arranged in levels below three top worlds d1, d2, d3. Each level
formula fails, for the pivot individual, exactly at the worlds that see its
namesake world. Level k+1 has one a-world and one b-world per pair (i, j) of
level-k indices in 2..n_k, numbered lexicographically.
"""

import logging
from dataclasses import dataclass
from functools import cache, cached_property

from kripkebench.core.errors import IndexRangeError, ReductionError
from kripkebench.core.models import ClosureKind, FrameVariant, Mode
from kripkebench.logic.formula import (
    Atom,
    Exists,
    Forall,
    Formula,
    Imp,
    Variable,
    conj,
    disj,
)
from kripkebench.semantics.frames import Frame, World, closure
from kripkebench.semantics.model import Individual, Model

logger = logging.getLogger(__name__)

DOUBLE_MARK = "'"


@cache
def level_width(k: int) -> int:
    """Number of a-worlds (equally b-worlds) on level k."""
    if k < 0:
        raise IndexRangeError(f"Level must be non-negative, got {k}")
    if k == 0:
        return 2
    if k == 1:
        return 3
    return (level_width(k - 1) - 1) ** 2


def pair_for(m: int, k: int) -> tuple[int, int]:
    """The pair (i, j) of level-k indices behind index m on level k+1."""
    base = level_width(k) - 1
    if not 1 <= m <= base * base:
        raise IndexRangeError(f"Index {m} out of range for level {k + 1}")
    return 2 + (m - 1) // base, 2 + (m - 1) % base


@dataclass(frozen=True)
class LevelIndex:
    """A world or formula position: level None is the top level."""

    level: int | None
    kind: str
    index: int

    def __post_init__(self) -> None:
        if self.level is None:
            if self.kind != "d" or not 1 <= self.index <= 3:
                raise IndexRangeError(f"Top level admits d1..d3, got {self.kind}{self.index}")
            return
        if self.kind not in ("a", "b"):
            raise IndexRangeError(f"Level {self.level} admits kinds a and b, got {self.kind}")
        if not 1 <= self.index <= level_width(self.level):
            raise IndexRangeError(
                f"Level {self.level} admits indices 1..{level_width(self.level)}, "
                f"got {self.index}"
            )

    @property
    def world(self) -> World:
        if self.level is None:
            return f"d{self.index}"
        return f"{self.kind}{self.level}_{self.index}"

    @classmethod
    def a(cls, level: int, index: int) -> "LevelIndex":
        return cls(level, "a", index)

    @classmethod
    def b(cls, level: int, index: int) -> "LevelIndex":
        return cls(level, "b", index)

    @classmethod
    def d(cls, index: int) -> "LevelIndex":
        return cls(None, "d", index)

    @classmethod
    def parse(cls, name: str) -> "LevelIndex":
        """Inverse of world, e.g. "a2_3" or "d1"."""
        if name.startswith("d"):
            return cls.d(int(name[1:]))
        level, index = name[1:].split("_")
        return cls(int(level), name[0], int(index))


# =============================================================================
# Frame
# =============================================================================

def covering_edges(idx: LevelIndex) -> list[LevelIndex]:
    """Immediate successors of a world before closure."""
    if idx.level is None:
        return []
    k, kind, m = idx.level, idx.kind, idx.index
    if k == 0:
        return {
            ("a", 1): [LevelIndex.d(1), LevelIndex.d(3)],
            ("a", 2): [LevelIndex.d(1), LevelIndex.d(2)],
            ("b", 1): [LevelIndex.d(2), LevelIndex.d(3)],
            ("b", 2): [LevelIndex.d(1), LevelIndex.d(2), LevelIndex.d(3)],
        }[(kind, m)]
    if k == 1:
        a0, b0 = LevelIndex.a, LevelIndex.b
        return {
            ("a", 1): [b0(0, 1), b0(0, 2)],
            ("a", 2): [a0(0, 2), b0(0, 2)],
            ("a", 3): [a0(0, 2), b0(0, 1)],
            ("b", 1): [a0(0, 1), b0(0, 2)],
            ("b", 2): [a0(0, 1), b0(0, 1)],
            ("b", 3): [a0(0, 1), a0(0, 2)],
        }[(kind, m)]
    i, j = pair_for(m, k - 1)
    first = LevelIndex.b(k - 1, 1) if kind == "a" else LevelIndex.a(k - 1, 1)
    return [first, LevelIndex.a(k - 1, i), LevelIndex.b(k - 1, j)]


def level_indices(depth: int) -> list[LevelIndex]:
    """Every position from the top down to the given level."""
    found = [LevelIndex.d(i) for i in (1, 2, 3)]
    for k in range(depth + 1):
        found.extend(LevelIndex.a(k, m) for m in range(1, level_width(k) + 1))
        found.extend(LevelIndex.b(k, m) for m in range(1, level_width(k) + 1))
    return found


def double(world: World) -> World:
    return world + DOUBLE_MARK


@dataclass(frozen=True)
class FrameF:
    """A truncation of the level frame, closed for its variant."""

    depth: int
    variant: FrameVariant
    frame: Frame
    originals: tuple[World, ...]

    @cached_property
    def doubles(self) -> dict[World, World]:
        """Original world -> its double (qfl variant only)."""
        if self.variant is FrameVariant.INT:
            return {}
        return {w: double(w) for w in self.originals if double(w) in set(self.frame.worlds)}

    def bottom(self) -> list[LevelIndex]:
        """The deepest level's positions."""
        indices = (LevelIndex.parse(w) for w in self.originals)
        return [idx for idx in indices if idx.level == self.depth]


def build_frame_f(depth: int, variant: FrameVariant = FrameVariant.INT) -> FrameF:
    """
    Build the level frame truncated at the given depth.

    The int variant is reflexively and transitively closed. The qfl variant
    gives every a/b world and d2, d3 a double t' with t -> t', copies each
    a/b world's covering edges onto its double, and is transitively closed
    with no reflexive loops.

    Raises:
        IndexRangeError: If depth < 1
    """
    if depth < 1:
        raise IndexRangeError(f"Depth must be at least 1, got {depth}")
    indices = level_indices(depth)
    originals = tuple(idx.world for idx in indices)
    edges = {(idx.world, succ.world) for idx in indices for succ in covering_edges(idx)}

    if variant is FrameVariant.INT:
        frame = closure(Frame.of(originals, edges), ClosureKind.REFLEXIVE_TRANSITIVE)
    else:
        doubled = [w for w in originals if w not in ("d1",)]
        worlds = list(originals) + [double(w) for w in doubled]
        for idx in indices:
            if idx.level is None:
                continue
            edges.update((double(idx.world), succ.world) for succ in covering_edges(idx))
        edges.update((w, double(w)) for w in doubled)
        frame = closure(Frame.of(worlds, edges), ClosureKind.TRANSITIVE)

    logger.info(f"Built {variant.value} frame F at depth {depth}: {len(frame.worlds)} worlds")
    return FrameF(depth, variant, frame, originals)


def a_suitable_f(
    fr: FrameF,
    domain: set[Individual] | frozenset[Individual],
    a: Individual,
    b: Individual,
    target: str = "P",
) -> Model:
    """
    Interpret the single letter on the level frame for pivot a and helper b.

    P is Z minus a at d2, {a, b} at d3, {b} at b0_1 and empty elsewhere;
    doubles copy their original.

    Raises:
        ReductionError: If |Z| < 3, a == b, or a or b is outside Z
    """
    if len(domain) < 3:
        raise ReductionError(f"Domain needs at least three individuals, got {len(domain)}")
    if a == b:
        raise ReductionError(f"Pivot and helper must differ, both are {a}")
    if a not in domain or b not in domain:
        raise ReductionError(f"Pivot {a} and helper {b} must belong to the domain")

    shared = frozenset(domain)
    base: dict[World, frozenset[tuple[Individual, ...]]] = {
        "d2": frozenset((c,) for c in shared if c != a),
        "d3": frozenset({(a,), (b,)}),
        "b0_1": frozenset({(b,)}),
    }
    interpretation = {}
    for world, ext in base.items():
        interpretation[(world, target)] = ext
        if world in fr.doubles:
            interpretation[(fr.doubles[world], target)] = ext
    mode = Mode.INTUITIONISTIC if fr.variant is FrameVariant.INT else Mode.VISSER
    return Model(
        frame=fr.frame,
        domains={w: shared for w in fr.frame.worlds},
        interpretation=interpretation,
        mode=mode,
    )


# =============================================================================
# Level Formulas
# =============================================================================

@cache
def level_formula(idx: LevelIndex, v: Variable = "x", target: str = "P") -> Formula:
    """
    The formula that fails exactly where idx's world is seen.

    Results are cached, so formulas of deeper levels share their subformulas.
    """
    p = Atom(target, (v,))

    def f(level: int | None, kind: str, index: int) -> Formula:
        return level_formula(LevelIndex(level, kind, index), v, target)

    def d(i: int) -> Formula:
        return f(None, "d", i)

    def a(k: int, i: int) -> Formula:
        return f(k, "a", i)

    def b(k: int, i: int) -> Formula:
        return f(k, "b", i)

    k, kind, m = idx.level, idx.kind, idx.index
    if k is None:
        if m == 1:
            return Exists(v, p)
        if m == 2:
            return Imp(Exists(v, p), p)
        return Imp(p, Forall(v, p))

    if k == 0:
        table = {
            ("a", 1): lambda: Imp(d(2), disj(d(1), d(3))),
            ("a", 2): lambda: Imp(d(3), disj(d(1), d(2))),
            ("b", 1): lambda: Imp(d(1), disj(d(2), d(3))),
            ("b", 2): lambda: Imp(conj(a(0, 1), a(0, 2), b(0, 1)), disj(d(1), d(2), d(3))),
        }
        return table[(kind, m)]()

    if k == 1:
        table = {
            ("a", 1): lambda: Imp(conj(a(0, 1), a(0, 2)), disj(b(0, 1), b(0, 2))),
            ("a", 2): lambda: Imp(conj(a(0, 1), b(0, 1)), disj(a(0, 2), b(0, 2))),
            ("a", 3): lambda: Imp(conj(a(0, 1), b(0, 2)), disj(a(0, 2), b(0, 1))),
            ("b", 1): lambda: Imp(conj(a(0, 2), b(0, 1)), disj(a(0, 1), b(0, 2))),
            ("b", 2): lambda: Imp(conj(a(0, 2), b(0, 2)), disj(a(0, 1), b(0, 1))),
            ("b", 3): lambda: Imp(conj(b(0, 1), b(0, 2)), disj(a(0, 1), a(0, 2))),
        }
        return table[(kind, m)]()

    i, j = pair_for(m, k - 1)
    if kind == "a":
        return Imp(a(k - 1, 1), disj(b(k - 1, 1), a(k - 1, i), b(k - 1, j)))
    return Imp(b(k - 1, 1), disj(a(k - 1, 1), a(k - 1, i), b(k - 1, j)))
