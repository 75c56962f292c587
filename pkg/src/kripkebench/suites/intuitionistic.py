"""Suites for the intuitionistic reductions and the Gödel translation."""

import hashlib
import logging
import operator
import random
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from functools import partial
from itertools import product
from typing import ClassVar

from kripkebench.config import settings
from kripkebench.core.errors import KripkeBenchError
from kripkebench.core.models import (
    AtomClause,
    FrameProperty,
    FrameVariant,
    Mode,
    MstarVariant,
    SearchBounds,
)
from kripkebench.logic.formula import BOT, And, Atom, Exists, Forall, Formula, Imp, Neg, Or
from kripkebench.reductions.frame_f import (
    FrameF,
    a_suitable_f,
    build_frame_f,
    level_formula,
    level_indices,
)
from kripkebench.reductions.godel import godel_translate
from kripkebench.reductions.intuitionistic import (
    BinaryNames,
    alpha_int,
    build_mstar_int,
    eliminate_binary,
    read_back_binary,
    resolve_depth,
    simulate_binary,
    source_letters,
    star_subst_int,
    witness_eliminate_binary,
)
from kripkebench.search.oracle import enumerate_models
from kripkebench.semantics.evaluator import Evaluator
from kripkebench.semantics.frames import World, missing_properties
from kripkebench.semantics.model import Individual, Model, validate
from kripkebench.suites.base import Suite, SuiteRecorder
from kripkebench.suites.corpus import binary_countermodels, int_countermodels

logger = logging.getLogger(__name__)

PIVOT = "a"
HELPER = "b"
FRAME_DOMAIN = frozenset({"a", "b", "c"})


# =============================================================================
# Level Frame
# =============================================================================

class FrameFSuite(Suite):
    """Each level formula fails for the pivot exactly where its world is seen."""

    name = "frame-f"
    description = "Level formulas fail exactly at the worlds seeing their namesake"
    defaults: ClassVar[dict[str, int]] = {"n": settings.suite_depth}
    variant: ClassVar[FrameVariant] = FrameVariant.INT

    def fails_at(self, fr: FrameF, w: World, t: World) -> bool:
        return fr.frame.sees(w, t)

    def run(self, rec: SuiteRecorder, params: Mapping[str, int]) -> None:
        fr = build_frame_f(params["n"], self.variant)
        m = a_suitable_f(fr, FRAME_DOMAIN, PIVOT, HELPER)
        violations = validate(m)
        rec.check("valid", not violations, f"frame model is invalid: {violations[:3]}")
        ev = Evaluator(m)
        for idx in level_indices(params["n"]):
            formula = level_formula(idx, "x")
            for w in fr.originals:
                expected = self.fails_at(fr, w, idx.world)
                rec.check(
                    f"{idx.world}/{w}",
                    (not ev.eval(w, {"x": PIVOT}, formula)) == expected,
                    f"level formula {idx.world} should {'fail' if expected else 'hold'}",
                    world=w,
                    assignment={"x": PIVOT},
                )


class FrameFQflSuite(FrameFSuite):
    """The doubled, irreflexive frame under the visser reading."""

    name = "frame-f-qfl"
    description = "Level formulas on the doubled frame under the block reading"
    variant = FrameVariant.QFL

    def fails_at(self, fr: FrameF, w: World, t: World) -> bool:
        if t == "d3":
            return fr.frame.sees(w, t) and w != t
        return w == t or fr.frame.sees(w, t)


# =============================================================================
# Single-Letter Models
# =============================================================================

class MainIntSuite(Suite):
    """The single-letter model refutes the substituted formula and bridges every letter."""

    defaults: ClassVar[dict[str, int]] = {"depth": 2}
    variant: ClassVar[MstarVariant] = MstarVariant.INT
    frame_property: ClassVar[FrameProperty | None] = None

    @property
    def name(self) -> str:
        prefix = "qint" if self.variant is MstarVariant.INT else self.variant.value
        return f"{prefix}-main"

    @property
    def description(self) -> str:
        return f"{self.variant.value} single-letter models refute every corpus formula"

    def run(self, rec: SuiteRecorder, params: Mapping[str, int]) -> None:
        n = 2
        level = resolve_depth(n, params["depth"])
        mode = Mode.VISSER if self.variant is MstarVariant.QFL else Mode.INTUITIONISTIC
        alphas = {i: alpha_int(i, level, "x") for i in range(1, n + 1)}
        letters = source_letters(n)
        for case in int_countermodels(mode):
            m = case.model
            rec.check(
                f"{case.name}/source",
                not Evaluator(m).sat_at(case.world, case.formula),
                "corpus formula should fail at w0",
                world=case.world,
                formula=case.formula,
            )
            try:
                starred = star_subst_int(case.formula, n, depth=level)
                m_star = build_mstar_int(m, n, self.variant, depth=level)
            except KripkeBenchError as e:
                rec.guard(f"{case.name}/build", e)
                continue
            ev = Evaluator(m_star)
            rec.check(
                f"{case.name}/refuted",
                not ev.sat_at(case.world, starred),
                "substituted formula should fail at w0",
                world=case.world,
                formula=case.formula,
            )
            if self.frame_property is not None:
                rec.check(
                    f"{case.name}/{self.frame_property.value}",
                    not missing_properties(m_star.frame, [self.frame_property]),
                    f"frame is not {self.frame_property.value}",
                )
            hosts = set(m.worlds)
            appended: set[World] = set()
            for w in m.worlds:
                appended.update(u for u in m_star.successors(w) if u not in hosts)
                for a in sorted(m.domain(w)):
                    for i, letter in zip(alphas, letters, strict=True):
                        expected = m.holds(w, letter, a)
                        rec.check(
                            f"{case.name}/bridge/{w}/{a}/{letter}",
                            ev.eval(w, {"x": a}, alphas[i]) == expected,
                            f"alpha_{i}[{a}] should be {expected}",
                            world=w,
                            assignment={"x": a},
                        )
            for u in sorted(appended):
                confined = all(
                    ev.eval(u, {"x": c}, alphas[i])
                    for i in alphas
                    for c in sorted(m_star.domain(u))
                )
                rec.check(
                    f"{case.name}/confine/{u}",
                    confined,
                    "every alpha_i should hold of everything at appended worlds",
                    world=u,
                )


class QIntMainSuite(MainIntSuite):
    variant = MstarVariant.INT


class QKCMainSuite(MainIntSuite):
    variant = MstarVariant.QKC
    frame_property = FrameProperty.CONVERGENT


class QFLMainSuite(MainIntSuite):
    variant = MstarVariant.QFL
    frame_property = FrameProperty.ACYCLIC


# =============================================================================
# Binary Letters
# =============================================================================

class BinaryEliminationSuite(Suite):
    """Witness models refute the eliminated formula; read-back restores the original."""

    name = "binary-elimination"
    description = "Binary letters are simulated faithfully by monadic and 0-ary ones"
    defaults: ClassVar[dict[str, int]] = {}

    def run(self, rec: SuiteRecorder, params: Mapping[str, int]) -> None:
        letter = "Q"
        names = BinaryNames.numbered(letter, 1)
        simulation = simulate_binary("u", "v", names)
        for case in binary_countermodels():
            try:
                eliminated = eliminate_binary(case.formula, letter, names)
                witness = witness_eliminate_binary(
                    case.model, case.world, case.formula, letter, names
                )
                restored = read_back_binary(witness, letter, names)
            except KripkeBenchError as e:
                rec.guard(f"{case.name}/build", e)
                continue
            ev = Evaluator(witness)
            rec.check(
                f"{case.name}/refuted",
                not ev.sat_at(case.world, eliminated),
                "eliminated formula should fail at w0",
                world=case.world,
                formula=eliminated,
            )
            rec.check(
                f"{case.name}/read-back",
                not Evaluator(restored).sat_at(case.world, case.formula),
                "read-back model should refute the original formula",
                world=case.world,
                formula=case.formula,
            )
            for w in case.model.worlds:
                for a, b in product(sorted(case.model.domain(w)), repeat=2):
                    expected = case.model.holds(w, letter, a, b)
                    rec.check(
                        f"{case.name}/simulate/{w}/{a}{b}",
                        ev.eval(w, {"u": a, "v": b}, simulation) == expected,
                        f"simulation of {letter}({a},{b}) should be {expected}",
                        world=w,
                        assignment={"u": a, "v": b},
                    )


# =============================================================================
# Gödel Translation
# =============================================================================

Vector = int
Point = tuple[int, World, Individual, Individual]


class PointSpace:
    """
    Every (model, world, x, y) over a list of models, with truth vectors as int bitsets.

    A point's bit is ``slot * stride + model * block + ix * width + iy``, where
    ``slot`` is the world's position in its model and ``ix``/``iy`` index the
    model's domain union. Successors and x/y variants then sit at fixed bit
    offsets, so box and the local quantifiers are a handful of shifts and masks.
    Bits that name no point are never set.
    """

    def __init__(self, models: list[Model], letter: str = "P"):
        """Index every point and precompute the shift masks."""
        self.models = models
        unions = [sorted(set().union(*(m.domain(w) for w in m.worlds))) for m in models]
        width = max(len(u) for u in unions)
        block = width * width
        stride = block * len(models)
        self.size = stride * max(len(m.worlds) for m in models)
        self.points: dict[int, Point] = {}

        edge_bits: dict[int, list[int]] = {}
        x_bits: list[list[int]] = [[] for _ in range(width)]
        y_bits: list[list[int]] = [[] for _ in range(width)]
        present_bits: list[list[int]] = [[] for _ in range(width)]
        atom_x: list[int] = []
        atom_y: list[int] = []
        for mi, m in enumerate(models):
            slot = {w: s for s, w in enumerate(m.worlds)}
            for w in m.worlds:
                domain = m.domain(w)
                shifts = [(slot[u] - slot[w]) * stride for u in m.successors(w)]
                base = slot[w] * stride + mi * block
                for (ix, gx), (iy, gy) in product(enumerate(unions[mi]), repeat=2):
                    if gx not in domain or gy not in domain:
                        continue
                    bit = base + ix * width + iy
                    self.points[bit] = (mi, w, gx, gy)
                    for shift in shifts:
                        edge_bits.setdefault(shift, []).append(bit)
                    x_bits[ix].append(bit)
                    y_bits[iy].append(bit)
                    for j, d in enumerate(unions[mi]):
                        if d in domain:
                            present_bits[j].append(bit)
                    if m.holds(w, letter, gx):
                        atom_x.append(bit)
                    if m.holds(w, letter, gy):
                        atom_y.append(bit)

        self.valid = self.mask(self.points)
        self.bottom: Vector = 0
        self.atom_x = self.mask(atom_x)
        self.atom_y = self.mask(atom_y)
        self.edges = [(shift, self.mask(bits)) for shift, bits in sorted(edge_bits.items())]
        present = [self.mask(bits) for bits in present_bits]
        self.variants: dict[str, list[tuple[int, int]]] = {"x": [], "y": []}
        for var, at, step in (("x", x_bits, width), ("y", y_bits, 1)):
            for i, j in product(range(width), repeat=2):
                cell = self.mask(at[i]) & present[j]
                if cell:
                    self.variants[var].append(((j - i) * step, cell))

    def mask(self, bits: Iterable[int]) -> int:
        buf = bytearray((self.size + 7) // 8)
        for bit in bits:
            buf[bit >> 3] |= 1 << (bit & 7)
        return int.from_bytes(buf, "little")

    def digest(self, key: tuple[Vector | None, ...]) -> bytes:
        h = hashlib.blake2b(digest_size=16)
        width = (self.size + 7) // 8
        for v in key:
            h.update(b"\x00" if v is None else b"\x01" + v.to_bytes(width, "little"))
        return h.digest()

    @staticmethod
    def _moved(v: Vector, shift: int) -> Vector:
        return v >> shift if shift >= 0 else v << -shift

    def box(self, v: Vector) -> Vector:
        bad = 0
        for shift, cell in self.edges:
            bad |= cell & ~self._moved(v, shift)
        return self.valid & ~bad

    def local_all(self, var: str, v: Vector) -> Vector:
        bad = 0
        for shift, cell in self.variants[var]:
            bad |= cell & ~self._moved(v, shift)
        return self.valid & ~bad

    def local_any(self, var: str, v: Vector) -> Vector:
        hit = 0
        for shift, cell in self.variants[var]:
            hit |= cell & self._moved(v, shift)
        return hit

    def imp_box(self, a: Vector, b: Vector) -> Vector:
        return self.box((self.valid ^ a) | b)

    def not_box(self, a: Vector) -> Vector:
        return self.box(self.valid ^ a)

    def truth(self, v: Vector, bit: int) -> bool:
        return bool(v >> bit & 1)


@dataclass(frozen=True)
class FormulaClass:
    """
    Formulas agreeing on every point, with the smallest one found.

    The blocks are the local universal values a directly enclosing universal
    quantifier extends; they are None unless the representative is universal.
    """

    formula: Formula
    size: int
    int_vec: Vector
    modal_vec: Vector
    int_block: Vector | None = None
    modal_block: Vector | None = None

    @property
    def key(self) -> tuple[Vector, Vector, Vector | None, Vector | None]:
        return self.int_vec, self.modal_vec, self.int_block, self.modal_block


class GodelSuite(Suite):
    """
    Closes the classes of formulas over one monadic letter and two variables.

    Each class carries its truth vector under the intuitionistic reading and
    the vector of its translation under the modal reading over the same
    structures; every class must have equal vectors. A seeded sample
    of the classes below the cap is also re-evaluated directly to check the
    vector algebra.
    """

    name = "godel"
    description = "Intuitionistic truth agrees with modal truth of the translation"
    defaults: ClassVar[dict[str, int]] = {
        "size_cap": settings.godel_size_cap,
        "max_worlds": settings.godel_max_worlds,
        "max_domain": 2,
        "audit": 40,
    }

    def run(self, rec: SuiteRecorder, params: Mapping[str, int]) -> None:
        readings = ((Mode.INTUITIONISTIC, AtomClause.BOX), (Mode.VISSER, AtomClause.BOX_PLUS))
        for mode, clause in readings:
            bounds = SearchBounds(
                max_worlds=params["max_worlds"], max_domain=params["max_domain"], mode=mode
            )
            models = list(enumerate_models(bounds, {"P": 1}))
            space = PointSpace(models)
            logger.info(f"Godel {mode.value}: {len(models)} models, {len(space.points)} points")
            classes = self.close(rec, space, mode, clause, params["size_cap"])
            rng = random.Random(settings.seed)
            sample = rng.sample(classes, min(params["audit"], len(classes)))
            self.audit(rec, space, mode, clause, sample)

    def close(
        self,
        rec: SuiteRecorder,
        space: PointSpace,
        mode: Mode,
        clause: AtomClause,
        size_cap: int,
    ) -> list[FormulaClass]:
        """Compare every class up to size_cap; return those below the cap."""
        blocks = mode is Mode.VISSER
        kept: list[FormulaClass] = []
        by_size: dict[int, list[FormulaClass]] = {s: [] for s in range(1, size_cap + 1)}
        seen: set[bytes] = set()

        def admit(
            formula: Formula,
            size: int,
            vectors: tuple[Vector, Vector],
            local: tuple[Vector, Vector] | None = None,
        ) -> None:
            int_vec, modal_vec = vectors
            if modal_vec == int_vec:
                modal_vec = int_vec
            int_block = modal_block = None
            if local is not None:
                int_block = local[0] if blocks else None
                modal_block = int_block if local[1] == int_block else local[1]
            c = FormulaClass(formula, size, int_vec, modal_vec, int_block, modal_block)
            digest = space.digest(c.key)
            if digest in seen:
                return
            seen.add(digest)
            self.compare(rec, space, mode, c, len(seen))
            if size < size_cap:
                kept.append(c)
                by_size[size].append(c)

        def lift(op: Callable[..., Vector], *args: tuple[Vector, Vector]) -> tuple[Vector, Vector]:
            value = op(*(a for a, _ in args))
            if all(a is b for a, b in args):
                return value, value
            return value, op(*(b for _, b in args))

        def modal_atom(v: Vector) -> Vector:
            return space.box(v) if clause is AtomClause.BOX else v & space.box(v)

        admit(Atom("P", ("x",)), 1, (space.atom_x, modal_atom(space.atom_x)))
        admit(Atom("P", ("y",)), 1, (space.atom_y, modal_atom(space.atom_y)))
        admit(BOT, 1, (space.bottom, space.bottom))

        pointwise: list[tuple[Callable[[Formula, Formula], Formula], Callable[..., Vector]]] = [
            (And, operator.and_),
            (Or, operator.or_),
            (Imp, space.imp_box),
        ]
        for size in range(2, size_cap + 1):
            for c in by_size[size - 1]:
                vectors = (c.int_vec, c.modal_vec)
                admit(Neg(c.formula), size, lift(space.not_box, vectors))
                for var in ("x", "y"):
                    admit(
                        Exists(var, c.formula),
                        size,
                        lift(partial(space.local_any, var), vectors),
                    )
                    inner = (
                        c.int_block if blocks and c.int_block is not None else c.int_vec,
                        c.modal_block if c.modal_block is not None else c.modal_vec,
                    )
                    local = lift(partial(space.local_all, var), inner)
                    admit(Forall(var, c.formula), size, lift(space.box, local), local)
            for left_size in range(1, size - 1):
                right_size = size - 1 - left_size
                for (i, a), (j, b) in product(
                    enumerate(by_size[left_size]), enumerate(by_size[right_size])
                ):
                    # and/or commute: one order per unordered pair
                    commuted = left_size > right_size or (left_size == right_size and i > j)
                    left, right = (a.int_vec, a.modal_vec), (b.int_vec, b.modal_vec)
                    for node, op in pointwise:
                        if commuted and node is not Imp:
                            continue
                        admit(node(a.formula, b.formula), size, lift(op, left, right))
            logger.info(f"Godel {mode.value} size {size}: {len(seen)} classes")
        return kept


    def compare(
        self, rec: SuiteRecorder, space: PointSpace, mode: Mode, c: FormulaClass, n: int
    ) -> None:
        diff = c.int_vec ^ c.modal_vec
        if not diff:
            rec.check(f"{mode.value}/class{n:05d}", True, "")
            return
        bit = (diff & -diff).bit_length() - 1
        mi, w, gx, gy = space.points[bit]
        rec.check(
            f"{mode.value}/class{n:05d}",
            False,
            f"model {mi}: intuitionistic {space.truth(c.int_vec, bit)}, "
            f"translation {space.truth(c.modal_vec, bit)}",
            world=w,
            assignment={"x": gx, "y": gy},
            formula=c.formula,
        )

    def audit(
        self,
        rec: SuiteRecorder,
        space: PointSpace,
        mode: Mode,
        clause: AtomClause,
        classes: list[FormulaClass],
    ) -> None:
        source = [Evaluator(m) for m in space.models]
        target = [Evaluator(m.with_mode(Mode.MODAL)) for m in space.models]
        for n, c in enumerate(classes, start=1):
            translated = godel_translate(c.formula, clause)
            wrong = 0
            for bit, (mi, w, gx, gy) in space.points.items():
                g = {"x": gx, "y": gy}
                if (
                    source[mi].eval(w, g, c.formula) != space.truth(c.int_vec, bit)
                    or target[mi].eval(w, g, translated) != space.truth(c.modal_vec, bit)
                ):
                    wrong += 1
            rec.check(
                f"{mode.value}/audit{n:05d}",
                not wrong,
                f"vector algebra disagrees with the evaluator at {wrong} points",
                formula=c.formula,
            )
