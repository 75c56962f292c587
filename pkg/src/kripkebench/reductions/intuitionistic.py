"""Single-letter reduction for intuitionistic logics and its helper rewrites.

The source letters P_1..P_n become the level formulas of the level frame at
depth n. Binary letters are first simulated by monadic ones, and 0-ary letters
by existential statements about fresh monadic letters.
"""

import logging
from collections.abc import Mapping
from itertools import product
from typing import NamedTuple

from kripkebench.core.errors import ReductionError
from kripkebench.core.models import ClosureKind, FrameVariant, Mode, MstarVariant
from kripkebench.logic.analysis import is_positive
from kripkebench.logic.formula import (
    And,
    Atom,
    Box,
    Exists,
    Formula,
    Imp,
    Neg,
    Or,
    Template,
    Variable,
    map_atoms,
    substitute_atoms,
    variables,
)
from kripkebench.logic.parser import check_arities
from kripkebench.reductions.frame_f import (
    FrameF,
    LevelIndex,
    a_suitable_f,
    build_frame_f,
    level_formula,
    level_width,
)
from kripkebench.semantics.evaluator import Evaluator
from kripkebench.semantics.frames import Frame, World, closure
from kripkebench.semantics.model import Extension, Individual, Model, ensure_valid

logger = logging.getLogger(__name__)

TOP_WORLD = "top"


def source_letters(n: int) -> tuple[str, ...]:
    return tuple(f"P{i}" for i in range(1, n + 1))


def _pick_variable(f: Formula) -> Variable:
    names = sorted(variables(f))
    return names[0] if names else "x"


def resolve_depth(n: int, depth: int | None = None) -> int:
    """
    Level whose worlds address the n source letters.

    Defaults to n. Any level d >= 2 whose width is at least n works as well,
    with letters beyond n left unwired.

    Raises:
        ReductionError: If n < 2 or the level is too narrow
    """
    if n < 2:
        raise ReductionError(f"The single-letter reduction needs n >= 2, got {n}")
    level = n if depth is None else depth
    if level < 2 or level_width(level) < n:
        raise ReductionError(f"Level {level} cannot address {n} letters")
    return level


def shallowest_depth(n: int) -> int:
    """The smallest level that addresses n letters."""
    level = 2
    while level_width(level) < n:
        level += 1
    return level


# =============================================================================
# Single-Letter Substitution
# =============================================================================

def alpha_int(i: int, n: int, v: Variable = "x", target: str = "P") -> Formula:
    """A^n_i(v) | B^n_i(v); i may range over the whole level n."""
    if n < 2:
        raise ReductionError(f"The single-letter reduction needs n >= 2, got {n}")
    if not 1 <= i <= level_width(n):
        raise ReductionError(f"Letter index must be in 1..{level_width(n)}, got {i}")
    return Or(
        level_formula(LevelIndex.a(n, i), v, target),
        level_formula(LevelIndex.b(n, i), v, target),
    )


def star_subst_int(
    f: Formula,
    n: int,
    target: str = "P",
    depth: int | None = None,
) -> Formula:
    """
    Replace every P_i(v) by alpha_i(v).

    The template parameter is f's first variable, so the result uses exactly
    f's variables. With depth given, alpha_i is taken from that level instead
    of level n.

    Raises:
        ReductionError: If n < 2, the depth is too narrow, f is not positive
            or uses other letters
    """
    level = resolve_depth(n, depth)
    if not is_positive(f):
        raise ReductionError("The single-letter reduction needs a positive formula")
    letters = source_letters(n)
    arities = check_arities(f)
    unknown = sorted(name for name in arities if name not in letters)
    if unknown:
        raise ReductionError(f"Letters outside P1..P{n}: {unknown}")
    wrong = sorted(name for name, arity in arities.items() if arity != 1)
    if wrong:
        raise ReductionError(f"Source letters must be monadic: {wrong}")

    var = _pick_variable(f)
    mapping = {
        letter: Template(var, alpha_int(i, level, var, target))
        for i, letter in enumerate(letters, start=1)
    }
    return substitute_atoms(f, mapping)


def copy_name(host: World, a: Individual, world: World) -> World:
    return f"{host}:{a}:{world}"


def helper_for(domain: frozenset[Individual], a: Individual) -> Individual:
    """The first individual of the domain, in sorted order, other than a."""
    return next(c for c in sorted(domain) if c != a)


def build_mstar_int(
    m: Model,
    n: int,
    variant: MstarVariant = MstarVariant.INT,
    target: str = "P",
    depth: int | None = None,
) -> Model:
    """
    Hang an a-suitable copy of the level frame below every (w, a).

    The host w sees a^n_i and b^n_i of its copy for a exactly when P_i[a]
    fails at w. Hosts carry no letters. The qkc variant adds a top world seen
    by every world, where the target holds of everything.

    Args:
        m: Countermodel over P1..Pn, intuitionistic (visser for qfl)
        n: Number of source letters, n >= 2
        variant: int, qkc or qfl
        target: The single letter
        depth: Level of the wired worlds, n by default

    Returns:
        Validated single-letter model

    Raises:
        ReductionError: If the mode does not fit the variant, n < 2 or some
            domain has fewer than three individuals
        ModelValidationError: If m is not a valid model
    """
    level = resolve_depth(n, depth)
    expected = Mode.VISSER if variant is MstarVariant.QFL else Mode.INTUITIONISTIC
    if m.mode is not expected:
        raise ReductionError(
            f"The {variant.value} variant needs a {expected.value} model, got {m.mode.value}"
        )
    ensure_valid(m)
    small = sorted(w for w in m.worlds if len(m.domain(w)) < 3)
    if small:
        raise ReductionError(f"Domains need at least three individuals; too small at {small}")

    fr: FrameF = build_frame_f(
        level, FrameVariant.QFL if variant is MstarVariant.QFL else FrameVariant.INT
    )
    letters = source_letters(n)
    bottom = [
        (LevelIndex.a(level, i).world, LevelIndex.b(level, i).world) for i in range(1, n + 1)
    ]

    worlds: list[World] = list(m.worlds)
    edges: set[tuple[World, World]] = set(m.frame.relation)
    domains: dict[World, frozenset[Individual]] = dict(m.domains)
    interpretation: dict[tuple[World, str], Extension] = {}

    for w in m.worlds:
        domain = m.domain(w)
        for a in sorted(domain):
            gadget = a_suitable_f(fr, domain, a, helper_for(domain, a), target)
            for t in gadget.worlds:
                name = copy_name(w, a, t)
                if name in domains:
                    raise ReductionError(f"Copy world name {name} collides with a host")
                worlds.append(name)
                domains[name] = domain
                ext = gadget.extension(t, target)
                if ext:
                    interpretation[(name, target)] = ext
            edges.update(
                (copy_name(w, a, u), copy_name(w, a, v)) for u, v in gadget.frame.relation
            )
            for letter, (a_world, b_world) in zip(letters, bottom, strict=True):
                if not m.holds(w, letter, a):
                    edges.add((w, copy_name(w, a, a_world)))
                    edges.add((w, copy_name(w, a, b_world)))

    if variant is MstarVariant.QKC:
        if TOP_WORLD in domains:
            raise ReductionError(f"World name {TOP_WORLD} is already taken")
        everyone = frozenset().union(*m.domains.values())
        edges.update((w, TOP_WORLD) for w in worlds)
        worlds.append(TOP_WORLD)
        domains[TOP_WORLD] = everyone
        interpretation[(TOP_WORLD, target)] = frozenset((c,) for c in everyone)

    kind = (
        ClosureKind.TRANSITIVE
        if variant is MstarVariant.QFL
        else ClosureKind.REFLEXIVE_TRANSITIVE
    )
    frame = closure(Frame(tuple(worlds), frozenset(edges)), kind)
    result = Model(frame, domains, interpretation, expected)
    logger.info(
        f"Built {variant.value} single-letter model: {len(m.worlds)} hosts, "
        f"{len(frame.worlds)} worlds"
    )
    ensure_valid(result)
    return result


# =============================================================================
# Binary Letters
# =============================================================================

class BinaryNames(NamedTuple):
    """Fresh letters simulating one binary letter Q."""

    first: str
    second: str
    r: str
    s: str

    @classmethod
    def numbered(cls, letter: str, k: int) -> "BinaryNames":
        """E.g. H with k=1 gives H1, H2, r1, s1."""
        return cls(f"{letter}1", f"{letter}2", f"r{k}", f"s{k}")


def simulate_binary(u: Variable, v: Variable, names: BinaryNames) -> Formula:
    """(Q1(u) & Q2(v) -> r) | s."""
    return Or(
        Imp(
            And(Atom(names.first, (u,)), Atom(names.second, (v,))),
            Atom(names.r, ()),
        ),
        Atom(names.s, ()),
    )


def _check_fresh(f: Formula, letter: str, names: BinaryNames) -> dict[str, int]:
    arities = check_arities(f)
    if len(set(names)) != 4 or letter in names:
        raise ReductionError(f"Fresh names must be distinct from each other and {letter}")
    taken = sorted(name for name in names if name in arities)
    if taken:
        raise ReductionError(f"Fresh letters already occur in the formula: {taken}")
    if arities.get(letter, 2) != 2:
        raise ReductionError(f"Letter {letter} has arity {arities[letter]}, expected 2")
    return arities


def eliminate_binary(chi: Formula, letter: str, names: BinaryNames) -> Formula:
    """
    Replace every Q(u, v) by (Q1(u) & Q2(v) -> r) | s.

    Raises:
        ReductionError: If chi is not positive or a fresh letter collides
    """
    if not is_positive(chi):
        raise ReductionError("Binary elimination needs a positive formula")
    _check_fresh(chi, letter, names)

    def replace(node: Atom) -> Formula | None:
        if node.letter != letter:
            return None
        return simulate_binary(node.args[0], node.args[1], names)

    return map_atoms(chi, replace)


def witness_name(w: World, a: Individual, b: Individual) -> World:
    return f"{w}:{a},{b}"


def witness_eliminate_binary(
    m: Model,
    w0: World,
    chi: Formula,
    letter: str,
    names: BinaryNames,
) -> Model:
    """
    Turn a countermodel for chi into one for eliminate_binary(chi).

    For every w and a, b in D(w) with Q[a, b] false at w, a new world above w
    has r false, s true, Q1 = {a}, Q2 = {b} and every other letter of chi
    true of everything. Original worlds lose Q and make s, r, Q1, Q2 false.

    Raises:
        ReductionError: If m is not intuitionistic, w0 is unknown or chi holds at w0
        ModelValidationError: If m is not a valid model
    """
    if m.mode is not Mode.INTUITIONISTIC:
        raise ReductionError(
            f"Witness construction needs an intuitionistic model, got {m.mode.value}"
        )
    if w0 not in m.domains:
        raise ReductionError(f"Unknown world {w0}")
    ensure_valid(m)
    arities = _check_fresh(chi, letter, names)
    if Evaluator(m).sat_at(w0, chi):
        raise ReductionError(f"The formula holds at {w0}; a countermodel is required")

    others = {name: arity for name, arity in arities.items() if name != letter}
    for (_, name), ext in m.interpretation.items():
        if name != letter and name not in others and ext:
            others[name] = len(next(iter(ext)))
    worlds: list[World] = list(m.worlds)
    edges: set[tuple[World, World]] = set(m.frame.relation)
    domains: dict[World, frozenset[Individual]] = dict(m.domains)
    interpretation: dict[tuple[World, str], Extension] = {
        key: ext for key, ext in m.interpretation.items() if key[1] != letter
    }

    for w in m.worlds:
        domain = m.domain(w)
        for a, b in product(sorted(domain), repeat=2):
            if m.holds(w, letter, a, b):
                continue
            name = witness_name(w, a, b)
            if name in domains:
                raise ReductionError(f"Witness world name {name} collides with a host")
            worlds.append(name)
            domains[name] = domain
            edges.add((w, name))
            interpretation[(name, names.s)] = frozenset({()})
            interpretation[(name, names.first)] = frozenset({(a,)})
            interpretation[(name, names.second)] = frozenset({(b,)})
            for other, arity in others.items():
                interpretation[(name, other)] = frozenset(product(sorted(domain), repeat=arity))

    frame = closure(Frame(tuple(worlds), frozenset(edges)), ClosureKind.REFLEXIVE_TRANSITIVE)
    result = Model(frame, domains, interpretation, Mode.INTUITIONISTIC)
    logger.info(f"Added {len(worlds) - len(m.worlds)} witness worlds for {letter}")
    ensure_valid(result)
    return result


def read_back_binary(m: Model, letter: str, names: BinaryNames) -> Model:
    """
    Interpret the binary letter by the simulating formula.

    Q[a, b] holds at w exactly when (Q1(a) & Q2(b) -> r) | s does, so a world
    refuting the eliminated formula refutes the original one.

    Raises:
        ReductionError: If m already interprets the letter
    """
    if letter in m.letters:
        raise ReductionError(f"The model already interprets {letter}")
    template = simulate_binary("u", "v", names)
    ev = Evaluator(m)
    interpretation = dict(m.interpretation)
    for w in m.worlds:
        ext = frozenset(
            (a, b)
            for a, b in product(sorted(m.domain(w)), repeat=2)
            if ev.eval(w, {"u": a, "v": b}, template)
        )
        if ext:
            interpretation[(w, letter)] = ext
    return Model(m.frame, m.domains, interpretation, m.mode)


# =============================================================================
# Propositional Letters and the Symmetric Irreflexive Binary Letter
# =============================================================================

def expand_propositional(f: Formula, names: Mapping[str, str] | None = None) -> Formula:
    """
    Replace every 0-ary letter p by exists v. Q_p(v) with a fresh monadic Q_p.

    By default Q_p is p upper-cased, with underscores appended until fresh.

    Raises:
        ReductionError: If a requested name is already in use
    """
    arities = check_arities(f)
    taken = set(arities)
    chosen: dict[str, str] = {}
    for p in sorted(name for name, arity in arities.items() if arity == 0):
        if names and p in names:
            candidate = names[p]
            if candidate in taken:
                raise ReductionError(f"Fresh letter {candidate} for {p} is already in use")
        else:
            candidate = p.upper()
            while candidate in taken:
                candidate += "_"
        taken.add(candidate)
        chosen[p] = candidate

    var = _pick_variable(f)

    def replace(node: Atom) -> Formula | None:
        if node.letter not in chosen:
            return None
        return Exists(var, Atom(chosen[node.letter], (var,)))

    return map_atoms(f, replace)


def sib_simulate(f: Formula, s_letter: str = "S", p_letter: str = "P") -> Formula:
    """
    Replace S(u, v) by box(~P(u) | ~P(v)).

    Raises:
        ReductionError: If f uses letters other than the binary S
    """
    arities = check_arities(f)
    others = sorted(name for name in arities if name != s_letter)
    if others:
        raise ReductionError(f"Only {s_letter} may occur; found {others}")
    if arities.get(s_letter, 2) != 2:
        raise ReductionError(f"{s_letter} must be binary, got arity {arities[s_letter]}")

    def replace(node: Atom) -> Formula | None:
        u, v = node.args
        return Box(Or(Neg(Atom(p_letter, (u,))), Neg(Atom(p_letter, (v,)))))

    return map_atoms(f, replace)
