"""Immutable syntax trees shared by the modal and intuitionistic dialects.

Variables are plain strings compared by name. Propositional letters are atoms
with an empty argument tuple.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import reduce

from kripkebench.core.errors import IndexRangeError, SubstitutionError
from kripkebench.core.models import PowerKind

Variable = str


@dataclass(frozen=True, slots=True)
class Atom:
    letter: str
    args: tuple[Variable, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args)


@dataclass(frozen=True, slots=True)
class Bot:
    pass


@dataclass(frozen=True, slots=True)
class Top:
    pass


@dataclass(frozen=True, slots=True)
class Neg:
    body: Formula


@dataclass(frozen=True, slots=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Imp:
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Box:
    body: Formula


@dataclass(frozen=True, slots=True)
class Dia:
    body: Formula


@dataclass(frozen=True, slots=True)
class Forall:
    var: Variable
    body: Formula


@dataclass(frozen=True, slots=True)
class Exists:
    var: Variable
    body: Formula


Formula = Atom | Bot | Top | Neg | And | Or | Imp | Box | Dia | Forall | Exists
Binary = And | Or | Imp
Unary = Neg | Box | Dia
Quantifier = Forall | Exists

BOT = Bot()
TOP = Top()


# =============================================================================
# Builders
# =============================================================================

def atom(letter: str, *args: Variable) -> Atom:
    """Build an atom from a letter name and its arguments."""
    return Atom(letter, tuple(args))


def conj(*parts: Formula) -> Formula:
    """Left-nested conjunction; the empty conjunction is top."""
    if not parts:
        return TOP
    return reduce(And, parts)


def disj(*parts: Formula) -> Formula:
    """Left-nested disjunction; the empty disjunction is bot."""
    if not parts:
        return BOT
    return reduce(Or, parts)


def box_plus(f: Formula) -> Formula:
    return And(f, Box(f))


def forall_block(variables: Iterable[Variable], body: Formula) -> Formula:
    """Prefix body with universal quantifiers, outermost first."""
    for var in reversed(list(variables)):
        body = Forall(var, body)
    return body


def box_power(f: Formula, n: int, kind: PowerKind = PowerKind.EXACT) -> Formula:
    """
    Iterate a modality by literal unfolding.

    Args:
        f: Formula to wrap
        n: Number of iterations, n >= 0
        kind: exact box^n, up-to box^{<=n}, or the negation duals of either

    Returns:
        The unfolded formula

    Raises:
        IndexRangeError: If n is negative
    """
    if n < 0:
        raise IndexRangeError(f"Modal power must be non-negative, got {n}")

    if kind is PowerKind.EXACT:
        for _ in range(n):
            f = Box(f)
        return f
    if kind is PowerKind.UP_TO:
        result = f
        for i in range(1, n + 1):
            result = And(result, box_power(f, i))
        return result
    if kind is PowerKind.DIAMOND_EXACT:
        return Neg(box_power(Neg(f), n))
    return Neg(box_power(Neg(f), n, PowerKind.UP_TO))


# =============================================================================
# Traversal
# =============================================================================

def children(f: Formula) -> tuple[Formula, ...]:
    match f:
        case Neg(b) | Box(b) | Dia(b) | Forall(_, b) | Exists(_, b):
            return (b,)
        case And(l, r) | Or(l, r) | Imp(l, r):
            return (l, r)
    return ()


def iter_nodes(f: Formula) -> Iterator[Formula]:
    """Yield every node of f in pre-order, repeats included."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def free_variables(f: Formula) -> frozenset[Variable]:
    match f:
        case Atom(_, args):
            return frozenset(args)
        case Forall(v, b) | Exists(v, b):
            return free_variables(b) - {v}
    result: frozenset[Variable] = frozenset()
    for child in children(f):
        result |= free_variables(child)
    return result


def variables(f: Formula) -> frozenset[Variable]:
    """All individual variables occurring free, bound or in binders."""
    found: set[Variable] = set()
    for node in iter_nodes(f):
        if isinstance(node, Atom):
            found.update(node.args)
        elif isinstance(node, Forall | Exists):
            found.add(node.var)
    return frozenset(found)


def rebuild(f: Formula, parts: tuple[Formula, ...]) -> Formula:
    """Return a node of f's shape over new children."""
    match f:
        case Neg():
            return Neg(parts[0])
        case Box():
            return Box(parts[0])
        case Dia():
            return Dia(parts[0])
        case Forall(v, _):
            return Forall(v, parts[0])
        case Exists(v, _):
            return Exists(v, parts[0])
        case And():
            return And(parts[0], parts[1])
        case Or():
            return Or(parts[0], parts[1])
        case Imp():
            return Imp(parts[0], parts[1])
    return f


def map_atoms(f: Formula, replace: Callable[[Atom], Formula | None]) -> Formula:
    """
    Replace atoms bottom-up; a None result keeps the atom.

    Shared subtrees are rewritten once, so DAG-shaped inputs stay DAG-shaped.
    """
    memo: dict[int, Formula] = {}

    def walk(node: Formula) -> Formula:
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Atom):
            out = replace(node)
            result: Formula = node if out is None else out
        else:
            kids = children(node)
            new_kids = tuple(walk(k) for k in kids)
            unchanged = all(a is b for a, b in zip(kids, new_kids, strict=True))
            result = node if unchanged else rebuild(node, new_kids)
        memo[key] = result
        return result

    return walk(f)


# =============================================================================
# Renaming & Substitution
# =============================================================================

def fresh_variable(base: Variable, avoid: Iterable[Variable]) -> Variable:
    """Prime base until it avoids every name given."""
    taken = set(avoid)
    candidate = base + "'"
    while candidate in taken:
        candidate += "'"
    return candidate


def rename_free(f: Formula, old: Variable, new: Variable) -> Formula:
    """Capture-avoiding replacement of free occurrences of old by new."""
    if old == new:
        return f
    match f:
        case Atom(letter, args):
            if old not in args:
                return f
            return Atom(letter, tuple(new if a == old else a for a in args))
        case Forall(v, b) | Exists(v, b):
            if v == old or old not in free_variables(b):
                return f
            if v == new:
                renamed = fresh_variable(v, variables(b) | {old, new})
                b = rename_free(b, v, renamed)
                v = renamed
            body = rename_free(b, old, new)
            return Forall(v, body) if isinstance(f, Forall) else Exists(v, body)
    kids = children(f)
    if not kids:
        return f
    return rebuild(f, tuple(rename_free(k, old, new) for k in kids))


@dataclass(frozen=True, slots=True)
class Template:
    """A one-parameter formula used in place of a monadic letter."""

    param: Variable
    body: Formula

    def instantiate(self, arg: Variable) -> Formula:
        return rename_free(self.body, self.param, arg)


def substitute_atoms(f: Formula, mapping: Mapping[str, Template]) -> Formula:
    """
    Uniformly substitute templates for monadic letters.

    Every Atom(P, [v]) with P in mapping becomes the template body with its
    parameter renamed to v. Letters outside mapping are untouched.

    Raises:
        SubstitutionError: If a template has extra free variables or a mapped
            letter occurs with arity other than one
    """
    for letter, template in mapping.items():
        extra = free_variables(template.body) - {template.param}
        if extra:
            raise SubstitutionError(
                f"Template for {letter} has extra free variables: {sorted(extra)}"
            )

    instances: dict[tuple[str, Variable], Formula] = {}

    def replace(node: Atom) -> Formula | None:
        template = mapping.get(node.letter)
        if template is None:
            return None
        if node.arity != 1:
            raise SubstitutionError(
                f"Letter {node.letter} has arity {node.arity}, templates are monadic"
            )
        key = (node.letter, node.args[0])
        if key not in instances:
            instances[key] = template.instantiate(node.args[0])
        return instances[key]

    return map_atoms(f, replace)
