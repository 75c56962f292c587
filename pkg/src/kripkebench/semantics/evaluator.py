"""Truth evaluation in the modal, intuitionistic and visser semantics."""

import logging
from collections.abc import Iterator, Mapping
from itertools import product

from kripkebench.core.errors import EvaluationError
from kripkebench.core.models import Mode
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
    Top,
    Variable,
    children,
)
from kripkebench.semantics.frames import World
from kripkebench.semantics.model import Individual, Model

logger = logging.getLogger(__name__)

Assignment = Mapping[Variable, Individual]


def _bind(g: Assignment, var: Variable, value: Individual) -> dict[Variable, Individual]:
    extended = dict(g)
    extended[var] = value
    return extended


def forall_block(f: Forall) -> tuple[tuple[Variable, ...], Formula]:
    """Split a maximal block of universal quantifiers from its body."""
    block: list[Variable] = []
    body: Formula = f
    while isinstance(body, Forall):
        block.append(body.var)
        body = body.body
    return tuple(block), body


class Evaluator:
    """
    Memoizing evaluator bound to one model.

    Results are cached per (subformula identity, world, values of the
    subformula's free variables). Every formula seen is pinned so identities
    stay unique for the evaluator's lifetime.
    """

    def __init__(self, model: Model):
        """Initialize with the model to evaluate in."""
        self.model = model
        self._memo: dict[tuple[int, World, tuple[Individual, ...]], bool] = {}
        self._free: dict[int, tuple[Variable, ...]] = {}
        self._pinned: dict[int, Formula] = {}

    def free_vars(self, f: Formula) -> tuple[Variable, ...]:
        key = id(f)
        cached = self._free.get(key)
        if cached is not None:
            return cached
        if isinstance(f, Atom):
            names = set(f.args)
        else:
            names = set()
            for child in children(f):
                names.update(self.free_vars(child))
            if isinstance(f, Forall | Exists):
                names.discard(f.var)
        result = tuple(sorted(names))
        self._free[key] = result
        self._pinned[key] = f
        return result

    def eval(self, w: World, g: Assignment, f: Formula) -> bool:
        fv = self.free_vars(f)
        try:
            values = tuple(g[v] for v in fv)
        except KeyError as e:
            raise EvaluationError(f"Unassigned free variable {e.args[0]}") from e
        key = (id(f), w, values)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        result = self._clause(w, g, f)
        self._memo[key] = result
        return result

    def _clause(self, w: World, g: Assignment, f: Formula) -> bool:
        m = self.model
        mode = m.mode
        match f:
            case Atom(letter, args):
                return tuple(g[a] for a in args) in m.extension(w, letter)
            case Top():
                return True
            case Bot():
                return False
            case And(l, r):
                return self.eval(w, g, l) and self.eval(w, g, r)
            case Or(l, r):
                return self.eval(w, g, l) or self.eval(w, g, r)
            case Exists(v, b):
                return any(self.eval(w, _bind(g, v, a), b) for a in sorted(m.domain(w)))

        if mode is Mode.MODAL:
            match f:
                case Neg(b):
                    return not self.eval(w, g, b)
                case Imp(l, r):
                    return not self.eval(w, g, l) or self.eval(w, g, r)
                case Box(b):
                    return all(self.eval(u, g, b) for u in m.successors(w))
                case Dia(b):
                    return any(self.eval(u, g, b) for u in m.successors(w))
                case Forall(v, b):
                    return all(self.eval(w, _bind(g, v, a), b) for a in sorted(m.domain(w)))

        match f:
            case Neg(b):
                return not any(self.eval(u, g, b) for u in m.successors(w))
            case Imp(l, r):
                return all(
                    not self.eval(u, g, l) or self.eval(u, g, r) for u in m.successors(w)
                )
            case Box(b):
                return all(self.eval(u, g, b) for u in m.successors(w))
            case Dia():
                raise EvaluationError(f"Diamond has no {mode.value} reading")
            case Forall(v, b) if mode is Mode.INTUITIONISTIC:
                return all(
                    self.eval(u, _bind(g, v, a), b)
                    for u in m.successors(w)
                    for a in sorted(m.domain(u))
                )
            case Forall():
                block, body = forall_block(f)
                for u in m.successors(w):
                    for values in product(sorted(m.domain(u)), repeat=len(block)):
                        extended = dict(g)
                        extended.update(zip(block, values, strict=True))
                        if not self.eval(u, extended, body):
                            return False
                return True
        raise EvaluationError(f"Cannot evaluate {f!r}")

    def assignments(self, w: World, f: Formula) -> Iterator[dict[Variable, Individual]]:
        """Every assignment of f's free variables into D(w)."""
        fv = self.free_vars(f)
        for values in product(sorted(self.model.domain(w)), repeat=len(fv)):
            yield dict(zip(fv, values, strict=True))

    def sat_at(self, w: World, f: Formula) -> bool:
        return all(self.eval(w, g, f) for g in self.assignments(w, f))

    def true_worlds(self, f: Formula) -> list[World]:
        return [w for w in self.model.worlds if self.sat_at(w, f)]


def _check_call(m: Model, w: World, g: Assignment, f: Formula, ev: Evaluator) -> None:
    if w not in m.domains:
        raise EvaluationError(f"Unknown world {w}")
    for v in ev.free_vars(f):
        if v not in g:
            raise EvaluationError(f"Unassigned free variable {v}")
        if g[v] not in m.domain(w):
            raise EvaluationError(f"Value {g[v]} of {v} is outside D({w})")


def evaluate(m: Model, w: World, g: Assignment, f: Formula) -> bool:
    """
    Truth of f at world w under assignment g.

    Raises:
        EvaluationError: If a free variable is unassigned or mapped outside D(w)
    """
    ev = Evaluator(m)
    _check_call(m, w, g, f, ev)
    return ev.eval(w, g, f)


def sat_at(m: Model, w: World, f: Formula) -> bool:
    """True iff f holds at w under every assignment into D(w)."""
    if w not in m.domains:
        raise EvaluationError(f"Unknown world {w}")
    return Evaluator(m).sat_at(w, f)


# =============================================================================
# Reference Implementation
# =============================================================================

def reference_eval(m: Model, w: World, g: Assignment, f: Formula) -> bool:
    """Direct recursive reading of the truth clauses, without caching."""
    succ = m.successors(w)
    dom = sorted(m.domain(w))
    intuitionistic = m.mode is not Mode.MODAL

    if isinstance(f, Atom):
        return tuple(g[a] for a in f.args) in m.extension(w, f.letter)
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, And):
        return reference_eval(m, w, g, f.left) and reference_eval(m, w, g, f.right)
    if isinstance(f, Or):
        return reference_eval(m, w, g, f.left) or reference_eval(m, w, g, f.right)
    if isinstance(f, Exists):
        return any(reference_eval(m, w, _bind(g, f.var, a), f.body) for a in dom)
    if isinstance(f, Box):
        return all(reference_eval(m, u, g, f.body) for u in succ)
    if isinstance(f, Dia):
        if intuitionistic:
            raise EvaluationError("Diamond has no intuitionistic reading")
        return any(reference_eval(m, u, g, f.body) for u in succ)
    if isinstance(f, Neg):
        if not intuitionistic:
            return not reference_eval(m, w, g, f.body)
        return all(not reference_eval(m, u, g, f.body) for u in succ)
    if isinstance(f, Imp):
        if not intuitionistic:
            return not reference_eval(m, w, g, f.left) or reference_eval(m, w, g, f.right)
        return all(
            not reference_eval(m, u, g, f.left) or reference_eval(m, u, g, f.right)
            for u in succ
        )
    if isinstance(f, Forall):
        if not intuitionistic:
            return all(reference_eval(m, w, _bind(g, f.var, a), f.body) for a in dom)
        if m.mode is Mode.INTUITIONISTIC:
            return all(
                reference_eval(m, u, _bind(g, f.var, a), f.body)
                for u in succ
                for a in sorted(m.domain(u))
            )
        block, body = forall_block(f)
        return all(
            reference_eval(m, u, {**g, **dict(zip(block, values, strict=True))}, body)
            for u in succ
            for values in product(sorted(m.domain(u)), repeat=len(block))
        )
    raise EvaluationError(f"Cannot evaluate {f!r}")
