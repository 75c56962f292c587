"""Gödel translation of intuitionistic formulas into modal ones."""

from kripkebench.core.errors import ReductionError
from kripkebench.core.models import AtomClause
from kripkebench.logic.formula import (
    BOT,
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
    box_plus,
    forall_block,
)
from kripkebench.semantics.evaluator import forall_block as split_forall_block


def godel_translate(f: Formula, atom_clause: AtomClause = AtomClause.BOX) -> Formula:
    """
    Guard every intuitionistic connective with a box.

    A maximal block of universal quantifiers is translated under a single box,
    existentials are left unguarded. With atom_clause box_plus atoms become
    p & box p, which agrees with p on hereditary models without reflexive
    loops.

    Raises:
        ReductionError: If f contains a diamond
    """

    def t(node: Formula) -> Formula:
        match node:
            case Atom():
                return Box(node) if atom_clause is AtomClause.BOX else box_plus(node)
            case Top() | Bot():
                return node
            case And(l, r):
                return And(t(l), t(r))
            case Or(l, r):
                return Or(t(l), t(r))
            case Imp(l, r):
                return Box(Imp(t(l), t(r)))
            case Neg(b):
                return Box(Imp(t(b), BOT))
            case Box(b):
                return Box(t(b))
            case Exists(v, b):
                return Exists(v, t(b))
            case Forall():
                block, body = split_forall_block(node)
                return Box(forall_block(block, t(body)))
            case Dia():
                raise ReductionError("Diamond does not occur in intuitionistic formulas")
        raise TypeError(f"Not a formula: {node!r}")

    return t(f)
