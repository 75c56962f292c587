"""Syntactic analysis: profiles, node counts, positivity and letter inventories."""

from collections import Counter
from typing import NamedTuple

from kripkebench.core.models import SyntaxProfile
from kripkebench.logic.formula import (
    Atom,
    Bot,
    Exists,
    Forall,
    Formula,
    Neg,
    children,
    free_variables,
    iter_nodes,
    variables,
)
from kripkebench.logic.parser import check_arities


def node_count(f: Formula) -> int:
    """Number of nodes of f read as a tree."""
    return sum(1 for _ in iter_nodes(f))


def is_positive(f: Formula) -> bool:
    return not any(isinstance(node, Neg | Bot) for node in iter_nodes(f))


def profile(f: Formula) -> SyntaxProfile:
    """
    Summarise the syntax of a formula.

    Args:
        f: Formula to inspect

    Returns:
        SyntaxProfile with exact occurrence counts and fragment flags
    """
    arities = check_arities(f)
    counts = Counter(node.letter for node in iter_nodes(f) if isinstance(node, Atom))
    free = set(free_variables(f))
    names = set(variables(f))
    return SyntaxProfile(
        free_variables=free,
        variables=names,
        variable_count=len(names),
        letters={name: (arities[name], counts[name]) for name in sorted(arities)},
        positive=is_positive(f),
        closed=not free,
    )


class Shape(NamedTuple):
    """Letters, variables and positivity of a formula."""

    letters: frozenset[str]
    variables: frozenset[str]
    positive: bool


def shape(f: Formula) -> Shape:
    """Like profile, but visits each shared subformula once."""
    seen: dict[int, Shape] = {}

    def walk(node: Formula) -> Shape:
        cached = seen.get(id(node))
        if cached is not None:
            return cached
        if isinstance(node, Atom):
            result = Shape(frozenset({node.letter}), frozenset(node.args), True)
        else:
            parts = [walk(child) for child in children(node)]
            own = {node.var} if isinstance(node, Forall | Exists) else set()
            result = Shape(
                frozenset().union(*(p.letters for p in parts)),
                frozenset(own).union(*(p.variables for p in parts)),
                not isinstance(node, Neg | Bot) and all(p.positive for p in parts),
            )
        seen[id(node)] = result
        return result

    return walk(f)
