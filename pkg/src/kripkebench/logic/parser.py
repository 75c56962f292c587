"""Formula parser built on a lark LALR grammar."""

from functools import lru_cache

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from kripkebench.core.errors import ArityError, FormulaSyntaxError
from kripkebench.logic.formula import (
    BOT,
    TOP,
    And,
    Atom,
    Box,
    Dia,
    Exists,
    Forall,
    Formula,
    Imp,
    Neg,
    Or,
    iter_nodes,
)

# Precedence by hierarchy: -> (right-assoc) below | below & below the unary layer.
# Quantifier bodies extend as far as possible: the parser shifts rather than
# reduces when a body could continue.
FORMULA_GRAMMAR = r"""
    ?start: formula

    ?formula: disj
            | disj "->" formula         -> imp

    ?disj: conj
         | disj "|" conj                -> or_

    ?conj: unary
         | conj "&" unary               -> and_

    ?unary: "~" unary                   -> neg
          | "box" unary                 -> box
          | "dia" unary                 -> dia
          | "forall" IDENT "." formula  -> forall
          | "exists" IDENT "." formula  -> exists
          | "bot"                       -> bot
          | "top"                       -> top
          | IDENT "(" IDENT ("," IDENT)* ")" -> atom
          | IDENT                       -> atom
          | "(" formula ")"

    IDENT: /[A-Za-z_][A-Za-z0-9_]*'*/

    %import common.WS
    %ignore WS
"""

KEYWORDS = frozenset({"box", "dia", "top", "bot", "forall", "exists"})


def _name(token: Token) -> str:
    if token in KEYWORDS:
        raise FormulaSyntaxError(
            f"Keyword {str(token)!r} cannot name a letter or variable", token.line, token.column
        )
    return str(token)


@v_args(inline=True)
class _ToFormula(Transformer):  # type: ignore[type-arg]
    """Turn a lark parse tree into formula nodes."""

    def imp(self, left: Formula, right: Formula) -> Formula:
        return Imp(left, right)

    def or_(self, left: Formula, right: Formula) -> Formula:
        return Or(left, right)

    def and_(self, left: Formula, right: Formula) -> Formula:
        return And(left, right)

    def neg(self, body: Formula) -> Formula:
        return Neg(body)

    def box(self, body: Formula) -> Formula:
        return Box(body)

    def dia(self, body: Formula) -> Formula:
        return Dia(body)

    def forall(self, var: Token, body: Formula) -> Formula:
        return Forall(_name(var), body)

    def exists(self, var: Token, body: Formula) -> Formula:
        return Exists(_name(var), body)

    def bot(self) -> Formula:
        return BOT

    def top(self) -> Formula:
        return TOP

    def atom(self, letter: Token, *args: Token) -> Formula:
        return Atom(_name(letter), tuple(_name(a) for a in args))


@lru_cache(maxsize=1)
def _parser() -> Lark:
    return Lark(FORMULA_GRAMMAR, parser="lalr", maybe_placeholders=False)


def check_arities(f: Formula) -> dict[str, int]:
    """
    Collect letter arities, requiring one arity per letter.

    Raises:
        ArityError: If a letter occurs with two different arities
    """
    arities: dict[str, int] = {}
    for node in iter_nodes(f):
        if isinstance(node, Atom):
            expected = arities.setdefault(node.letter, node.arity)
            if expected != node.arity:
                raise ArityError(node.letter, expected, node.arity)
    return arities


def parse(text: str) -> Formula:
    """
    Parse formula text.

    Args:
        text: Formula in the ASCII grammar

    Returns:
        The formula tree

    Raises:
        FormulaSyntaxError: If text does not conform to the grammar
        ArityError: If a letter is used with inconsistent arities
    """
    try:
        tree = _parser().parse(text)
    except UnexpectedInput as e:
        line = e.line if e.line > 0 else None
        column = e.column if e.column > 0 else None
        message = str(e).strip().splitlines()[0] if str(e).strip() else "Unexpected input"
        raise FormulaSyntaxError(message, line, column) from e

    try:
        formula: Formula = _ToFormula().transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, FormulaSyntaxError):
            raise e.orig_exc from e
        raise FormulaSyntaxError(str(e.orig_exc)) from e

    check_arities(formula)
    return formula
