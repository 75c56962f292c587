"""Pretty printer producing text that the parser reads back unchanged."""

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
)

_BINARY = {And: "&", Or: "|", Imp: "->"}


def _operand(f: Formula) -> str:
    # Quantifier scope is maximal, so a quantified operand needs its own parentheses.
    text = to_text(f)
    return f"({text})" if isinstance(f, Forall | Exists) else text


def to_text(f: Formula) -> str:
    """Render a formula; binary connectives are always parenthesized."""
    match f:
        case Atom(letter, args):
            return f"{letter}({','.join(args)})" if args else letter
        case Bot():
            return "bot"
        case Top():
            return "top"
        case Neg(b):
            return f"~{_operand(b)}"
        case Box(b):
            return f"box {_operand(b)}"
        case Dia(b):
            return f"dia {_operand(b)}"
        case Forall(v, b):
            return f"forall {v}. {to_text(b)}"
        case Exists(v, b):
            return f"exists {v}. {to_text(b)}"
        case And(l, r) | Or(l, r) | Imp(l, r):
            return f"({_operand(l)} {_BINARY[type(f)]} {_operand(r)})"
    raise TypeError(f"Not a formula: {f!r}")
