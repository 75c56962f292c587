"""Hand-built models, formulas and tile sets exercised by the suites.

Individuals are single characters so extensions can be written compactly:
"a b" is the monadic extension {a, b}, "ab ba" the binary one
{(a, b), (b, a)} and "-" makes a 0-ary letter true.
"""

from collections.abc import Mapping
from dataclasses import dataclass

from kripkebench.core.models import ClosureKind, Mode, Track
from kripkebench.logic.formula import Formula
from kripkebench.logic.parser import parse
from kripkebench.reductions.modal import TRACK_CLOSURE
from kripkebench.semantics.frames import World, closure
from kripkebench.semantics.model import Model, build_model
from kripkebench.tiling.tiles import Tile, TileSet

Letters = Mapping[str, Mapping[World, str]]


@dataclass(frozen=True)
class CorpusCase:
    """A model, a formula and the world where the formula is evaluated."""

    name: str
    model: Model
    formula: Formula
    world: World = "w0"


def _tuples(text: str) -> list[tuple[str, ...]]:
    return [() if token == "-" else tuple(token) for token in text.split()]


def corpus_model(
    edges: str,
    domains: Mapping[World, str],
    letters: Letters,
    mode: Mode = Mode.MODAL,
    closure_kind: ClosureKind | None = None,
) -> Model:
    """
    Build a model from compact text.

    Args:
        edges: Space-separated "u>v" pairs
        domains: World -> its individuals as one string; order fixes world order
        letters: Letter -> world -> extension text
        mode: Semantics mode
        closure_kind: Closure applied to the relation afterwards
    """
    relation = [tuple(e.split(">")) for e in edges.split()]
    interpretation = {
        (w, letter): _tuples(text)
        for letter, by_world in letters.items()
        for w, text in by_world.items()
        if text
    }
    m = build_model(
        list(domains),
        [(u, v) for u, v in relation],
        {w: list(d) for w, d in domains.items()},
        interpretation,
        mode,
    )
    if closure_kind is not None:
        m = m.with_frame(closure(m.frame, closure_kind))
    return m


# =============================================================================
# Modal Models over P1, P2
# =============================================================================

MODAL_LETTER_COUNT = 2

# Irreflexive DAGs; domains grow and letters shrink along every edge, so the
# letters stay antitone under any closure.
_MODAL_SHAPES: list[tuple[str, str, dict[World, str], Letters]] = [
    ("single", "", {"w0": "ab"}, {"P1": {"w0": "a"}, "P2": {"w0": "b"}}),
    (
        "step",
        "w0>w1",
        {"w0": "a", "w1": "ab"},
        {"P1": {"w0": "a", "w1": "a"}, "P2": {"w0": "a"}},
    ),
    (
        "chain",
        "w0>w1 w1>w2",
        {"w0": "ab", "w1": "ab", "w2": "ab"},
        {"P1": {"w0": "a b", "w1": "a"}, "P2": {"w0": "b", "w1": "b", "w2": "b"}},
    ),
    (
        "fork",
        "w0>w1 w0>w2",
        {"w0": "ab", "w1": "ab", "w2": "ab"},
        {"P1": {"w0": "a b", "w1": "a", "w2": "b"}, "P2": {"w0": "a", "w1": "a"}},
    ),
    (
        "newcomer",
        "w0>w1",
        {"w0": "a", "w1": "ab"},
        {"P1": {"w1": "b"}, "P2": {"w0": "a"}},
    ),
    ("crowd", "", {"w0": "abc"}, {"P1": {"w0": "a b"}, "P2": {"w0": "b c"}}),
    (
        "triangle",
        "w0>w1 w1>w2 w0>w2",
        {"w0": "a", "w1": "a", "w2": "a"},
        {"P1": {"w0": "a", "w1": "a", "w2": "a"}, "P2": {"w0": "a"}},
    ),
    (
        "fading",
        "w0>w1",
        {"w0": "ab", "w1": "ab"},
        {"P2": {"w0": "a b", "w1": "a"}},
    ),
    (
        "diamond",
        "w0>w1 w0>w2 w1>w3 w2>w3",
        {"w0": "a", "w1": "a", "w2": "a", "w3": "a"},
        {"P1": {"w0": "a", "w1": "a"}, "P2": {"w0": "a", "w2": "a"}},
    ),
    (
        "growing",
        "w0>w1 w1>w2",
        {"w0": "a", "w1": "ab", "w2": "abc"},
        {"P1": {"w0": "a", "w1": "a b", "w2": "c"}},
    ),
]

MODAL_FORMULAS: list[str] = [
    "forall x. (P1(x) -> box P1(x))",
    "exists x. dia P2(x)",
    "box forall x. P1(x)",
    "forall x. box P1(x)",
    "exists x. (P1(x) & ~P2(x))",
    "box exists x. (P1(x) | P2(x))",
    "forall x. exists y. dia (P1(x) & P2(y))",
    "~dia forall x. P2(x)",
    "dia box exists y. P1(y)",
    "forall x. (dia P1(x) -> exists y. box P2(y))",
]


def modal_models(track: Track = Track.K) -> list[tuple[str, Model]]:
    """
    The modal shapes closed for a track.

    KTB frames are symmetric, so their domains are made constant.
    """
    models = []
    for name, edges, domains, letters in _MODAL_SHAPES:
        if track is Track.KTB:
            everyone = "".join(sorted(set("".join(domains.values()))))
            domains = {w: everyone for w in domains}
        m = corpus_model(edges, domains, letters, Mode.MODAL, TRACK_CLOSURE[track])
        models.append((name, m))
    return models


def modal_formulas() -> list[tuple[str, Formula]]:
    return [(f"f{i}", parse(text)) for i, text in enumerate(MODAL_FORMULAS, start=1)]


# =============================================================================
# Intuitionistic Countermodels
# =============================================================================

_ABC = {"w0": "abc"}
_ABC2 = {"w0": "abc", "w1": "abc"}

# (name, edges, domains, letters, positive formula false at w0)
_INT_CASES: list[tuple[str, str, dict[World, str], Letters, str]] = [
    ("partial", "", _ABC, {"P1": {"w0": "a"}}, "forall x. P1(x)"),
    ("one-short", "", _ABC, {"P1": {"w0": "a b c"}, "P2": {"w0": "a"}},
     "forall x. (P1(x) & P2(x))"),
    ("empty", "", _ABC, {"P2": {"w0": "a b"}}, "(exists x. P1(x)) | forall y. P2(y)"),
    ("gap", "", _ABC, {"P1": {"w0": "a"}, "P2": {"w0": "b"}}, "forall x. (P1(x) | P2(x))"),
    ("later", "w0>w1", _ABC2, {"P1": {"w1": "a"}}, "forall x. (P1(x) -> P2(x))"),
    ("some-not-all", "w0>w1", _ABC2, {"P1": {"w0": "a", "w1": "a b"}},
     "(exists x. P1(x)) -> forall x. P1(x)"),
    ("newcomer", "w0>w1", {"w0": "abc", "w1": "abcd"},
     {"P1": {"w0": "a b c", "w1": "a b c"}}, "forall x. (P1(x) | P2(x))"),
    ("fork", "w0>w1 w0>w2", {"w0": "abc", "w1": "abc", "w2": "abc"},
     {"P1": {"w1": "a", "w2": "b"}},
     "(exists x. P1(x)) | ((exists x. P1(x)) -> forall y. P1(y))"),
    ("converse", "w0>w1", _ABC2, {"P1": {"w0": "a", "w1": "a"}, "P2": {"w1": "a b"}},
     "forall x. (P2(x) -> P1(x))"),
    ("disjoint", "", _ABC, {"P1": {"w0": "a b"}, "P2": {"w0": "c"}},
     "exists x. (P1(x) & P2(x))"),
]


def int_countermodels(mode: Mode = Mode.INTUITIONISTIC) -> list[CorpusCase]:
    """
    Positive formulas over P1, P2 with reflexive countermodels of domain size >= 3.

    The frames are reflexive, so the same cases serve as visser countermodels.
    """
    return [
        CorpusCase(
            name,
            corpus_model(edges, domains, letters, mode, ClosureKind.REFLEXIVE_TRANSITIVE),
            parse(text),
        )
        for name, edges, domains, letters, text in _INT_CASES
    ]


_BINARY_CASES: list[tuple[str, str, dict[World, str], Letters, str]] = [
    ("no-successor", "", {"w0": "a"}, {}, "forall x. exists y. Q(x,y)"),
    ("not-reflexive", "", {"w0": "ab"}, {"Q": {"w0": "aa"}}, "forall x. Q(x,x)"),
    ("not-symmetric", "", {"w0": "ab"}, {"Q": {"w0": "ab"}},
     "forall x. forall y. (Q(x,y) -> Q(y,x))"),
    ("later-loop", "w0>w1", {"w0": "a", "w1": "a"}, {"Q": {"w1": "aa"}}, "exists x. Q(x,x)"),
    ("no-marked-successor", "", {"w0": "ab"}, {"Q": {"w0": "ab ba"}, "P": {"w0": "a"}},
     "forall x. exists y. (Q(x,y) & P(y))"),
    ("some-loop", "w0>w1", {"w0": "ab", "w1": "ab"}, {"Q": {"w0": "ab", "w1": "ab bb"}},
     "(exists x. Q(x,x)) -> forall x. Q(x,x)"),
    ("propositional", "", {"w0": "a"}, {"Q": {"w0": "aa"}}, "(forall x. Q(x,x)) -> p"),
    ("fork", "w0>w1 w0>w2", {"w0": "ab", "w1": "ab", "w2": "ab"},
     {"Q": {"w1": "ab", "w2": "ba"}},
     "(exists x. exists y. Q(x,y)) | forall x. forall y. Q(x,y)"),
    ("dead-end", "", {"w0": "abc"}, {"Q": {"w0": "ab bc"}},
     "forall x. forall y. (Q(x,y) -> exists x. Q(y,x))"),
    ("newcomer", "w0>w1", {"w0": "a", "w1": "ab"}, {"Q": {"w0": "aa", "w1": "aa"}},
     "forall x. exists y. Q(y,x)"),
]


def binary_countermodels() -> list[CorpusCase]:
    """Positive formulas with a binary letter Q and intuitionistic countermodels."""
    return [
        CorpusCase(
            name,
            corpus_model(
                edges, domains, letters, Mode.INTUITIONISTIC, ClosureKind.REFLEXIVE_TRANSITIVE
            ),
            parse(text),
        )
        for name, edges, domains, letters, text in _BINARY_CASES
    ]


# =============================================================================
# Bounded Oracle Formulas
# =============================================================================

# Closed, one source letter, at most eight nodes.
ORACLE_FORMULAS: list[str] = [
    "exists x. P1(x)",
    "forall x. box P1(x)",
    "exists x. (P1(x) & ~P1(x))",
    "(exists x. dia P1(x)) & ~dia exists x. P1(x)",
    "dia forall x. ~P1(x)",
]

BINARY_ORACLE_FORMULAS: list[str] = [
    "forall x. exists y. Q(x,y)",
    "(exists x. Q(x,x)) -> forall y. Q(y,y)",
    "forall x. Q(x,x) | exists y. Q(y,y)",
]


# =============================================================================
# Tile Sets
# =============================================================================

def _tile(name: str, left: str, right: str, up: str, down: str) -> Tile:
    return Tile(name=name, left=left, right=right, up=up, down=down)


def tileable_sets() -> list[tuple[str, TileSet]]:
    """Tile sets with small periodic tilings: 1x1, 2x2 and 2x1."""
    return [
        ("uniform", TileSet((_tile("u", "0", "0", "0", "0"),))),
        (
            "checkerboard",
            TileSet((_tile("b", "x", "y", "y", "x"), _tile("w", "y", "x", "x", "y"))),
        ),
        (
            "stripes",
            TileSet((
                _tile("s1", "0", "1", "a", "a"),
                _tile("s2", "1", "0", "b", "b"),
                _tile("s3", "2", "3", "c", "d"),
            )),
        ),
    ]


def untileable_sets() -> list[tuple[str, TileSet]]:
    """Tile sets with no tiling at all."""
    return [
        ("no-horizontal", TileSet((_tile("t", "0", "1", "0", "0"),))),
        (
            "no-vertical",
            TileSet((_tile("p", "0", "0", "1", "2"), _tile("q", "0", "0", "3", "4"))),
        ),
    ]
