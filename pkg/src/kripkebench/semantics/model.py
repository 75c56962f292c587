"""Finite predicate Kripke models, their side conditions and JSON form."""

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field, replace
from functools import cached_property

from kripkebench.core.errors import ModelValidationError
from kripkebench.core.models import (
    FrameProperty,
    InterpretationEntry,
    Mode,
    ModelDocument,
    Violation,
    ViolationKind,
)
from kripkebench.logic.parser import KEYWORDS
from kripkebench.semantics.frames import Frame, World, has_property

logger = logging.getLogger(__name__)

Individual = str
Extension = frozenset[tuple[Individual, ...]]

# Frame conditions each semantics mode requires beyond expanding domains.
MODE_FRAME_CLASS: dict[Mode, tuple[FrameProperty, ...]] = {
    Mode.MODAL: (),
    Mode.INTUITIONISTIC: (
        FrameProperty.REFLEXIVE,
        FrameProperty.TRANSITIVE,
        FrameProperty.ANTISYMMETRIC,
    ),
    Mode.VISSER: (FrameProperty.TRANSITIVE, FrameProperty.ANTISYMMETRIC),
}


@dataclass(frozen=True, eq=False)
class Model:
    """A finite predicate Kripke model; missing (world, letter) keys mean empty."""

    frame: Frame
    domains: Mapping[World, frozenset[Individual]]
    interpretation: Mapping[tuple[World, str], Extension] = field(default_factory=dict)
    mode: Mode = Mode.MODAL

    @property
    def worlds(self) -> tuple[World, ...]:
        return self.frame.worlds

    def successors(self, w: World) -> tuple[World, ...]:
        return self.frame.successors.get(w, ())

    def domain(self, w: World) -> frozenset[Individual]:
        return self.domains[w]

    def extension(self, w: World, letter: str) -> Extension:
        return self.interpretation.get((w, letter), frozenset())

    def holds(self, w: World, letter: str, *values: Individual) -> bool:
        return tuple(values) in self.extension(w, letter)

    @cached_property
    def letters(self) -> frozenset[str]:
        return frozenset(letter for _, letter in self.interpretation)

    def with_mode(self, mode: Mode) -> "Model":
        return replace(self, mode=mode)

    def with_frame(self, frame: Frame) -> "Model":
        return replace(self, frame=frame)

    def restrict(self, keep: Iterable[World]) -> "Model":
        """Submodel on the given worlds."""
        kept = set(keep)
        return Model(
            frame=self.frame.restrict(kept),
            domains={w: d for w, d in self.domains.items() if w in kept},
            interpretation={k: v for k, v in self.interpretation.items() if k[0] in kept},
            mode=self.mode,
        )


def build_model(
    worlds: Iterable[World],
    relation: Iterable[tuple[World, World]],
    domains: Mapping[World, Iterable[Individual]],
    interpretation: Mapping[tuple[World, str], Iterable[Iterable[Individual]]] | None = None,
    mode: Mode = Mode.MODAL,
) -> Model:
    """Convenience constructor from plain collections."""
    interp = {
        key: frozenset(tuple(t) for t in tuples)
        for key, tuples in (interpretation or {}).items()
    }
    return Model(
        frame=Frame.of(worlds, relation),
        domains={w: frozenset(d) for w, d in domains.items()},
        interpretation=interp,
        mode=mode,
    )


def constant_domain_model(
    worlds: Iterable[World],
    relation: Iterable[tuple[World, World]],
    domain: Iterable[Individual],
    interpretation: Mapping[tuple[World, str], Iterable[Iterable[Individual]]] | None = None,
    mode: Mode = Mode.MODAL,
) -> Model:
    worlds = tuple(worlds)
    shared = frozenset(domain)
    return build_model(worlds, relation, {w: shared for w in worlds}, interpretation, mode)


# =============================================================================
# Validation
# =============================================================================

def validate(m: Model) -> list[Violation]:
    """
    Check the side conditions for the model's semantics mode.

    Violations are returned as data; an empty list means the model is valid.
    """
    violations: list[Violation] = []
    worlds = set(m.worlds)

    for u, v in sorted(m.frame.relation):
        if u not in worlds or v not in worlds:
            violations.append(Violation(
                kind=ViolationKind.RELATION,
                worlds=[u, v],
                detail="relation pair uses an unknown world",
            ))

    for w in m.worlds:
        if not m.domains.get(w):
            violations.append(Violation(
                kind=ViolationKind.DOMAIN, worlds=[w], detail="domain missing or empty"
            ))

    for u, v in sorted(m.frame.relation):
        if u in m.domains and v in m.domains and not m.domains[u] <= m.domains[v]:
            violations.append(Violation(
                kind=ViolationKind.EXPANDING_DOMAIN,
                worlds=[u, v],
                detail="domain shrinks along the relation",
            ))

    for letter in sorted(m.letters & KEYWORDS):
        violations.append(Violation(
            kind=ViolationKind.LETTER,
            letter=letter,
            detail="a formula keyword cannot name a letter",
        ))

    arities: dict[str, int] = {}
    for (w, letter), tuples in sorted(m.interpretation.items()):
        if w not in worlds:
            violations.append(Violation(
                kind=ViolationKind.TUPLE_DOMAIN,
                worlds=[w],
                letter=letter,
                detail="interpretation at an unknown world",
            ))
            continue
        for t in sorted(tuples):
            expected = arities.setdefault(letter, len(t))
            if len(t) != expected:
                violations.append(Violation(
                    kind=ViolationKind.ARITY,
                    worlds=[w],
                    letter=letter,
                    detail=f"tuple {list(t)} has width {len(t)}, expected {expected}",
                ))
            outside = [a for a in t if a not in m.domains.get(w, frozenset())]
            if outside:
                violations.append(Violation(
                    kind=ViolationKind.TUPLE_DOMAIN,
                    worlds=[w],
                    letter=letter,
                    detail=f"tuple {list(t)} uses individuals outside D({w}): {outside}",
                ))

    for prop in MODE_FRAME_CLASS[m.mode]:
        if not has_property(m.frame, prop):
            violations.append(Violation(
                kind=ViolationKind.FRAME_CLASS,
                detail=f"{m.mode.value} mode requires a {prop.value} relation",
            ))

    if m.mode is not Mode.MODAL:
        for u, v in sorted(m.frame.relation):
            for letter in sorted(m.letters):
                lost = m.extension(u, letter) - m.extension(v, letter)
                if lost:
                    violations.append(Violation(
                        kind=ViolationKind.HEREDITY,
                        worlds=[u, v],
                        letter=letter,
                        detail=f"tuples {sorted(list(t) for t in lost)} not inherited",
                    ))

    return violations


def ensure_valid(m: Model) -> Model:
    """
    Return m unchanged if it validates.

    Raises:
        ModelValidationError: If validate reports any violation
    """
    violations = validate(m)
    if violations:
        raise ModelValidationError(violations)
    return m


# =============================================================================
# JSON Conversion
# =============================================================================

def model_from_document(doc: ModelDocument) -> Model:
    interpretation: dict[tuple[World, str], set[tuple[Individual, ...]]] = {}
    for entry in doc.interpretation:
        interpretation.setdefault((entry.world, entry.letter), set()).add(tuple(entry.values))
    return build_model(doc.worlds, doc.relation, doc.domains, interpretation, doc.mode)


def model_to_document(m: Model) -> ModelDocument:
    entries = [
        InterpretationEntry(world=w, letter=letter, values=list(t))
        for (w, letter), tuples in sorted(m.interpretation.items())
        for t in sorted(tuples)
    ]
    return ModelDocument(
        mode=m.mode,
        worlds=list(m.worlds),
        relation=sorted(m.frame.relation),
        domains={w: sorted(m.domains[w]) for w in m.worlds},
        interpretation=entries,
    )


def model_to_json(m: Model) -> str:
    return model_to_document(m).model_dump_json(by_alias=True, indent=2)


def model_from_json(text: str) -> Model:
    return model_from_document(ModelDocument.model_validate_json(text))
