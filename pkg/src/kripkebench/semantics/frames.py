"""Kripke frames, relation closures and frame properties."""

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

from kripkebench.core.models import ClosureKind, FrameProperty

logger = logging.getLogger(__name__)

World = str


@dataclass(frozen=True)
class Frame:
    """A finite set of worlds with an accessibility relation."""

    worlds: tuple[World, ...]
    relation: frozenset[tuple[World, World]] = field(default_factory=frozenset)

    @classmethod
    def of(cls, worlds: Iterable[World], relation: Iterable[tuple[World, World]]) -> "Frame":
        return cls(tuple(worlds), frozenset(relation))

    @cached_property
    def successors(self) -> dict[World, tuple[World, ...]]:
        succ: dict[World, list[World]] = {w: [] for w in self.worlds}
        for u, v in sorted(self.relation):
            succ.setdefault(u, []).append(v)
        return {w: tuple(vs) for w, vs in succ.items()}

    def sees(self, u: World, v: World) -> bool:
        return (u, v) in self.relation

    def to_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.worlds)
        graph.add_edges_from(self.relation)
        return graph

    def restrict(self, keep: Iterable[World]) -> "Frame":
        """Subframe induced by the given worlds, in this frame's order."""
        kept = set(keep)
        return Frame(
            tuple(w for w in self.worlds if w in kept),
            frozenset((u, v) for u, v in self.relation if u in kept and v in kept),
        )

    def has(self, prop: FrameProperty) -> bool:
        return has_property(self, prop)


def closure(fr: Frame, kind: ClosureKind) -> Frame:
    """
    Least extension of the relation with the named property.

    Args:
        fr: Frame to close
        kind: Closure to apply

    Returns:
        Frame over the same worlds
    """
    graph = fr.to_graph()
    if kind is ClosureKind.REFLEXIVE:
        edges = set(fr.relation) | {(w, w) for w in fr.worlds}
    elif kind is ClosureKind.TRANSITIVE:
        # reflexive=False still adds a loop at every world on a cycle
        edges = set(nx.transitive_closure(graph, reflexive=False).edges())
    elif kind is ClosureKind.REFLEXIVE_TRANSITIVE:
        edges = set(nx.transitive_closure(graph, reflexive=True).edges())
    else:
        edges = set(fr.relation) | {(v, u) for u, v in fr.relation}
        edges |= {(w, w) for w in fr.worlds}
    logger.debug(f"{kind.value} closure: {len(fr.relation)} -> {len(edges)} edges")
    return Frame(fr.worlds, frozenset(edges))


def _strict_part(fr: Frame) -> nx.DiGraph:
    graph = fr.to_graph()
    graph.remove_edges_from(nx.selfloop_edges(graph))
    return graph


def has_property(fr: Frame, prop: FrameProperty) -> bool:
    """Compute a structural property of the frame's relation."""
    rel = fr.relation
    if prop is FrameProperty.REFLEXIVE:
        return all((w, w) in rel for w in fr.worlds)
    if prop is FrameProperty.IRREFLEXIVE:
        return all(u != v for u, v in rel)
    if prop is FrameProperty.SYMMETRIC:
        return all((v, u) in rel for u, v in rel)
    if prop is FrameProperty.ANTISYMMETRIC:
        return all(u == v or (v, u) not in rel for u, v in rel)
    if prop is FrameProperty.TRANSITIVE:
        succ = fr.successors
        return all((u, x) in rel for u, v in rel for x in succ.get(v, ()))
    if prop is FrameProperty.CONVERGENT:
        succ = fr.successors
        for u in fr.worlds:
            for v1 in succ[u]:
                for v2 in succ[u]:
                    if not set(succ[v1]) & set(succ[v2]):
                        return False
        return True
    if prop is FrameProperty.ACYCLIC:
        return bool(nx.is_directed_acyclic_graph(_strict_part(fr)))
    return has_property(fr, FrameProperty.IRREFLEXIVE) and has_property(
        fr, FrameProperty.ACYCLIC
    )


def frame_properties(fr: Frame) -> set[FrameProperty]:
    return {prop for prop in FrameProperty if has_property(fr, prop)}


def missing_properties(fr: Frame, required: Iterable[FrameProperty]) -> list[FrameProperty]:
    return [prop for prop in required if not has_property(fr, prop)]
