"""Abstract base class for transformation passes and the state they share."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import ClassVar, TypeVar

from kripkebench.core.errors import PassError
from kripkebench.core.models import ArtifactKind, Track
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
from kripkebench.reductions.context import ReductionContext
from kripkebench.semantics.model import Model
from kripkebench.tiling.tiles import TileSet

Artifact = Formula | Model | TileSet

E = TypeVar("E", bound=Enum)

_FORMULA_TYPES = (Atom, Bot, Top, Neg, And, Or, Imp, Box, Dia, Forall, Exists)


def artifact_kind(artifact: Artifact) -> ArtifactKind:
    if isinstance(artifact, Model):
        return ArtifactKind.MODEL
    if isinstance(artifact, TileSet):
        return ArtifactKind.TILESET
    if isinstance(artifact, _FORMULA_TYPES):
        return ArtifactKind.FORMULA
    raise PassError(f"Not a pipeline artifact: {type(artifact).__name__}")


class Stage(str, Enum):
    """How far a formula has gone through the guarded embedding."""

    SOURCE = "source"
    PRIMED = "primed"
    STARRED = "starred"


@dataclass
class PipelineState:
    """
    State threaded through one pipeline run.

    context is fixed by the first pass that needs one. binary_count numbers
    the fresh letters of successive binary eliminations, and renaming records
    how star-int mapped letters onto P1..Pn.
    """

    context: ReductionContext | None = None
    stage: Stage = Stage.SOURCE
    binary_count: int = 0
    renaming: dict[str, str] = field(default_factory=dict)


class Pass(ABC):
    """A named, parameterized transformation of one artifact kind into another."""

    params_allowed: ClassVar[frozenset[str]] = frozenset()

    def __init__(self, **params: str):
        unknown = sorted(set(params) - self.params_allowed)
        if unknown:
            raise PassError(
                f"Pass {self.name} does not take {unknown}. "
                f"Accepted: {sorted(self.params_allowed)}"
            )
        self.params = params

    @property
    @abstractmethod
    def name(self) -> str:
        """Return the pass name used in pipelines."""
        pass

    @property
    @abstractmethod
    def input_kind(self) -> ArtifactKind:
        """Return the artifact kind this pass consumes."""
        pass

    @property
    @abstractmethod
    def output_kind(self) -> ArtifactKind:
        """Return the artifact kind this pass produces."""
        pass

    @abstractmethod
    def apply(self, artifact: Artifact, state: PipelineState) -> Artifact:
        """
        Transform one artifact.

        Args:
            artifact: Input of kind input_kind
            state: Pipeline state, updated in place

        Returns:
            Output of kind output_kind
        """
        pass

    # Parameter helpers

    def int_param(self, key: str, default: int | None = None) -> int | None:
        raw = self.params.get(key)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError:
            raise PassError(f"Pass {self.name}: {key} must be an integer, got {raw}") from None

    def enum_param(self, key: str, enum: type[E], default: E) -> E:
        raw = self.params.get(key)
        if raw is None:
            return default
        try:
            return enum(raw.lower())
        except ValueError:
            choices = [e.value for e in enum]
            raise PassError(
                f"Pass {self.name}: {key} must be one of {choices}, got {raw}"
            ) from None

    def track_param(self, state: PipelineState) -> Track:
        default = state.context.track if state.context else Track.K
        return self.enum_param("track", Track, default)

    def __repr__(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.name}:{args}" if args else self.name
