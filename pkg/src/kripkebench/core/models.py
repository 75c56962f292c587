"""Pydantic models and enums shared across kripkebench."""

from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator


# =============================================================================
# Enumerations
# =============================================================================

class Mode(str, Enum):
    """Semantics used to evaluate a model."""

    MODAL = "modal"
    INTUITIONISTIC = "intuitionistic"
    VISSER = "visser"


class Track(str, Enum):
    """Modal logic whose frame class a reduction targets."""

    K = "k"
    GL = "gl"
    GRZ = "grz"
    KTB = "ktb"


class FrameProperty(str, Enum):
    """Structural properties of an accessibility relation."""

    REFLEXIVE = "reflexive"
    IRREFLEXIVE = "irreflexive"
    TRANSITIVE = "transitive"
    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"
    CONVERGENT = "convergent"
    ACYCLIC = "acyclic"  # strict part has no cycles
    CONVERSE_WELL_FOUNDED = "converse_well_founded"


class ClosureKind(str, Enum):
    """Relation closures applied after model surgery."""

    REFLEXIVE = "reflexive"
    TRANSITIVE = "transitive"
    REFLEXIVE_TRANSITIVE = "reflexive_transitive"
    REFLEXIVE_SYMMETRIC = "reflexive_symmetric"


class PowerKind(str, Enum):
    """Iterated modality shapes."""

    EXACT = "exact"
    UP_TO = "up_to"
    DIAMOND_EXACT = "diamond_exact"
    DIAMOND_UP_TO = "diamond_up_to"


class FrameVariant(str, Enum):
    """Variants of the level frame."""

    INT = "int"
    QFL = "qfl"


class MstarVariant(str, Enum):
    """Logics targeted by the single-letter intuitionistic model surgery."""

    INT = "int"
    QKC = "qkc"
    QFL = "qfl"


class TilingVariant(str, Enum):
    """Tiling encodings."""

    INT = "int"
    VISSER = "visser"


class AtomClause(str, Enum):
    """How the Gödel translation guards atoms."""

    BOX = "box"
    BOX_PLUS = "box_plus"


class ArtifactKind(str, Enum):
    """What a transformation pass consumes or produces."""

    FORMULA = "formula"
    MODEL = "model"
    TILESET = "tileset"


class ViolationKind(str, Enum):
    """Categories of model side-condition failures."""

    RELATION = "relation"
    DOMAIN = "domain"
    EXPANDING_DOMAIN = "expanding_domain"
    ARITY = "arity"
    TUPLE_DOMAIN = "tuple_domain"
    FRAME_CLASS = "frame_class"
    HEREDITY = "heredity"
    LETTER = "letter"


# =============================================================================
# Model Documents
# =============================================================================

class InterpretationEntry(BaseModel):
    """One tuple in the extension of a letter at a world."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    world: str
    letter: str
    values: list[str] = Field(alias="tuple")


class ModelDocument(BaseModel):
    """JSON form of a finite predicate Kripke model."""

    model_config = ConfigDict(extra="forbid")

    mode: Mode = Mode.MODAL
    worlds: list[str]
    relation: list[tuple[str, str]] = Field(default_factory=list)
    domains: dict[str, list[str]]
    interpretation: list[InterpretationEntry] = Field(default_factory=list)


class TileDocument(BaseModel):
    """A tile type with its four edge colours."""

    model_config = ConfigDict(extra="forbid")

    name: str
    left: str
    right: str
    up: str
    down: str


class TileSetDocument(BaseModel):
    """JSON form of a tile set."""

    model_config = ConfigDict(extra="forbid")

    tiles: list[TileDocument]


class TilingDocument(BaseModel):
    """JSON form of a tiling: rows[j][i] names the tile at column i, row j."""

    model_config = ConfigDict(extra="forbid")

    width: int
    height: int
    torus: bool = True
    rows: list[list[str]]


# =============================================================================
# Analysis & Search Models
# =============================================================================

class SyntaxProfile(BaseModel):
    """Syntactic summary of a formula."""

    free_variables: set[str] = Field(default_factory=set)
    variables: set[str] = Field(default_factory=set)  # bound and free
    variable_count: int = 0
    letters: dict[str, tuple[int, int]] = Field(default_factory=dict)  # name -> (arity, count)
    positive: bool = True
    closed: bool = True


class Violation(BaseModel):
    """A single failed side condition of a model."""

    kind: ViolationKind
    worlds: list[str] = Field(default_factory=list)
    letter: str | None = None
    detail: str

    def __str__(self) -> str:
        where = ",".join(self.worlds)
        letter = f" {self.letter}" if self.letter else ""
        return f"{self.kind.value}({where}){letter}: {self.detail}"


class SearchBounds(BaseModel):
    """Bounds and filters for exhaustive model enumeration."""

    max_worlds: int = 1
    max_domain: int = 1
    frame_class: set[FrameProperty] = Field(default_factory=set)
    mode: Mode = Mode.MODAL
    constant_domains: bool = False
    symmetry_reduction: bool = True

    @field_validator("max_worlds", "max_domain")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Validate bounds are positive."""
        if v < 1:
            raise ValueError(f"Bounds must be positive, got {v}")
        return v


# =============================================================================
# Suite Reports
# =============================================================================

class CaseFailure(BaseModel):
    """A single failed check inside a suite."""

    case_id: str
    detail: str
    world: str | None = None
    assignment: dict[str, str] = Field(default_factory=dict)
    formula: str | None = None


class SuiteReport(BaseModel):
    """Machine-readable outcome of a verification suite."""

    suite: str
    params: dict[str, Any] = Field(default_factory=dict)
    cases_run: int = 0
    failures: list[CaseFailure] = Field(default_factory=list)
    wall_time_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        """True when no check failed."""
        return not self.failures
