"""Exception hierarchy for kripkebench."""

from typing import Any


class KripkeBenchError(Exception):
    """Base error for all kripkebench operations."""
    pass


class FormulaSyntaxError(KripkeBenchError, ValueError):
    """Formula text does not conform to the grammar."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")


class ArityError(KripkeBenchError, ValueError):
    """A predicate letter is used with inconsistent arities."""

    def __init__(self, letter: str, expected: int, found: int):
        self.letter = letter
        self.expected = expected
        self.found = found
        super().__init__(
            f"Letter {letter} used with arity {found}, previously {expected}"
        )


class SubstitutionError(KripkeBenchError, ValueError):
    """A substitution template is ill-formed for its letter."""
    pass


class IndexRangeError(KripkeBenchError, ValueError):
    """An index or power argument is outside its admitted range."""
    pass


class EvaluationError(KripkeBenchError):
    """Truth evaluation was asked something it cannot answer."""
    pass


class ModelValidationError(KripkeBenchError):
    """A model violates the side conditions of its semantics mode."""

    def __init__(self, violations: list[Any]):
        self.violations = violations
        preview = "; ".join(str(v) for v in violations[:3])
        super().__init__(f"Model has {len(violations)} violation(s): {preview}")


class ReductionError(KripkeBenchError):
    """A reduction precondition does not hold."""
    pass


class FrameClassError(ReductionError):
    """The input frame lies outside the frame class required by the track."""

    def __init__(self, track: str, missing: list[str]):
        self.track = track
        self.missing = missing
        super().__init__(
            f"Frame is not in the class for track {track}: missing {', '.join(missing)}"
        )


class TilingError(KripkeBenchError):
    """Error in tile sets or tilings."""
    pass


class EmptyTileSetError(TilingError):
    """A tile set with no tiles."""
    pass


class UnknownTileError(TilingError):
    """A tiling cell references a tile not in the set."""

    def __init__(self, cell: tuple[int, int], tile: str):
        self.cell = cell
        self.tile = tile
        super().__init__(f"Cell {cell} references unknown tile {tile}")


class CountermodelVerificationError(TilingError):
    """A constructed countermodel failed its own model check."""
    pass


class SearchBudgetExceeded(KripkeBenchError):
    """Enumeration gave up before exhausting the bounded space."""

    def __init__(self, budget: int, examined: int):
        self.budget = budget
        self.examined = examined
        super().__init__(f"Search budget of {budget} exceeded after {examined} candidates")


class PassError(KripkeBenchError):
    """Unknown pass or incompatible pipeline stages."""
    pass


class SuiteError(KripkeBenchError):
    """Unknown verification suite."""
    pass
