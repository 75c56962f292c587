"""Letter inventory and track for the single-letter reductions."""

import re
from dataclasses import dataclass

from kripkebench.core.errors import ReductionError
from kripkebench.core.models import Track
from kripkebench.logic.formula import Formula, Variable, variables
from kripkebench.logic.parser import check_arities

_NUMBERED = re.compile(r"^(.*?)(\d+)$")


def natural_key(name: str) -> tuple[str, int]:
    match = _NUMBERED.match(name)
    if match is None:
        return name, -1
    return match.group(1), int(match.group(2))


@dataclass(frozen=True)
class ReductionContext:
    """
    Source letters P_1..P_n, the fresh guard letter P_{n+1} and the target P.

    The guard variable is the variable used in the guard formula and in every
    gadget template parameter.
    """

    letters: tuple[str, ...]
    fresh: str
    target: str = "P"
    track: Track = Track.K
    var: Variable = "x"

    def __post_init__(self) -> None:
        if not self.letters:
            raise ReductionError("At least one source letter is required")
        if len(set(self.letters)) != len(self.letters):
            raise ReductionError(f"Source letters repeat: {list(self.letters)}")
        if self.fresh in self.letters:
            raise ReductionError(f"Fresh letter {self.fresh} is one of the source letters")
        if self.target in self.letters or self.target == self.fresh:
            raise ReductionError(f"Target letter {self.target} collides with a source letter")

    @property
    def n(self) -> int:
        return len(self.letters)

    @property
    def all_letters(self) -> tuple[str, ...]:
        """P_1, ..., P_n, P_{n+1}."""
        return (*self.letters, self.fresh)

    def letter(self, k: int) -> str:
        """P_k for 1 <= k <= n+1."""
        if not 1 <= k <= self.n + 1:
            raise ReductionError(f"Letter index must be in 1..{self.n + 1}, got {k}")
        return self.all_letters[k - 1]

    @classmethod
    def standard(cls, n: int, track: Track = Track.K, var: Variable = "x") -> "ReductionContext":
        """Letters P1..Pn with fresh P{n+1} and target P."""
        if n < 1:
            raise ReductionError(f"n must be at least 1, got {n}")
        return cls(
            letters=tuple(f"P{i}" for i in range(1, n + 1)),
            fresh=f"P{n + 1}",
            track=track,
            var=var,
        )

    @classmethod
    def for_formula(cls, f: Formula, track: Track = Track.K) -> "ReductionContext":
        """
        Context whose source letters are the monadic letters of f.

        Raises:
            ReductionError: If f uses a non-monadic letter or the target letter
        """
        arities = check_arities(f)
        bad = sorted(name for name, arity in arities.items() if arity != 1)
        if bad:
            raise ReductionError(f"Source formula must be monadic; offending letters: {bad}")
        if not arities:
            raise ReductionError("Source formula has no predicate letters")
        letters = tuple(sorted(arities, key=natural_key))
        taken = set(letters)
        fresh_index = len(letters) + 1
        while f"P{fresh_index}" in taken:
            fresh_index += 1
        names = sorted(variables(f))
        if "P" in taken:
            raise ReductionError("Source formula already uses the target letter P")
        return cls(
            letters=letters,
            fresh=f"P{fresh_index}",
            track=track,
            var=names[0] if names else "x",
        )
