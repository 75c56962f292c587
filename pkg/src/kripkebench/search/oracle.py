"""Bounded brute-force model search.

Models are enumerated by number of worlds, then relation bitmask, then domain
assignment, then interpretation. The designated world is always w0; world
renamings fixing w0 and individual renamings are quotiented out unless the
bounds disable symmetry reduction.
"""

import logging
from collections.abc import Iterator, Sequence
from itertools import permutations, product

from kripkebench.config import settings
from kripkebench.core.errors import EvaluationError, SearchBudgetExceeded
from kripkebench.core.models import Mode, SearchBounds
from kripkebench.logic.formula import Formula, free_variables
from kripkebench.logic.parser import check_arities
from kripkebench.semantics.evaluator import Evaluator
from kripkebench.semantics.frames import Frame, World, missing_properties
from kripkebench.semantics.model import (
    MODE_FRAME_CLASS,
    Extension,
    Individual,
    Model,
    ensure_valid,
)

logger = logging.getLogger(__name__)

DESIGNATED = "w0"


def world_names(n: int) -> list[World]:
    return [f"w{i}" for i in range(n)]


def individual_names(d: int) -> list[Individual]:
    return [f"a{i}" for i in range(d)]


# =============================================================================
# Frames
# =============================================================================

def _permuted_mask(mask: int, n: int, perm: Sequence[int]) -> int:
    out = 0
    for i in range(n):
        for j in range(n):
            if mask >> (i * n + j) & 1:
                out |= 1 << (perm[i] * n + perm[j])
    return out


def _world_perms(n: int) -> list[tuple[int, ...]]:
    """Permutations of 0..n-1 fixing 0."""
    return [(0, *rest) for rest in permutations(range(1, n))]


def enumerate_frames(n: int, bounds: SearchBounds) -> Iterator[Frame]:
    """Frames on w0..w{n-1} satisfying the bounds' frame class and mode."""
    worlds = world_names(n)
    required = set(bounds.frame_class) | set(MODE_FRAME_CLASS[bounds.mode])
    perms = _world_perms(n) if bounds.symmetry_reduction else []
    for mask in range(1 << (n * n)):
        if any(_permuted_mask(mask, n, p) < mask for p in perms):
            continue
        relation = {
            (worlds[i], worlds[j])
            for i, j in product(range(n), repeat=2)
            if mask >> (i * n + j) & 1
        }
        frame = Frame.of(worlds, relation)
        if missing_properties(frame, required):
            continue
        yield frame


# =============================================================================
# Domains and Interpretations
# =============================================================================

def enumerate_domains(
    frame: Frame,
    d: int,
    bounds: SearchBounds,
) -> Iterator[dict[World, frozenset[Individual]]]:
    """
    Domain assignments over a pool of exactly d individuals.

    Every individual of the pool occurs somewhere and domains grow along the
    relation.
    """
    pool = individual_names(d)
    worlds = frame.worlds
    if bounds.constant_domains:
        yield {w: frozenset(pool) for w in worlds}
        return
    full = (1 << d) - 1
    index = {w: k for k, w in enumerate(worlds)}
    perms = list(permutations(range(d))) if bounds.symmetry_reduction else []

    def relabel(masks: tuple[int, ...], perm: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            sum(1 << perm[i] for i in range(d) if m >> i & 1) for m in masks
        )

    for masks in product(range(1, full + 1), repeat=len(worlds)):
        union = 0
        for m in masks:
            union |= m
        if union != full:
            continue
        if any(masks[index[u]] & ~masks[index[v]] for u, v in frame.relation):
            continue
        if any(relabel(masks, p) < masks for p in perms):
            continue
        yield {
            w: frozenset(pool[i] for i in range(d) if masks[index[w]] >> i & 1)
            for w in worlds
        }


def _subsets(items: list[tuple[Individual, ...]]) -> list[Extension]:
    return [
        frozenset(t for k, t in enumerate(items) if mask >> k & 1)
        for mask in range(1 << len(items))
    ]


def _letter_choices(
    frame: Frame,
    domains: dict[World, frozenset[Individual]],
    arity: int,
    hereditary: bool,
) -> list[tuple[Extension, ...]]:
    """Per-world extensions of one letter, heredity-filtered when required."""
    per_world = [
        _subsets(list(product(sorted(domains[w]), repeat=arity))) for w in frame.worlds
    ]
    index = {w: k for k, w in enumerate(frame.worlds)}
    choices = []
    for combo in product(*per_world):
        if hereditary and any(
            not combo[index[u]] <= combo[index[v]] for u, v in frame.relation
        ):
            continue
        choices.append(combo)
    return choices


def enumerate_models(
    bounds: SearchBounds,
    letters: dict[str, int],
) -> Iterator[Model]:
    """Every model within bounds interpreting the given letters, in search order."""
    if bounds.max_worlds * bounds.max_domain > settings.feasible_cells:
        logger.warning(
            f"Bounds {bounds.max_worlds}x{bounds.max_domain} exceed the feasibility "
            f"limit {settings.feasible_cells}"
        )
    hereditary = bounds.mode is not Mode.MODAL
    names = sorted(letters)
    for n in range(1, bounds.max_worlds + 1):
        for frame in enumerate_frames(n, bounds):
            for d in range(1, bounds.max_domain + 1):
                for domains in enumerate_domains(frame, d, bounds):
                    per_letter = [
                        _letter_choices(frame, domains, letters[name], hereditary)
                        for name in names
                    ]
                    for combo in product(*per_letter):
                        interpretation = {
                            (w, name): ext
                            for name, exts in zip(names, combo, strict=True)
                            for w, ext in zip(frame.worlds, exts, strict=True)
                            if ext
                        }
                        yield Model(frame, domains, interpretation, bounds.mode)


# =============================================================================
# Search
# =============================================================================

def _search(f: Formula, bounds: SearchBounds, want: bool, budget: int | None) -> Model | None:
    if free_variables(f):
        raise EvaluationError(f"Search needs a closed formula; free: {sorted(free_variables(f))}")
    limit = settings.search_budget if budget is None else budget
    examined = 0
    for m in enumerate_models(bounds, check_arities(f)):
        examined += 1
        if examined > limit:
            raise SearchBudgetExceeded(limit, examined)
        if Evaluator(m).sat_at(DESIGNATED, f) is want:
            ensure_valid(m)
            if Evaluator(m).sat_at(DESIGNATED, f) is not want:
                raise EvaluationError("Found model failed re-verification")
            logger.info(f"Search hit after {examined} candidates")
            return m
        if examined % 10_000 == 0:
            logger.debug(f"Examined {examined} candidates")
    logger.info(f"Search exhausted after {examined} candidates")
    return None


def bounded_sat(f: Formula, bounds: SearchBounds, budget: int | None = None) -> Model | None:
    """
    Find a model within bounds whose world w0 satisfies f.

    Returns:
        The first such model in search order, or None if there is none

    Raises:
        EvaluationError: If f has free variables
        SearchBudgetExceeded: If more candidates than the budget are needed
    """
    return _search(f, bounds, True, budget)


def bounded_refute(f: Formula, bounds: SearchBounds, budget: int | None = None) -> Model | None:
    """Find a model within bounds whose world w0 falsifies f."""
    return _search(f, bounds, False, budget)
