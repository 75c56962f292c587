"""Parsing and running pass pipelines."""

import logging
import re
from collections.abc import Callable

from kripkebench.core.errors import PassError
from kripkebench.passes.base import Artifact, Pass, PipelineState, artifact_kind
from kripkebench.passes.factory import get_pass

logger = logging.getLogger(__name__)

# name[:key=value,...][*count]; "×" is accepted for "*"
_STAGE = re.compile(
    r"^(?P<name>[a-z][a-z0-9-]*)"
    r"(?::(?P<params>[^*×]*))?"
    r"(?:\s*[*×]\s*(?P<count>\d+))?$"
)

StageCallback = Callable[[int, Pass, Artifact], None]


def parse_stage(text: str) -> list[Pass]:
    """
    Parse one stage such as "star-int:depth=n" or "eliminate-binary*2".

    Raises:
        PassError: If the stage is malformed or names an unknown pass
    """
    match = _STAGE.match(text.strip())
    if match is None:
        raise PassError(f"Malformed pipeline stage: {text.strip()!r}")
    params: dict[str, str] = {}
    for item in filter(None, (p.strip() for p in (match.group("params") or "").split(","))):
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise PassError(f"Malformed parameter {item!r} in stage {text.strip()!r}")
        params[key.strip()] = value.strip()
    count = int(match.group("count") or 1)
    if count < 1:
        raise PassError(f"Repeat count must be positive in {text.strip()!r}")
    return [get_pass(match.group("name"), **params) for _ in range(count)]


def parse_pipeline(text: str) -> list[Pass]:
    """Parse stages separated by "|"; blank text is the empty pipeline."""
    passes: list[Pass] = []
    for stage in text.split("|"):
        if stage.strip():
            passes.extend(parse_stage(stage))
    return passes


def run_pipeline(
    passes: list[Pass],
    artifact: Artifact,
    state: PipelineState | None = None,
    on_stage: StageCallback | None = None,
) -> Artifact:
    """
    Apply passes left to right.

    Args:
        passes: Passes to apply; the empty list returns the input unchanged
        artifact: Formula, model or tile set
        state: Shared state, fresh if omitted
        on_stage: Called with (index, pass, output) after every stage

    Raises:
        PassError: If a pass receives an artifact of the wrong kind
    """
    state = state if state is not None else PipelineState()
    current = artifact
    for index, p in enumerate(passes):
        kind = artifact_kind(current)
        if kind is not p.input_kind:
            raise PassError(
                f"Stage {index + 1} ({p!r}) expects a {p.input_kind.value}, got a {kind.value}"
            )
        current = p.apply(current, state)
        logger.info(f"Applied {p!r} ({p.input_kind.value} -> {p.output_kind.value})")
        if on_stage is not None:
            on_stage(index, p, current)
    return current
