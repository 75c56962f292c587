"""Command-line entry point for kripkebench."""

import json
import logging
import sys
from typing import Any, TextIO

import click

from kripkebench import __version__
from kripkebench.config import settings
from kripkebench.core.errors import KripkeBenchError, SearchBudgetExceeded
from kripkebench.core.models import (
    ArtifactKind,
    FrameProperty,
    FrameVariant,
    Mode,
    SearchBounds,
    SuiteReport,
    TilingVariant,
    Track,
)
from kripkebench.logic.analysis import node_count, profile
from kripkebench.logic.formula import Formula
from kripkebench.logic.parser import parse
from kripkebench.logic.printer import to_text
from kripkebench.passes.base import Artifact, Pass, PipelineState, artifact_kind
from kripkebench.passes.factory import get_pass, list_passes
from kripkebench.passes.pipeline import parse_pipeline, run_pipeline
from kripkebench.reductions.frame_f import a_suitable_f, build_frame_f
from kripkebench.reductions.gadgets import build_gadget
from kripkebench.reductions.modal import normalize_modal_basis
from kripkebench.search.oracle import DESIGNATED, bounded_refute, bounded_sat
from kripkebench.semantics.evaluator import evaluate, sat_at
from kripkebench.semantics.model import Model, model_from_json, model_to_json
from kripkebench.suites.factory import get_suite, list_suites, suite_aliases
from kripkebench.tiling.encoding import encode_tiling
from kripkebench.tiling.tiles import TileSet, Tiling, check_tiling, find_periodic_tiling

logger = logging.getLogger(__name__)


class _Group(click.Group):
    """Turns library errors into clean command-line failures."""

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except KripkeBenchError as e:
            raise click.ClickException(f"{type(e).__name__}: {e}") from e


def _as_json(ctx: click.Context) -> bool:
    return bool(ctx.obj and ctx.obj.get("format") == "json")


def _emit(ctx: click.Context, text: str, payload: Any) -> None:
    if _as_json(ctx):
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        click.echo(text)


def _formula_arg(text: str) -> Formula:
    """Formula from literal text, or from stdin for "-"."""
    return parse(sys.stdin.read() if text == "-" else text)


def _key_values(items: tuple[str, ...]) -> dict[str, str]:
    params = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise click.BadParameter(f"expected key=value, got {item!r}")
        params[key.strip()] = value.strip()
    return params


def _frame_class(
    ctx: click.Context, param: click.Parameter, value: str | None
) -> set[FrameProperty]:
    if not value:
        return set()
    try:
        return {FrameProperty(name.strip()) for name in value.split(",") if name.strip()}
    except ValueError as e:
        choices = ", ".join(p.value for p in FrameProperty)
        raise click.BadParameter(f"{e}; choose from {choices}") from e


def _read_artifact(source: TextIO, kind: ArtifactKind) -> Artifact:
    text = source.read()
    if kind is ArtifactKind.MODEL:
        return model_from_json(text)
    if kind is ArtifactKind.TILESET:
        return TileSet.from_json(text)
    return parse(text)


def _render_artifact(artifact: Artifact) -> tuple[str, Any]:
    """Text and JSON renderings of a pipeline artifact."""
    kind = artifact_kind(artifact)
    if isinstance(artifact, Model):
        text = model_to_json(artifact)
        return text, json.loads(text)
    if isinstance(artifact, TileSet):
        payload = artifact.to_document().model_dump()
        return json.dumps(payload, indent=2), payload
    text = to_text(artifact)
    return text, {"kind": kind.value, "formula": text, "nodes": node_count(artifact)}


@click.group(cls=_Group)
@click.version_option(__version__, prog_name="kripkebench")
@click.option("--seed", type=int, default=None, help="Seed for randomized choices.")
@click.option("--budget", type=int, default=None, help="Candidate budget for bounded search.")
@click.option("--trace", is_flag=True, help="Debug logging and intermediate pipeline dumps.")
@click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text", help="Output format."
)
@click.pass_context
def cli(ctx: click.Context, seed: int | None, budget: int | None, trace: bool, fmt: str) -> None:
    """Reduction passes and finite-model checks for two-variable monadic logics."""
    if seed is not None:
        settings.seed = seed
    if budget is not None:
        if budget < 1:
            raise click.BadParameter(f"must be positive, got {budget}", param_hint="--budget")
        settings.search_budget = budget
    logging.basicConfig(
        level=logging.DEBUG if trace else settings.log_level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    ctx.ensure_object(dict)
    ctx.obj.update(format=fmt, trace=trace)


# =============================================================================
# Formulas
# =============================================================================

@cli.command("parse")
@click.argument("formula")
@click.pass_context
def parse_cmd(ctx: click.Context, formula: str) -> None:
    """Parse FORMULA ("-" reads stdin) and echo its canonical text."""
    f = _formula_arg(formula)
    text, payload = _render_artifact(f)
    _emit(ctx, text, payload)


@cli.command("print")
@click.argument("formula")
@click.option("--modal-basis", is_flag=True, help="Rewrite into the &, ~, box, forall basis.")
@click.pass_context
def print_cmd(ctx: click.Context, formula: str, modal_basis: bool) -> None:
    """Pretty-print FORMULA."""
    f = _formula_arg(formula)
    if modal_basis:
        f = normalize_modal_basis(f)
    text, payload = _render_artifact(f)
    _emit(ctx, text, payload)


@cli.command("profile")
@click.argument("formula")
def profile_cmd(formula: str) -> None:
    """Letters, variables, positivity and closedness of FORMULA as JSON."""
    click.echo(profile(_formula_arg(formula)).model_dump_json(indent=2))


@cli.command("eval")
@click.argument("model", type=click.File("r"))
@click.argument("formula")
@click.option("--world", "-w", default=DESIGNATED, show_default=True)
@click.option("--assign", "-a", multiple=True, help="Variable assignment var=individual.")
@click.pass_context
def eval_cmd(
    ctx: click.Context, model: TextIO, formula: str, world: str, assign: tuple[str, ...]
) -> None:
    """Evaluate FORMULA at a world of MODEL (JSON file, "-" for stdin)."""
    m = model_from_json(model.read())
    f = parse(formula)
    g = _key_values(assign)
    value = evaluate(m, world, g, f) if g else sat_at(m, world, f)
    _emit(ctx, "true" if value else "false", {"world": world, "assignment": g, "value": value})


# =============================================================================
# Passes
# =============================================================================

def _run_passes(
    ctx: click.Context, passes: list[Pass], source: TextIO, kind: ArtifactKind
) -> None:
    artifact = _read_artifact(source, kind)

    def dump(index: int, p: Pass, out: Artifact) -> None:
        click.echo(f"--- stage {index + 1}: {p!r}", err=True)
        click.echo(_render_artifact(out)[0], err=True)

    result = run_pipeline(
        passes, artifact, PipelineState(), dump if ctx.obj.get("trace") else None
    )
    text, payload = _render_artifact(result)
    _emit(ctx, text, payload)


_KIND = click.Choice([k.value for k in ArtifactKind])


@cli.command("transform")
@click.argument("pass_name", metavar="PASS")
@click.argument("source", type=click.File("r"), default="-")
@click.option("--kind", type=_KIND, default=ArtifactKind.FORMULA.value, show_default=True)
@click.option("--param", "-p", multiple=True, help="Pass parameter key=value.")
@click.pass_context
def transform_cmd(
    ctx: click.Context, pass_name: str, source: TextIO, kind: str, param: tuple[str, ...]
) -> None:
    """Apply one named pass to SOURCE."""
    _run_passes(ctx, [get_pass(pass_name, **_key_values(param))], source, ArtifactKind(kind))


@cli.command("pipe")
@click.argument("pipeline", required=False, default="")
@click.argument("source", type=click.File("r"), default="-")
@click.option("--kind", type=_KIND, default=ArtifactKind.FORMULA.value, show_default=True)
@click.option("--list", "list_only", is_flag=True, help="List pass names and exit.")
@click.pass_context
def pipe_cmd(
    ctx: click.Context, pipeline: str, source: TextIO, kind: str, list_only: bool
) -> None:
    """
    Run PIPELINE on SOURCE.

    Stages are separated by "|", e.g. "prime | star | embed-e" or
    "encode-tiling | eliminate-binary*2 | expand-prop | star-int:depth=shallow".
    """
    if list_only:
        click.echo("\n".join(list_passes()))
        return
    _run_passes(ctx, parse_pipeline(pipeline), source, ArtifactKind(kind))


# =============================================================================
# Constructions
# =============================================================================

@cli.command("gadget")
@click.option("--k", "k", type=int, required=True, help="Gadget level.")
@click.option("--track", type=click.Choice([t.value for t in Track]), default="gl")
@click.option("--pivot", default="a", show_default=True)
@click.option("--domain", default="a,b", show_default=True, help="Comma-separated individuals.")
@click.option("--target", default="P", show_default=True)
@click.option("--reflexive", is_flag=True)
def gadget_cmd(
    k: int, track: str, pivot: str, domain: str, target: str, reflexive: bool
) -> None:
    """Emit the pivot-suitable gadget model of level K as JSON."""
    individuals = {d.strip() for d in domain.split(",") if d.strip()}
    m = build_gadget(k, Track(track), pivot, individuals, target, reflexive)
    click.echo(model_to_json(m))


@cli.command("frame-f")
@click.option("--depth", type=int, required=True)
@click.option("--variant", type=click.Choice([v.value for v in FrameVariant]), default="int")
@click.option("--domain", default="a,b,c", show_default=True)
@click.option("--pivot", default="a", show_default=True)
@click.option("--helper", default="b", show_default=True)
def frame_f_cmd(depth: int, variant: str, domain: str, pivot: str, helper: str) -> None:
    """Emit the pivot-suitable level frame truncated at DEPTH as JSON."""
    fr = build_frame_f(depth, FrameVariant(variant))
    individuals = {d.strip() for d in domain.split(",") if d.strip()}
    click.echo(model_to_json(a_suitable_f(fr, individuals, pivot, helper)))


# =============================================================================
# Tilings
# =============================================================================

@cli.command("encode-tiling")
@click.argument("tileset", type=click.File("r"))
@click.option("--variant", type=click.Choice([v.value for v in TilingVariant]), default="int")
@click.pass_context
def encode_tiling_cmd(ctx: click.Context, tileset: TextIO, variant: str) -> None:
    """Emit the tiling formula of TILESET."""
    encoding = encode_tiling(TileSet.from_json(tileset.read()), TilingVariant(variant))
    text = to_text(encoding.phi)
    payload = {
        "formula": text,
        "antecedent": to_text(encoding.psi),
        "parts": {label: to_text(part) for label, part in encoding.parts.items()},
    }
    _emit(ctx, text, payload)


@cli.command("tile-check")
@click.argument("tileset", type=click.File("r"))
@click.argument("tiling", type=click.File("r"))
@click.pass_context
def tile_check_cmd(ctx: click.Context, tileset: TextIO, tiling: TextIO) -> None:
    """Check TILING against TILESET; exit 1 if invalid."""
    ok = check_tiling(TileSet.from_json(tileset.read()), Tiling.from_json(tiling.read()))
    _emit(ctx, "VALID" if ok else "INVALID", {"valid": ok})
    if not ok:
        ctx.exit(1)


@cli.command("tile-find")
@click.argument("tileset", type=click.File("r"))
@click.option("--width", type=int, required=True)
@click.option("--height", type=int, required=True)
@click.option("--budget", type=int, default=None, help="Placement budget.")
@click.pass_context
def tile_find_cmd(
    ctx: click.Context, tileset: TextIO, width: int, height: int, budget: int | None
) -> None:
    """Find a WIDTH x HEIGHT torus tiling; prints NONE if there is none."""
    ts = TileSet.from_json(tileset.read())
    try:
        tau = find_periodic_tiling(ts, width, height, budget)
    except SearchBudgetExceeded as e:
        click.echo(f"BUDGET after {e.examined} placements", err=True)
        click.echo("BUDGET")
        ctx.exit(2)
    if tau is None:
        _emit(ctx, "NONE", None)
        return
    click.echo(tau.to_document().model_dump_json(indent=2))


# =============================================================================
# Search
# =============================================================================

@cli.command("sat")
@click.argument("formula")
@click.option("--max-worlds", type=int, default=None)
@click.option("--max-domain", type=int, default=None)
@click.option("--mode", type=click.Choice([m.value for m in Mode]), default="modal")
@click.option("--constant-domains", is_flag=True)
@click.option(
    "--class",
    "frame_class",
    callback=_frame_class,
    help="Comma-separated frame properties every candidate frame must have.",
)
@click.option("--refute", is_flag=True, help="Search for a world where FORMULA fails.")
@click.pass_context
def sat_cmd(
    ctx: click.Context,
    formula: str,
    max_worlds: int | None,
    max_domain: int | None,
    mode: str,
    constant_domains: bool,
    frame_class: set[FrameProperty],
    refute: bool,
) -> None:
    """
    Bounded model search with w0 as the designated world.

    Prints the model as JSON, NONE if the bounds hold none, or BUDGET (exit
    code 2) if the candidate budget runs out first.
    """
    f = _formula_arg(formula)
    bounds = SearchBounds(
        max_worlds=max_worlds or settings.max_worlds,
        max_domain=max_domain or settings.max_domain,
        frame_class=frame_class,
        mode=Mode(mode),
        constant_domains=constant_domains,
    )
    search = bounded_refute if refute else bounded_sat
    try:
        found = search(f, bounds)
    except SearchBudgetExceeded as e:
        click.echo(f"Budget of {e.budget} candidates exhausted", err=True)
        click.echo("BUDGET")
        ctx.exit(2)
    if found is None:
        _emit(ctx, "NONE", None)
        return
    click.echo(model_to_json(found))


# =============================================================================
# Suites
# =============================================================================

def _summary(report: SuiteReport) -> str:
    status = "ok" if report.passed else "FAILED"
    return (
        f"{report.suite}: {status} ({report.cases_run} cases, "
        f"{len(report.failures)} failures, {report.wall_time_seconds:.2f}s)"
    )


@cli.command("verify")
@click.argument("names", nargs=-1)
@click.option("--all", "run_all", is_flag=True, help="Run every registered suite.")
@click.option("--param", "-p", multiple=True, help="Suite parameter key=value (integers).")
@click.option("--list", "list_only", is_flag=True, help="List suites and exit.")
@click.pass_context
def verify_cmd(
    ctx: click.Context,
    names: tuple[str, ...],
    run_all: bool,
    param: tuple[str, ...],
    list_only: bool,
) -> None:
    """
    Run verification suites; exit 1 if any check fails.

    Reports go to stdout as JSON, one summary line per suite to stderr.
    """
    if list_only:
        for name in list_suites():
            aliases = suite_aliases(name)
            also = f" (also {', '.join(aliases)})" if aliases else ""
            click.echo(f"{name}: {get_suite(name).description}{also}")
        return
    selected = list_suites() if run_all else list(names)
    if not selected:
        raise click.UsageError("Name at least one suite or pass --all")
    try:
        params = {k: int(v) for k, v in _key_values(param).items()}
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--param") from e

    reports = []
    for name in selected:
        suite = get_suite(name)
        accepted = {k: v for k, v in params.items() if k in suite.defaults}
        report = suite.execute(**accepted) if run_all else suite.execute(**params)
        click.echo(_summary(report), err=True)
        reports.append(report.model_dump(mode="json"))
    click.echo(json.dumps(reports[0] if len(reports) == 1 else reports, indent=2))
    if any(r["failures"] for r in reports):
        ctx.exit(1)


def main() -> None:
    """Run the command line."""
    cli(obj={})


if __name__ == "__main__":
    main()
