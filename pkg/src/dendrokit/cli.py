"""CLI interface for dendrokit: K0 groups, Kan checks, Omega listings and verification suites."""

import functools
import logging
import sys
from typing import Callable, Optional

import click
from dotenv import load_dotenv
from pydantic import BaseModel, ValidationError

from dendrokit import __version__

EXIT_FAILED = 1
EXIT_INPUT = 2


def _setup(log_level: Optional[str]):
    """Load .env and the bounds file, then configure logging on stderr."""
    load_dotenv()

    from .config import EngineConfig

    config = EngineConfig.load()
    logging.basicConfig(
        level=(log_level or config.log_level).upper(),
        format="%(asctime)s [%(levelname)s] %(name)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        stream=sys.stderr,
    )
    return config


def _invocation(command: str, config, **flags):
    """Merge CLI flags over config values and validate them."""
    from .models import Invocation

    merged = {
        "max_vertices": config.max_vertices,
        "max_arity": config.max_arity,
        "arity_bound": config.arity_bound,
        "output_format": config.output_format,
        "seed": config.seed,
    }
    merged.update({k: v for k, v in flags.items() if v is not None})
    return Invocation(command=command, **merged)


def _input_errors(fn: Callable) -> Callable:
    """Report malformed input on stderr and exit 2."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ValueError, ValidationError, OSError) as exc:
            click.echo(f"Error: {exc}", err=True)
            raise SystemExit(EXIT_INPUT)

    return wrapper


def _emit(document: BaseModel, text: str, output_format: str) -> None:
    if output_format == "json":
        click.echo(document.model_dump_json(indent=2))
    else:
        click.echo(text)


format_option = click.option(
    "--format", "output_format", type=click.Choice(["text", "json"]), default=None, help="Output format."
)
log_level_option = click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
    help="Log level [config: log_level].",
)
bounds_options = [
    click.option("--max-vertices", type=click.IntRange(min=1), default=None, help="Largest tree size (vertices)."),
    click.option("--max-arity", type=click.IntRange(min=1), default=None, help="Largest vertex arity."),
]


def with_bounds(fn: Callable) -> Callable:
    for option in reversed(bounds_options):
        fn = option(fn)
    return fn


@click.group()
@click.version_option(version=__version__, prog_name="dendrokit")
def cli() -> None:
    """dendrokit: exact computations with finite dendroidal sets."""


@cli.command()
@click.argument("expression")
@click.option("--arity-bound", type=click.IntRange(min=0), default=None, help="K0 corolla cutoff override.")
@format_option
@log_level_option
@_input_errors
def k0(expression: str, arity_bound: Optional[int], output_format: Optional[str], log_level: Optional[str]) -> None:
    """Compute K0 of a construction expression."""
    config = _setup(log_level)

    from .expr import parse_expression
    from .kzero import lambda_map, presentation
    from .models import GroupDocument, K0Document, LambdaEntry, RelationRow

    inv = _invocation("k0", config, expression=expression, arity_bound=arity_bound, output_format=output_format)
    d = parse_expression(inv.expression)
    pres = presentation(d, inv.arity_bound)
    group = pres.group
    document = K0Document(
        expression=expression,
        arity_bound=pres.arity_bound,
        group=GroupDocument(rank=group.free_rank, torsion=group.invariant_factors, text=str(group)),
        generators=[str(x) for x in pres.generators],
        relations=[RelationRow(row=r, provenance=p) for r, p in zip(pres.relations, pres.provenance)],
        lambda_table=[
            LambdaEntry(component=[str(x) for x in comp], k0_class=list(cls)) for comp, cls in lambda_map(d, pres)
        ],
    )
    lines = [str(group), f"generators: {len(pres.generators)}  relations: {len(pres.relations)}"]
    lines.extend(f"  {p}: {r}" for r, p in zip(pres.relations, pres.provenance))
    _emit(document, "\n".join(lines), inv.output_format)


@cli.command("check-kan")
@click.argument("expression")
@click.option("--inner/--full", default=True, help="Check inner horns only, or every horn.")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Threads for horn checks.")
@with_bounds
@format_option
@log_level_option
@_input_errors
def check_kan_cmd(
    expression: str,
    inner: bool,
    workers: Optional[int],
    max_vertices: Optional[int],
    max_arity: Optional[int],
    output_format: Optional[str],
    log_level: Optional[str],
) -> None:
    """Check horn fillers of a construction expression within the bounds."""
    config = _setup(log_level)

    from .expr import parse_expression
    from .kan import FULL, INNER, check_kan
    from .models import HornTallyDocument, KanReportDocument
    from .tree import format_tree

    inv = _invocation(
        "check-kan",
        config,
        expression=expression,
        max_vertices=max_vertices,
        max_arity=max_arity,
        output_format=output_format,
    )
    d = parse_expression(inv.expression)
    mode = INNER if inner else FULL
    report = check_kan(d, inv.max_vertices, inv.max_arity, mode, workers or config.workers)
    witness = report.counterexample
    document = KanReportDocument(
        expression=expression,
        mode=mode,
        max_vertices=report.max_vertices,
        max_arity=report.max_arity,
        passed=report.passed,
        counterexample=str(witness) if witness else None,
        tallies=[
            HornTallyDocument(
                tree=format_tree(t.tree),
                label=t.label,
                maps=t.maps,
                fillers=t.fillers,
                counterexample=str(t.counterexample) if t.counterexample else None,
            )
            for t in report.tallies
        ],
    )
    verdict = "pass" if report.passed else "fail"
    text = f"{mode} Kan ({report.max_vertices}, {report.max_arity}): {verdict}"
    if witness:
        text += f"\nunfilled: {witness}"
    _emit(document, text, inv.output_format)
    if not report.passed:
        raise SystemExit(EXIT_FAILED)


@cli.command()
@click.argument("source")
@click.argument("target")
@format_option
@log_level_option
@_input_errors
def hom(source: str, target: str, output_format: Optional[str], log_level: Optional[str]) -> None:
    """List the Omega maps SOURCE -> TARGET."""
    config = _setup(log_level)

    from .models import HomListing
    from .omega import format_map, hom as omega_hom
    from .tree import format_tree, parse_tree

    s, t = parse_tree(source), parse_tree(target)
    maps = [format_map(m) for m in omega_hom(s, t)]
    document = HomListing(source=format_tree(s), target=format_tree(t), count=len(maps), maps=maps)
    _emit(document, "\n".join([f"{len(maps)} maps", *maps]), output_format or config.output_format)


@cli.command()
@click.argument("tree")
@format_option
@log_level_option
@_input_errors
def faces(tree: str, output_format: Optional[str], log_level: Optional[str]) -> None:
    """List the inner and outer faces of TREE."""
    config = _setup(log_level)

    from .models import FaceEntry, FaceListing
    from .omega import faces as omega_faces, format_map
    from .tree import format_tree, parse_tree

    t = parse_tree(tree)
    entries = [
        FaceEntry(label=label, kind="inner" if label in t.inner_edges else "outer", map=format_map(m))
        for label, m in omega_faces(t)
    ]
    document = FaceListing(tree=format_tree(t), faces=entries)
    text = "\n".join(f"{e.kind:5} {e.label}: {e.map}" for e in entries) or "no faces"
    _emit(document, text, output_format or config.output_format)


@cli.command()
@click.argument("suite", default="all")
@click.option("--seed", type=int, default=None, help="Seed for the sampled suites [config: seed].")
@with_bounds
@format_option
@log_level_option
@_input_errors
def verify(
    suite: str,
    seed: Optional[int],
    max_vertices: Optional[int],
    max_arity: Optional[int],
    output_format: Optional[str],
    log_level: Optional[str],
) -> None:
    """Run a named verification suite (or all of them)."""
    config = _setup(log_level)

    from .suites import SuiteBounds, run_suite

    inv = _invocation(
        "verify", config, seed=seed, max_vertices=max_vertices, max_arity=max_arity, output_format=output_format
    )
    bounds = SuiteBounds(max_vertices=inv.max_vertices, max_arity=inv.max_arity, max_edges=config.verify_max_edges)
    document = run_suite(suite, inv.seed, bounds)
    lines = [f"{'ok  ' if c.passed else 'FAIL'} {c.name}  {c.detail}".rstrip() for c in document.checks]
    failed = sum(1 for c in document.checks if not c.passed)
    lines.append(f"{suite}: {len(document.checks) - failed} passed, {failed} failed")
    _emit(document, "\n".join(lines), inv.output_format)
    if not document.passed:
        raise SystemExit(EXIT_FAILED)
