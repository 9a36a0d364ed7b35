"""CLI interface for grc."""

import json
import logging
from pathlib import Path
from typing import Annotated, NoReturn, Optional

import typer
import yaml
from pydantic import ValidationError
from rich import print as rprint
from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from . import __version__
from .circuits import (
    AnalysisReport,
    aggregate_circuit,
    dump_document,
    get_gate_registry,
    lift_circuit,
    parse_circuit,
)
from .circuits import analyze as analyze_circuit
from .config import (
    AnalysisConfig,
    LawsConfig,
    Settings,
    get_default_config_template,
    get_grc_home,
)
from .errors import GrcError
from .laws import LawReport, get_law_registry, run_laws
from .log import setup_logging

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="grc",
    help="grc - entropy ledgers and reversibility verdicts for partitioned-state circuits",
    no_args_is_help=True,
)
console = Console()
err_console = Console(stderr=True)


def _error(message: object, code: int = 2) -> NoReturn:
    err_console.print(f"[red]Error:[/red] {escape(str(message))}", highlight=False)
    raise typer.Exit(code)


def _settings() -> Settings:
    try:
        return Settings.load()
    except (ValidationError, yaml.YAMLError) as e:
        _error(f"invalid config {get_grc_home() / 'config.yml'}: {e}")


def _flag(value: bool | None) -> str:
    if value is None:
        return "[dim]n/a[/dim]"
    return "[green]yes[/green]" if value else "[red]no[/red]"


def _bits(value: float) -> str:
    return f"{value:.6g}"


def _version_callback(value: bool) -> None:
    if value:
        print(f"grc {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Debug logging")] = False,
    quiet: Annotated[bool, typer.Option("--quiet", "-q", help="Only warnings and errors")] = False,
    version: Annotated[Optional[bool], typer.Option(
        "--version", callback=_version_callback, is_eager=True, help="Show version and exit"
    )] = None,
):
    """Exact entropy accounting for physical and computational circuits."""
    if verbose:
        level = "DEBUG"
    elif quiet:
        level = "WARNING"
    else:
        level = _settings().log_level
    setup_logging(level, err_console)


@app.command()
def analyze(
    file: Annotated[Path, typer.Argument(help="Circuit file (JSON)")],
    json_output: Annotated[bool, typer.Option("--json", help="Machine-readable report")] = False,
    tol: Annotated[Optional[float], typer.Option("--tol", help="Entropy tolerance")] = None,
    base: Annotated[Optional[float], typer.Option("--base", help="Logarithm base")] = None,
    lenient: Annotated[Optional[bool], typer.Option(
        "--lenient/--strict", help="Report condrev as n/a for nondeterministic aggregates"
    )] = None,
):
    """Run a circuit's context through its pipeline and report ledgers and verdicts.

    Exit code 1 if some step ejects entropy, 2 if the file is invalid.

    Examples:
        grc analyze landauer.json
        grc analyze circuit.json --json --tol 1e-12
    """
    overrides = {"tolerance": tol, "base": base, "lenient": lenient}
    try:
        settings = AnalysisConfig.model_validate({
            **_settings().analysis.model_dump(),
            **{k: v for k, v in overrides.items() if v is not None},
        })
    except ValidationError as e:
        _error(e)
    tol, base, lenient = settings.tolerance, settings.base, settings.lenient
    logger.debug(f"analyzing {file} (tol={tol:g}, base={base:g}, lenient={lenient})")

    try:
        spec = parse_circuit(file)
        report = analyze_circuit(spec, tol=tol, base=base, lenient=lenient)
    except GrcError as e:
        _error(e)

    if json_output:
        print(report.model_dump_json(indent=2))
    else:
        _print_analysis(report)

    if report.summary.ejecting_steps or not report.summary.fundamental_agree:
        raise typer.Exit(1)


def _print_analysis(report: AnalysisReport) -> None:
    table = Table(title=f"Entropy ledger: {report.source or 'circuit'}")
    table.add_column("#", justify="right")
    table.add_column("Step", style="cyan")
    table.add_column("H_phy", justify="right")
    table.add_column("H_comp", justify="right")
    table.add_column("H_nc", justify="right")
    table.add_column("ΔH_nc", justify="right", style="yellow")
    table.add_column("nee")
    table.add_column("condrev")
    table.add_column("free")
    table.add_column("agree")
    for step in report.steps:
        table.add_row(
            str(step.index),
            step.gate,
            f"{_bits(step.before.h_phy)} → {_bits(step.after.h_phy)}",
            f"{_bits(step.before.h_comp)} → {_bits(step.after.h_comp)}",
            f"{_bits(step.before.h_nc)} → {_bits(step.after.h_nc)}",
            f"{step.delta_h_nc:+.6g}",
            _flag(step.flags.nee),
            _flag(step.flags.condrev),
            _flag(step.flags.free_phy),
            _flag(step.flags.fundamental_agree),
        )
    console.print(table)

    s = report.summary
    console.print(Panel(
        f"[bold]Steps:[/bold]            {s.steps}\n"
        f"[bold]Total ΔH_nc:[/bold]      {s.total_delta_h_nc:+.6g} (base {report.base:g})\n"
        f"[bold]Ejecting steps:[/bold]   {s.ejecting_steps}\n"
        f"[bold]Free (physical):[/bold]  {_flag(s.free_phy)}\n"
        f"[bold]nee = condrev:[/bold]    {_flag(s.fundamental_agree)}",
        title="Summary",
        border_style="green" if s.ejecting_steps == 0 else "red",
    ))


@app.command()
def laws(
    cases: Annotated[Optional[int], typer.Option("--cases", help="Cases per law")] = None,
    max_dim: Annotated[Optional[int], typer.Option("--max-dim", help="Largest space size")] = None,
    seed: Annotated[Optional[int], typer.Option("--seed", help="Random seed")] = None,
    tol: Annotated[Optional[float], typer.Option("--tol", help="Entropy tolerance")] = None,
    only: Annotated[Optional[str], typer.Option(
        "--only", help="Run laws whose id is or starts with this prefix, e.g. 'cdu.closed'"
    )] = None,
    workers: Annotated[int, typer.Option("--workers", "-j", help="Worker processes")] = 1,
    list_laws: Annotated[bool, typer.Option("--list", help="List law ids and exit")] = False,
    json_output: Annotated[bool, typer.Option("--json", help="Machine-readable report")] = False,
):
    """Check the algebraic, entropic and closure laws on random instances.

    Exit code 1 if any law fails.

    Examples:
        grc laws
        grc laws --only part --cases 1000 --seed 7
    """
    registry = get_law_registry()
    if list_laws:
        selected = registry.list(prefix=only)
        if json_output:
            print(json.dumps([w.to_dict() for w in selected], indent=2))
            return
        table = Table(title="Laws")
        table.add_column("ID", style="cyan")
        table.add_column("Description")
        for w in selected:
            table.add_row(w.id, w.description)
        console.print(table)
        return

    overrides = {"cases": cases, "max_dim": max_dim, "seed": seed, "tolerance": tol}
    try:
        config = LawsConfig.model_validate({
            **_settings().laws.model_dump(),
            **{k: v for k, v in overrides.items() if v is not None},
        })
    except ValidationError as e:
        _error(e)

    try:
        report = run_laws(config, only=only, workers=workers)
    except GrcError as e:
        _error(e)

    if json_output:
        print(report.model_dump_json(indent=2))
    else:
        _print_laws(report)

    if not report.ok:
        raise typer.Exit(1)


def _print_laws(report: LawReport) -> None:
    table = Table(
        title=f"Laws (seed {report.seed}, {report.cases} cases, max dim {report.max_dim})"
    )
    table.add_column("ID", style="cyan")
    table.add_column("Passed", justify="right", style="green")
    table.add_column("Failed", justify="right")
    table.add_column("Description")
    for r in report.laws:
        table.add_row(r.id, str(r.passed), f"[red]{r.failed}[/red]" if r.failed else "0",
                      r.description)
    console.print(table)

    for r in report.failures:
        console.print(Panel(
            f"[bold]First failing case:[/bold] {r.failing_case}\n"
            f"[bold]Reason:[/bold] {r.error}\n\n"
            + json.dumps(r.counterexample, indent=2),
            title=f"[red]{r.id}[/red]",
            border_style="red",
        ))

    passed = sum(1 for r in report.laws if not r.failed)
    style = "green" if report.ok else "red"
    console.print(f"[{style}]{passed}/{len(report.laws)} laws passed[/{style}]")


def _write(text: str, output: Path | None) -> None:
    if output is None:
        print(text, end="")
        return
    output.write_text(text)
    rprint(f"[green]✓[/green] Wrote {output}")


@app.command()
def aggregate(
    file: Annotated[Path, typer.Argument(help="Physical circuit file")],
    output: Annotated[Optional[Path], typer.Option("--output", "-o", help="Output file")] = None,
):
    """Write the computational circuit: every space replaced by its set of blocks."""
    try:
        text = dump_document(aggregate_circuit(parse_circuit(file)))
    except GrcError as e:
        _error(e)
    _write(text, output)


@app.command()
def lift(
    file: Annotated[Path, typer.Argument(help="Computational circuit file")],
    multiplicity: Annotated[int, typer.Option(
        "--multiplicity", "-m", help="Microstates per computational state"
    )],
    output: Annotated[Optional[Path], typer.Option("--output", "-o", help="Output file")] = None,
):
    """Write a physical circuit that aggregates back to the given one."""
    try:
        text = dump_document(lift_circuit(parse_circuit(file), multiplicity))
    except GrcError as e:
        _error(e)
    _write(text, output)


@app.command()
def gates(
    tag: Annotated[Optional[str], typer.Option("--tag", "-t", help="Filter by tag")] = None,
    json_output: Annotated[bool, typer.Option("--json", help="Machine-readable list")] = False,
):
    """List the builtin gate library."""
    library = get_gate_registry().list(tag=tag)
    if json_output:
        print(json.dumps([g.to_dict() for g in library], indent=2))
        return

    table = Table(title="Builtin Gates")
    table.add_column("Name", style="cyan")
    table.add_column("Bits", justify="right")
    table.add_column("Tags", style="green")
    table.add_column("Description")
    for g in library:
        table.add_row(g.name, str(g.bits) if g.bits else "n", ", ".join(g.tags), g.description)
    console.print(table)


# Config subcommands
config_app = typer.Typer(help="Manage grc configuration")
app.add_typer(config_app, name="config")


@config_app.command("init")
def config_init(
    force: Annotated[bool, typer.Option("--force", "-f", help="Overwrite existing")] = False,
):
    """Write a commented default configuration file."""
    config_path = get_grc_home() / "config.yml"

    if config_path.exists() and not force:
        rprint(f"[yellow]Config already exists:[/yellow] {config_path}")
        rprint("Use --force to overwrite")
        return

    config_path.parent.mkdir(parents=True, exist_ok=True)
    config_path.write_text(get_default_config_template())
    rprint(f"[green]✓[/green] Created config at {config_path}")


@config_app.command("show")
def config_show(
    json_output: Annotated[bool, typer.Option("--json", help="Print as JSON")] = False,
):
    """Show the effective configuration (file, environment and defaults)."""
    settings = _settings()
    if json_output:
        print(settings.model_dump_json(indent=2))
        return
    text = yaml.dump(settings.model_dump(mode="json"), default_flow_style=False, sort_keys=False)
    config_path = get_grc_home() / "config.yml"
    title = str(config_path) if config_path.exists() else "defaults"
    console.print(Panel(text.rstrip(), title=title, border_style="cyan"))


@config_app.command("path")
def config_path():
    """Show config file path."""
    print(get_grc_home() / "config.yml")


if __name__ == "__main__":
    app()
