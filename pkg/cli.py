#!/usr/bin/env python3
"""CLI for the Inspected Levy Toolkit."""

import json
from pathlib import Path

import typer
from rich.console import Console
from rich.table import Table

from app.core import configure_logging, settings
from app.runs import RunConfig, RunService

app = typer.Typer(
    name="Inspected Levy CLI",
    help="Transforms, inversion, simulation and risk curves of inspected Levy processes",
    add_completion=False,
)
console = Console()


@app.command()
def run(
    config: Path = typer.Option(..., "--config", help="JSON run configuration"),
    out: Path | None = typer.Option(None, "--out", help="Output directory"),
    threads: int | None = typer.Option(
        None, "--threads", min=1, help="Worker threads (speed only, never results)"
    ),
    log_level: str | None = typer.Option(None, "--log-level", help="Log level"),
):
    """
    Execute one run configuration.

    Exit status: 0 all checks pass, 1 a check failed, 2 configuration error,
    3 unsupported regime, 4 numerical non-convergence.
    """
    configure_logging(log_level or settings.LOG_LEVEL)
    outcome = RunService.execute(config, out, threads)
    if outcome.message:
        console.print(f"❌ {outcome.message}", style="red")
    else:
        table = Table(title="Written files")
        table.add_column("File", style="cyan")
        for path in outcome.files:
            table.add_row(str(path))
        console.print(table)
        style = "green" if outcome.passed else "yellow"
        console.print(f"passed={outcome.passed}", style=style)
    raise typer.Exit(code=outcome.exit_code)


@app.command()
def info():
    """Display toolkit settings."""
    table = Table(title="Toolkit Settings")
    table.add_column("Setting", style="cyan", no_wrap=True)
    table.add_column("Value", style="magenta")

    for name, value in settings.model_dump().items():
        table.add_row(name, str(value))

    console.print(table)


@app.command()
def schema():
    """Print the JSON schema of run configurations."""
    typer.echo(json.dumps(RunConfig.model_json_schema(), indent=2, sort_keys=True))


if __name__ == "__main__":
    app()
