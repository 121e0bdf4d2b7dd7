"""Command-line interface: check proofs, serve the HTTP API, generate and
list exercises."""
from __future__ import annotations

import sys
from pathlib import Path
from typing import Optional

import click

from . import generator
from .docmodel import serialize_exercise, serialize_report
from .report import format_text, write_report
from .service import CheckOptions, check_text, load_corpus


@click.group()
def main() -> None:
    """Didactic proof checker for controlled natural-language proofs."""


def _corpus(directory: Optional[str]):
    return load_corpus(Path(directory) if directory else None)


@main.command()
@click.option("--exercise", "exercise_id", required=True,
              help="Exercise id from the corpus.")
@click.option("--file", "path", type=click.Path(exists=True, dir_okay=False),
              help="Proof text file (default: stdin).")
@click.option("--corpus", "corpus_dir", type=click.Path(file_okay=False),
              help="Exercise corpus directory (default: packaged corpus).")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text", show_default=True)
@click.option("--goal-check/--no-goal-check", default=None,
              help="Override the exercise's goal-tracking setting.")
@click.option("--fallacies/--no-fallacies", default=True, show_default=True,
              help="Diagnose failed steps against known fallacies.")
@click.option("--tier", help="Override the exercise's difficulty tier.")
@click.option("--timeout", type=float, default=10.0, show_default=True,
              help="Proving budget in seconds.")
@click.option("--report-dir", type=click.Path(file_okay=False),
              help="Also write report.json, verdicts.csv and a summary"
                   " figure into this directory.")
def check(exercise_id, path, corpus_dir, fmt, goal_check, fallacies, tier,
          timeout, report_dir) -> None:
    """Check a proof text against an exercise."""
    corpus = _corpus(corpus_dir)
    if exercise_id not in corpus:
        raise click.ClickException(
            f"no exercise {exercise_id!r}; try 'exercises' to list ids")
    text = Path(path).read_text() if path else sys.stdin.read()
    options = CheckOptions(goal_check=goal_check, want_fallacies=fallacies,
                           tier=tier, timeout=timeout)
    report = check_text(corpus[exercise_id], text, options)
    if report_dir:
        paths = write_report(report, Path(report_dir))
        click.echo(f"report written to {paths['json'].parent}", err=True)
    if fmt == "json":
        click.echo(serialize_report(report))
    else:
        click.echo(format_text(report))
    ok = report.language_ok and report.all_verified \
        and report.goal_status in ("reached", "bypassed")
    sys.exit(0 if ok else 1)


@main.command()
@click.option("--corpus", "corpus_dir", type=click.Path(file_okay=False))
def exercises(corpus_dir) -> None:
    """List the exercises in the corpus."""
    for ex_id, ex in sorted(_corpus(corpus_dir).items()):
        click.echo(f"{ex_id:36} [{ex.field}/{ex.tier}] {ex.nat}")


@main.command()
@click.option("--exercise", "exercise_id", required=True)
@click.option("--corpus", "corpus_dir", type=click.Path(file_okay=False))
def show(exercise_id, corpus_dir) -> None:
    """Print one exercise as JSON."""
    corpus = _corpus(corpus_dir)
    if exercise_id not in corpus:
        raise click.ClickException(f"no exercise {exercise_id!r}")
    click.echo(serialize_exercise(corpus[exercise_id]))


@main.command()
@click.argument("family")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--bound", "bounds", multiple=True,
              help="Family bound as name=value (repeatable).")
def generate(family, seed, bounds) -> None:
    """Generate a fresh exercise from a seeded family."""
    parsed = {}
    for item in bounds:
        name, _, value = item.partition("=")
        if not value:
            raise click.ClickException(f"bound {item!r} is not name=value")
        parsed[name] = int(value)
    try:
        ex = generator.generate(family, seed, parsed)
    except generator.GenerationError as exc:
        raise click.ClickException(str(exc))
    click.echo(serialize_exercise(ex))


@main.command()
def families() -> None:
    """List the generator families."""
    for name in generator.families():
        click.echo(name)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--corpus", "corpus_dir", type=click.Path(file_okay=False))
def serve(host, port, corpus_dir) -> None:
    """Run the HTTP API."""
    import uvicorn

    from .http_api import create_app
    app = create_app(Path(corpus_dir) if corpus_dir else None)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
