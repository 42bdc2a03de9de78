"""Command-line pipeline driver.

All subcommands share one JSON configuration file (``--config``, or the
AROUSALKIT_CONFIG environment variable) and a work directory holding the
stage artifacts. ``demo`` runs the whole pipeline on a bundled synthetic
corpus with simulated raters.
"""

from __future__ import annotations

import logging
import sys

import click

from .config import PipelineConfig
from .corpus import CorpusFormatError, Field
from .embedding import TrainingDivergedError
from .evalstats import pair_label
from .lexicon import LexiconFormatError, SeedSelectionError
from .pipeline import (
    PipelineError,
    run_agreement,
    run_build,
    run_demo,
    run_evaluate,
    run_expand,
    run_ingest,
    run_neighbors,
    run_ratings,
    run_score,
    run_seeds,
    run_sheet,
    run_train,
)
from .scoring import MODES
from .wordnet import WordNetError

_USER_ERRORS = (
    PipelineError,
    CorpusFormatError,
    LexiconFormatError,
    SeedSelectionError,
    WordNetError,
    TrainingDivergedError,
    ValueError,
    OSError,
)


@click.group()
@click.option("--config", "config_path", envvar="AROUSALKIT_CONFIG", default=None,
              type=click.Path(), help="Pipeline config JSON (env AROUSALKIT_CONFIG).")
@click.option("--work-dir", default=None, type=click.Path(),
              help="Override the work directory.")
@click.option("--seed", default=None, type=int, help="Override the training seed.")
@click.option("--deterministic", is_flag=True,
              help="Force single-threaded, bit-reproducible training.")
@click.option("--threads", default=None, type=int,
              help="Training worker threads (>1 is non-deterministic).")
@click.option("-v", "--verbose", is_flag=True, help="Log stage progress.")
@click.pass_context
def main(ctx, config_path, work_dir, seed, deterministic, threads, verbose):
    """Bootstrap and evaluate an issue-tracker arousal lexicon."""
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    config = PipelineConfig.load(config_path) if config_path else PipelineConfig()
    if work_dir is not None:
        config.work_dir = work_dir
    if seed is not None:
        config.embedding.seed = seed
    if threads is not None:
        config.embedding.threads = threads
    if deterministic:
        config.embedding.threads = 1
    ctx.obj = {"config": config, "seed": seed, "threads": threads}


def _config(ctx) -> PipelineConfig:
    return ctx.obj["config"]


def _run(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except _USER_ERRORS as exc:
        raise click.ClickException(str(exc)) from exc


@main.command()
@click.pass_context
def ingest(ctx):
    """Parse the corpus, build the vocabulary, record issue priorities."""
    vocab = _run(run_ingest, _config(ctx))
    click.echo(f"vocabulary: {len(vocab)} words")


@main.command()
@click.pass_context
def train(ctx):
    """Count co-occurrences and train the embedding."""
    model = _run(run_train, _config(ctx))
    click.echo(
        f"trained {len(model.words)} x {model.dim} vectors; "
        f"loss {model.loss_history[0]:.2f} -> {model.loss_history[-1]:.2f}"
    )


@main.command()
@click.option("--word", required=True, help="Query word.")
@click.option("-k", default=None, type=int, help="Neighbor count (default config k).")
@click.pass_context
def neighbors(ctx, word, k):
    """Print the nearest embedding neighbors of a word."""
    result = _run(run_neighbors, _config(ctx), word, k)
    for neighbor, sim in result:
        click.echo(f"{neighbor}\t{sim:.4f}")


@main.command()
@click.pass_context
def seeds(ctx):
    """Select frequency-validated extreme-arousal seed words."""
    seed_set = _run(run_seeds, _config(ctx))
    n_high = sum(1 for s in seed_set if s.pole == "high")
    click.echo(f"{len(seed_set)} seeds ({n_high} high, {len(seed_set) - n_high} low)")


@main.command()
@click.pass_context
def expand(ctx):
    """Add WordNet synonyms and embedding neighbors as candidates."""
    candidates = _run(run_expand, _config(ctx))
    click.echo(f"{len(candidates)} candidates pending review")


@main.command()
@click.option("--review", default=None, type=click.Path(exists=True),
              help="Accept/reject decisions file to apply first.")
@click.pass_context
def sheet(ctx, review):
    """Write the rating sheet for accepted candidate words."""
    path = _run(run_sheet, _config(ctx), review)
    click.echo(f"sheet written to {path}")


@main.command()
@click.argument("sheet_files", nargs=-1, required=True,
                type=click.Path(exists=True))
@click.option("--labels", default=None,
              help="Comma-separated rater labels (default: file stems).")
@click.pass_context
def ratings(ctx, sheet_files, labels):
    """Ingest filled rating sheets, one per rater."""
    label_list = labels.split(",") if labels else None
    records, report = _run(run_ratings, _config(ctx), list(sheet_files), label_list)
    click.echo(
        f"{report.n_records} ratings ingested, {report.n_skipped} empty cells, "
        f"{len(report.errors)} rejected rows"
    )


@main.command()
@click.pass_context
def agreement(ctx):
    """Two-rater agreement statistics over the ingested ratings."""
    report = _run(run_agreement, _config(ctx))
    for line in report.lines():
        click.echo(line)


@main.command()
@click.pass_context
def build(ctx):
    """Aggregate ratings into the arousal lexicon file."""
    sea = _run(run_build, _config(ctx))
    click.echo(f"lexicon built: {len(sea)} words, mean arousal {sea.mu:.3f}")


@main.command()
@click.option("--modes", default=",".join(MODES),
              help=f"Comma-separated scoring modes from {MODES}.")
@click.pass_context
def score(ctx, modes):
    """Score every issue text unit under the selected lexicon modes."""
    rows = _run(run_score, _config(ctx), modes.split(","))
    click.echo(f"{len(rows)} scored rows written")


@main.command()
@click.pass_context
def evaluate(ctx):
    """Group scores by priority and render the effect-size tables."""
    table = _run(run_evaluate, _config(ctx))
    populated = sum(1 for cell in table.cells.values() if cell is not None)
    click.echo(f"evaluation tables written ({populated} populated cells)")
    for warning in table.warnings:
        click.echo(f"warning: {warning}", err=True)


@main.command()
@click.option("--issues", default=1000, type=int, help="Synthetic corpus size.")
@click.pass_context
def demo(ctx, issues):
    """Run the full pipeline on a generated corpus with simulated raters."""
    config = _config(ctx)
    seed = ctx.obj["seed"] if ctx.obj["seed"] is not None else 7
    threads = ctx.obj["threads"] if ctx.obj["threads"] is not None else 1
    table = _run(run_demo, config.work_dir, n_issues=issues, seed=seed,
                 threads=threads)
    click.echo(f"demo artifacts in {config.work_dir}")
    for mode in table.modes:
        cell = table.cell(Field.ALL_COMMENTS, mode, table.pairs[0])
        if cell:
            click.echo(
                f"all_comments {pair_label(cell.pair)} [{mode}]: "
                f"d={cell.cohen_d:.4f} p={cell.p:.3g}"
            )


if __name__ == "__main__":
    sys.exit(main())
