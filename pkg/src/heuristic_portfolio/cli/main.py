"""CLI entry point for heuristic-portfolio."""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Any

import click

from heuristic_portfolio.cli.commands import (
    run_cluster,
    run_evaluate,
    run_ludemes,
    run_tournament_command,
    run_validate,
)
from heuristic_portfolio.config import ALGORITHMS, DEFAULT_SEED, RunConfig
from heuristic_portfolio.errors import WorkbenchError

logger = logging.getLogger(__name__)

EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


class WorkbenchGroup(click.Group):
    """Maps failures to exit codes: 1 usage, 2 data, 3 internal."""

    def main(self, *args: Any, standalone_mode: bool = True, **kwargs: Any) -> Any:
        if not standalone_mode:
            return super().main(*args, standalone_mode=False, **kwargs)
        try:
            code = super().main(*args, standalone_mode=False, **kwargs)
        except click.ClickException as e:
            e.show()
            sys.exit(EXIT_USAGE)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_USAGE)
        except (WorkbenchError, FileNotFoundError) as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_DATA)
        except Exception:
            logger.exception("Internal error")
            click.echo("Internal error; see the log above.", err=True)
            sys.exit(EXIT_INTERNAL)
        sys.exit(code if isinstance(code, int) else 0)


def _config(**kwargs: Any) -> RunConfig:
    try:
        return RunConfig(**kwargs)
    except ValueError as e:
        raise click.UsageError(str(e))


def _algorithms(ctx: click.Context, param: click.Parameter, value: str) -> tuple[str, ...]:
    names = tuple(a.strip() for a in value.split(",") if a.strip())
    unknown = [a for a in names if a not in ALGORITHMS]
    if unknown or not names:
        raise click.BadParameter(f"choose from {', '.join(ALGORITHMS)}")
    return names


seed_option = click.option(
    "--seed", type=int, default=DEFAULT_SEED, show_default=True,
    envvar="HEURISTIC_PORTFOLIO_SEED", help="Master seed",
)
threads_option = click.option(
    "--threads", type=click.IntRange(min=1), default=None,
    envvar="HEURISTIC_PORTFOLIO_THREADS", help="Worker processes (default: all cores)",
)
corpus_argument = click.argument(
    "corpus_dir", type=click.Path(exists=True, file_okay=False, path_type=Path),
)
features_option = click.option(
    "--features", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Feature CSV written by 'ludemes'",
)


@click.group(cls=WorkbenchGroup)
@click.version_option(package_name="heuristic-portfolio")
@click.option(
    "--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default="WARNING",
    envvar="HEURISTIC_PORTFOLIO_LOG_LEVEL", show_default=True, help="Logging verbosity",
)
def cli(log_level: str) -> None:
    """Measure heuristic win-rates on ludemic games and learn to predict them."""
    logging.basicConfig(
        level=log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


@cli.command()
@corpus_argument
def validate(corpus_dir: Path) -> None:
    """Parse and compile every game in a corpus."""
    run_validate(corpus_dir)


@cli.command()
@corpus_argument
@click.option("--output", "-o", default="features.csv", type=click.Path(dir_okay=False, path_type=Path),
              show_default=True, help="Feature CSV path")
def ludemes(corpus_dir: Path, output: Path) -> None:
    """Write the games x ludemes feature matrix."""
    run_ludemes(corpus_dir, output=output, config=_config(corpus_dir=corpus_dir, output_dir=output.parent))


@cli.command()
@corpus_argument
@seed_option
@click.option("--output", "-o", default="results", type=click.Path(file_okay=False, path_type=Path),
              show_default=True, help="Results directory")
@click.option("--depth", type=click.IntRange(min=1), default=2, show_default=True, help="Search depth in plies")
@threads_option
@click.option("--games-per-combination", type=click.IntRange(min=1), default=None,
              help="Override the automatic games per opponent combination")
@click.option("--xlsx", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Also export an Excel workbook")
def tournament(
    corpus_dir: Path,
    seed: int,
    output: Path,
    depth: int,
    threads: int | None,
    games_per_combination: int | None,
    xlsx: Path | None,
) -> None:
    """Measure every heuristic's win-rate on every playable game."""
    config = _config(
        corpus_dir=corpus_dir,
        output_dir=output,
        master_seed=seed,
        search_depth=depth,
        per_combination_games=games_per_combination,
        threads=threads,
    )
    run_tournament_command(corpus_dir, output=output, config=config, xlsx=xlsx)


@cli.command()
@features_option
@click.option("--results", required=True, type=click.Path(exists=True, file_okay=False, path_type=Path),
              help="Directory of per-game tournament JSON")
@click.option("--output", "-o", default="report", type=click.Path(file_okay=False, path_type=Path),
              show_default=True, help="Report directory")
@seed_option
@threads_option
@click.option("--algorithms", default=",".join(ALGORITHMS), callback=_algorithms,
              show_default=True, help="Comma-separated regression algorithms")
@click.option("--xlsx", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Also export an Excel workbook")
def evaluate(
    features: Path,
    results: Path,
    output: Path,
    seed: int,
    threads: int | None,
    algorithms: tuple[str, ...],
    xlsx: Path | None,
) -> None:
    """Leave-one-out evaluation of win-rate predictors."""
    config = _config(output_dir=output, master_seed=seed, algorithms=algorithms, threads=threads)
    run_evaluate(features=features, results=results, output=output, config=config, xlsx=xlsx)


@cli.command()
@features_option
@click.option("--output", "-o", default="cluster", type=click.Path(file_okay=False, path_type=Path),
              show_default=True, help="Output directory")
@seed_option
@click.option("--perplexity", type=float, default=30.0, show_default=True, help="t-SNE perplexity")
@click.option("--iterations", type=click.IntRange(min=1), default=1000, show_default=True,
              help="t-SNE iterations")
@click.option("--learning-rate", type=float, default=200.0, show_default=True, help="t-SNE learning rate")
@click.option("--eps", type=float, default=None,
              help="DBSCAN radius (default: 5% of the embedding's bounding-box diagonal)")
@click.option("--min-pts", type=click.IntRange(min=1), default=4, show_default=True,
              help="DBSCAN minimum neighbourhood size")
def cluster(
    features: Path,
    output: Path,
    seed: int,
    perplexity: float,
    iterations: int,
    learning_rate: float,
    eps: float | None,
    min_pts: int,
) -> None:
    """Embed games with t-SNE, cluster them and explain the clusters."""
    config = _config(
        output_dir=output,
        master_seed=seed,
        perplexity=perplexity,
        tsne_iterations=iterations,
        learning_rate=learning_rate,
        cluster_eps=eps,
        cluster_min_pts=min_pts,
    )
    run_cluster(features=features, output=output, config=config)
