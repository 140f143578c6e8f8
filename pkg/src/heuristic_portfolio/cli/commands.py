"""CLI command implementations."""

from __future__ import annotations

import logging
from pathlib import Path

import click
from dotenv import load_dotenv

from heuristic_portfolio.analysis.clustering import cluster_embedding, explain_clusters
from heuristic_portfolio.analysis.tsne import affinities, tsne
from heuristic_portfolio.config import RunConfig
from heuristic_portfolio.core.models import CheckStatus, TsneConfig
from heuristic_portfolio.core.search import SearchConfig
from heuristic_portfolio.core.tournament import (
    aggregate_report,
    build_pool,
    build_schedule,
    run_tournament,
)
from heuristic_portfolio.data.dataset import build_feature_matrix, join_labels, read_csv, write_csv
from heuristic_portfolio.data.exporter import (
    export_evaluation_workbook,
    export_tournament_workbook,
    write_embedding_csv,
    write_eval_csv,
    write_explanation,
    write_report_csv,
    write_results_json,
    write_slot_mae_csv,
)
from heuristic_portfolio.data.loader import check_corpus, compile_corpus, load_corpus
from heuristic_portfolio.data.validators import safe_name
from heuristic_portfolio.errors import CorpusError, DegenerateInput
from heuristic_portfolio.learn.evaluation import evaluate
from heuristic_portfolio.utils.formatters import (
    format_checks_table,
    format_cluster_summary,
    format_eval_table,
    format_report_table,
    format_win_rate_table,
)

load_dotenv()

logger = logging.getLogger(__name__)

REPORT_FILE = "report.csv"
SLOT_MAE_FILE = "mae_per_slot.csv"
EMBEDDING_FILE = "embedding.csv"
EXPLANATION_FILE = "clusters.txt"


def run_validate(corpus_dir: Path) -> None:
    """Parse and compile every game; raise if any game fails."""
    checks = check_corpus(corpus_dir)
    click.echo(format_checks_table(checks))
    failed = [c for c in checks if c.status is CheckStatus.FAILED]
    if failed:
        raise CorpusError(f"{len(failed)} of {len(checks)} game(s) failed validation")


def run_ludemes(corpus_dir: Path, *, output: Path, config: RunConfig) -> None:
    games = load_corpus(corpus_dir)
    matrix = build_feature_matrix(games)
    write_csv(matrix, output, comment=config.comment_line())
    click.echo(f"Wrote {len(matrix.game_names)} games x {len(matrix.vocabulary)} ludemes to {output}")


def run_tournament_command(
    corpus_dir: Path,
    *,
    output: Path,
    config: RunConfig,
    xlsx: Path | None,
) -> None:
    """Run the tournament protocol on every playable game."""
    games = load_corpus(corpus_dir)
    specs = compile_corpus(games)
    if not specs:
        raise CorpusError(f"No playable games in {corpus_dir}")

    search = SearchConfig(depth=config.search_depth, rng_seed=config.master_seed)
    tables = {}
    for name, spec in specs.items():
        pool = build_pool(spec)
        schedule = build_schedule(pool, config.master_seed, config.per_combination_games)
        click.echo(f"{name}: {len(schedule.matches)} matches")
        table = run_tournament(spec, schedule, pool=pool, config=search, workers=config.workers)
        write_results_json(
            table,
            output / f"{safe_name(name)}.json",
            master_seed=config.master_seed,
            config=config.to_dict(),
        )
        tables[name] = table
        logger.debug("\n%s", format_win_rate_table(table))

    report = aggregate_report(tables)
    write_report_csv(report, output / REPORT_FILE, comment=config.comment_line())
    click.echo("")
    click.echo(format_report_table(report))
    click.echo(f"\nWrote {len(tables)} result file(s) and {REPORT_FILE} to {output}")

    if xlsx:
        export_tournament_workbook(report, tables, xlsx)
        click.echo(f"Exported to {xlsx}")


def run_evaluate(
    *,
    features: Path,
    results: Path,
    output: Path,
    config: RunConfig,
    xlsx: Path | None,
) -> None:
    """Join labels, run leave-one-out for each algorithm and write the report."""
    matrix = read_csv(features).features
    dataset = join_labels(matrix, results)
    click.echo(f"Dataset: {len(matrix.game_names)} games x {len(matrix.vocabulary)} ludemes, 27 slots")

    report = evaluate(dataset, config.algorithms, config.master_seed, workers=config.workers)
    best = report.results[0].mean_best_win_rate
    comment = f"{config.comment_line()} meanBestWinRate={best!r}"
    write_eval_csv(report, output / REPORT_FILE, comment=comment)
    write_slot_mae_csv(report, output / SLOT_MAE_FILE, comment=comment)

    click.echo("")
    click.echo(format_eval_table(report))
    click.echo(f"\nWrote {REPORT_FILE} and {SLOT_MAE_FILE} to {output}")

    if xlsx:
        export_evaluation_workbook(report, xlsx)
        click.echo(f"Exported to {xlsx}")


def fit_perplexity(perplexity: float, games: int) -> float:
    """Lower perplexity to (games - 1) / 3 when the corpus is too small for it."""
    if games < 3:
        raise DegenerateInput(f"Clustering needs at least 3 games, got {games}")
    if perplexity < games - 1:
        return perplexity
    fitted = (games - 1) / 3
    logger.warning("Perplexity %g is too large for %d games; using %g", perplexity, games, fitted)
    return fitted


def run_cluster(*, features: Path, output: Path, config: RunConfig) -> None:
    """Embed the feature matrix, cluster the embedding and explain the clusters."""
    matrix = read_csv(features).features
    perplexity = fit_perplexity(config.perplexity, len(matrix.game_names))
    tsne_config = TsneConfig(
        perplexity=perplexity,
        iterations=config.tsne_iterations,
        learning_rate=config.learning_rate,
        seed=config.master_seed,
    )
    embedding = tsne(affinities(matrix.X, perplexity), tsne_config)
    labels = cluster_embedding(embedding.points, config.cluster_eps, config.cluster_min_pts)
    explanation = explain_clusters(matrix, labels, seed=config.master_seed)

    comment = config.comment_line()
    if perplexity != config.perplexity:
        comment += f" effectivePerplexity={perplexity!r}"
    write_embedding_csv(matrix.game_names, embedding, labels, output / EMBEDDING_FILE, comment=comment)
    write_explanation(explanation, matrix.game_names, output / EXPLANATION_FILE, comment=comment)

    click.echo(format_cluster_summary(embedding, explanation))
    click.echo(f"\nWrote {EMBEDDING_FILE} and {EXPLANATION_FILE} to {output}")
