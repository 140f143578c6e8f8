"""Terminal output formatters."""

from __future__ import annotations

from collections.abc import Sequence

from heuristic_portfolio.core.models import (
    CheckStatus,
    ClusterExplanation,
    Embedding,
    EvalReport,
    GameCheck,
    HeuristicReport,
    WinRateTable,
)


def format_percent(value: float) -> str:
    """Format a value as percentage with sign."""
    if value > 0:
        return f"+{value:.2f}%"
    elif value < 0:
        return f"{value:.2f}%"
    return "0.00%"


def format_checks_table(checks: Sequence[GameCheck]) -> str:
    header = f"{'File':<24} {'Game':<20} {'Players':>7} {'Ludemes':>8} {'Status':<11} Detail"
    lines = [header, "-" * len(header)]
    for c in checks:
        lines.append(
            f"{c.path.name:<24} {(c.name or '-'):<20} {(c.players or '-')!s:>7} "
            f"{c.ludeme_count:>8} {c.status.value:<11} {c.message}"
        )
    playable = sum(1 for c in checks if c.status is CheckStatus.PLAYABLE)
    parse_only = sum(1 for c in checks if c.status is CheckStatus.PARSE_ONLY)
    failed = sum(1 for c in checks if c.status is CheckStatus.FAILED)
    lines.append("")
    lines.append(f"{playable} playable, {parse_only} parse-only, {failed} failed")
    return "\n".join(lines)


def format_win_rate_table(table: WinRateTable) -> str:
    """One game's tournament results as a text table."""
    header = f"{'Slot':<26} {'Played As':<26} {'Games':>7} {'Credit':>9} {'Win %':>8}"
    lines = [f"{table.game} ({table.n} players, {table.completed_matches} matches)", header, "-" * len(header)]
    for e in table.entries:
        lines.append(
            f"{e.slot.label:<26} {e.resolved.label:<26} {e.games_played:>7} "
            f"{e.win_credit:>9.2f} {e.win_rate * 100:>7.2f}%"
        )
    if table.failed_matches:
        lines.append(f"({table.failed_matches} failed match(es) excluded)")
    return "\n".join(lines)


def format_report_table(report: HeuristicReport) -> str:
    """Win-rates averaged over games, best first."""
    header = f"{'Heuristic':<26} {'Avg Win %':>10} {'Top':>5}"
    lines = [f"Averaged over {report.game_count} game(s)", header, "-" * len(header)]
    for r in sorted(report.rows, key=lambda r: (-r.avg_win_pct, r.slot.sort_key)):
        lines.append(f"{r.slot.label:<26} {r.avg_win_pct:>9.2f}% {r.top_count:>5}")
    return "\n".join(lines)


def format_eval_table(report: EvalReport) -> str:
    header = (
        f"{'Algorithm':<18} {'MAE':>7} {'StDev':>7} {'Exp Win %':>10} {'Regret':>8} "
        f"{'MAE vs Naive':>13} {'Regret vs Naive':>16}"
    )
    lines = [f"Leave-one-out over {report.game_count} games (seed {report.seed})", header, "-" * len(header)]
    for r in report.results:
        gain = report.improvement_over_naive(r.algorithm)
        mae_gain = format_percent(gain[0]) if gain else "-"
        regret_gain = format_percent(gain[1]) if gain else "-"
        lines.append(
            f"{r.algorithm:<18} {r.mae_mean:>7.2f} {r.mae_stdev:>7.2f} {r.expected_win_rate:>9.2f}% "
            f"{r.regret:>8.2f} {mae_gain:>13} {regret_gain:>16}"
        )
    if report.results:
        lines.append("")
        lines.append(f"Mean best win-rate: {report.results[0].mean_best_win_rate:.2f}%")
    return "\n".join(lines)


def format_cluster_summary(embedding: Embedding, explanation: ClusterExplanation) -> str:
    lines = [
        f"{'=' * 60}",
        f"  t-SNE KL:        {embedding.initial_kl:.4f} -> {embedding.final_kl:.4f}",
        f"  Perplexity:      {embedding.config.perplexity:g}",
        f"  Clusters:        {len(explanation.cluster_sizes)}",
        f"  Noise:           {explanation.noise_count}",
    ]
    if explanation.cluster_sizes:
        lines.append(f"  Tree accuracy:   {explanation.accuracy * 100:.1f}%")
    lines.append(f"{'=' * 60}")
    for rule in explanation.rules:
        lines.append(f"  {rule.describe()}")
    return "\n".join(lines)
