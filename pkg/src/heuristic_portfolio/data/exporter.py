"""Artifact writers: tournament JSON, report CSVs and Excel workbooks."""

from __future__ import annotations

import io
import json
import re
from collections.abc import Mapping, Sequence
from pathlib import Path

import numpy as np
import openpyxl
import pandas as pd

from heuristic_portfolio.core.models import (
    ClusterExplanation,
    Embedding,
    EvalReport,
    HeuristicReport,
    WinRateTable,
)

SHEET_TITLE_FORBIDDEN = re.compile(r"[\[\]:*?/\\]")


def _write_frame(frame: pd.DataFrame, path: Path, comment: str | None, float_format: str | None = None) -> None:
    buffer = io.StringIO()
    if comment is not None:
        buffer.write(comment.rstrip("\n") + "\n")
    frame.to_csv(buffer, index=False, lineterminator="\n", float_format=float_format)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(buffer.getvalue().encode("utf-8"))


def table_to_dict(table: WinRateTable, *, master_seed: int, config: Mapping[str, object]) -> dict:
    return {
        "game": table.game,
        "n": table.n,
        "entries": [
            {
                "slot": e.slot.label,
                "resolvedKind": e.resolved.kind.value,
                "sign": e.slot.sign,
                "gamesPlayed": e.games_played,
                "winCredit": e.win_credit,
                "winRate": e.win_rate,
            }
            for e in table.entries
        ],
        "completedMatches": table.completed_matches,
        "failedMatches": table.failed_matches,
        "masterSeed": master_seed,
        "config": dict(config),
    }


def write_results_json(
    table: WinRateTable,
    path: Path,
    *,
    master_seed: int,
    config: Mapping[str, object],
) -> None:
    doc = table_to_dict(table, master_seed=master_seed, config=config)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes((json.dumps(doc, indent=2) + "\n").encode("utf-8"))


def report_frame(report: HeuristicReport) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "heuristic": [r.slot.kind.value for r in report.rows],
            "sign": ["+" if r.slot.sign > 0 else "-" for r in report.rows],
            "avg_win_pct": [r.avg_win_pct for r in report.rows],
            "top_count": [r.top_count for r in report.rows],
        }
    )


def write_report_csv(report: HeuristicReport, path: Path, *, comment: str | None = None) -> None:
    _write_frame(report_frame(report), path, comment, float_format="%.2f")


def eval_frame(report: EvalReport) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "algorithm": [r.algorithm for r in report.results],
            "mae_mean": [r.mae_mean for r in report.results],
            "mae_stdev": [r.mae_stdev for r in report.results],
            "expected_win_rate": [r.expected_win_rate for r in report.results],
            "regret": [r.regret for r in report.results],
        }
    )


def slot_mae_frame(report: EvalReport) -> pd.DataFrame:
    rows = [[r.algorithm, *r.mae_per_slot] for r in report.results]
    return pd.DataFrame(rows, columns=["algorithm", *(s.label for s in report.slots)])


def write_eval_csv(report: EvalReport, path: Path, *, comment: str | None = None) -> None:
    """Full-precision values so the win-rate/regret identity survives the file."""
    _write_frame(eval_frame(report), path, comment)


def write_slot_mae_csv(report: EvalReport, path: Path, *, comment: str | None = None) -> None:
    _write_frame(slot_mae_frame(report), path, comment)


def write_embedding_csv(
    game_names: Sequence[str],
    embedding: Embedding,
    labels: np.ndarray,
    path: Path,
    *,
    comment: str | None = None,
) -> None:
    frame = pd.DataFrame(
        {
            "game": list(game_names),
            "x": embedding.points[:, 0],
            "y": embedding.points[:, 1],
            "cluster": np.asarray(labels, dtype=int),
        }
    )
    _write_frame(frame, path, comment)


def format_explanation(explanation: ClusterExplanation, game_names: Sequence[str]) -> str:
    lines = []
    if explanation.cluster_sizes:
        sizes = ", ".join(f"{c}: {n}" for c, n in explanation.cluster_sizes.items())
        lines.append(f"Clusters: {len(explanation.cluster_sizes)} ({sizes}); noise: {explanation.noise_count}")
        lines.append(f"Tree accuracy: {explanation.accuracy * 100:.1f}%")
        lines.append("")
        lines.append("Rules:")
        lines.extend(f"  {rule.describe()}" for rule in explanation.rules)
    else:
        lines.append(f"No clusters found; noise: {explanation.noise_count}")
    lines.append("")
    lines.append("Members:")
    for name, label in zip(game_names, explanation.labels):
        lines.append(f"  {name}: {'noise' if label == -1 else label}")
    return "\n".join(lines) + "\n"


def write_explanation(
    explanation: ClusterExplanation,
    game_names: Sequence[str],
    path: Path,
    *,
    comment: str | None = None,
) -> None:
    text = format_explanation(explanation, game_names)
    if comment is not None:
        text = comment.rstrip("\n") + "\n" + text
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(text.encode("utf-8"))


def _write_frame_sheet(wb: openpyxl.Workbook, title: str, frame: pd.DataFrame) -> None:
    ws = wb.create_sheet(SHEET_TITLE_FORBIDDEN.sub("_", title)[:31])
    for col, header in enumerate(frame.columns, start=1):
        ws.cell(row=1, column=col, value=str(header))
    for row_idx, row in enumerate(frame.itertuples(index=False), start=2):
        for col, value in enumerate(row, start=1):
            if isinstance(value, np.generic):
                value = value.item()
            ws.cell(row=row_idx, column=col, value=None if pd.isna(value) else value)


def _save(wb: openpyxl.Workbook, path: Path) -> None:
    if "Sheet" in wb.sheetnames:
        del wb["Sheet"]
    path.parent.mkdir(parents=True, exist_ok=True)
    wb.save(str(path))


def export_tournament_workbook(
    report: HeuristicReport,
    tables: Mapping[str, WinRateTable],
    path: Path,
) -> None:
    """Aggregate report sheet plus one sheet per game."""
    wb = openpyxl.Workbook()
    _write_frame_sheet(wb, "Report", report_frame(report))
    for i, (game, table) in enumerate(tables.items(), start=1):
        frame = pd.DataFrame(
            {
                "Slot": [e.slot.label for e in table.entries],
                "Played As": [e.resolved.label for e in table.entries],
                "Games": [e.games_played for e in table.entries],
                "Win Credit": [e.win_credit for e in table.entries],
                "Win Rate (%)": [e.win_rate * 100 for e in table.entries],
            }
        )
        _write_frame_sheet(wb, f"{i:02d} {game}", frame)
    _save(wb, path)


def export_evaluation_workbook(report: EvalReport, path: Path) -> None:
    wb = openpyxl.Workbook()
    summary = eval_frame(report)
    gains = [report.improvement_over_naive(r.algorithm) for r in report.results]
    summary["mae_gain_vs_naive_pct"] = [g[0] if g else None for g in gains]
    summary["regret_gain_vs_naive_pct"] = [g[1] if g else None for g in gains]
    _write_frame_sheet(wb, "Summary", summary)
    _write_frame_sheet(wb, "MAE per Slot", slot_mae_frame(report))
    _save(wb, path)
