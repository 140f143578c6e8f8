"""Ludeme feature matrices and win-rate labelled datasets."""

from __future__ import annotations

import io
import logging
import re
from collections.abc import Mapping, Sequence
from pathlib import Path

import numpy as np
import pandas as pd

from heuristic_portfolio.core.models import (
    CorpusGame,
    FeatureMatrix,
    HeuristicSpec,
    LabeledDataset,
    WinRateTable,
    portfolio_slots,
)
from heuristic_portfolio.data.loader import load_results
from heuristic_portfolio.data.validators import (
    label_column,
    parse_label_column,
    validate_feature_value,
    validate_label_value,
)
from heuristic_portfolio.errors import DuplicateGameName, MalformedCsv, MissingResults

logger = logging.getLogger(__name__)

GAME_COLUMN = "game"
LABEL_PREFIX = "label:"
_PARSER_LINE = re.compile(r"line (\d+)")


def build_feature_matrix(games: Sequence[CorpusGame]) -> FeatureMatrix:
    """One binary row per game over the sorted union of all ludemes."""
    seen: set[str] = set()
    for game in games:
        if game.name in seen:
            raise DuplicateGameName(game.name)
        seen.add(game.name)

    vocabulary = tuple(sorted(set().union(*(g.ludemes.names for g in games)))) if games else ()
    column = {name: j for j, name in enumerate(vocabulary)}
    X = np.zeros((len(games), len(vocabulary)), dtype=np.int8)
    for i, game in enumerate(games):
        for name in game.ludemes.names:
            X[i, column[name]] = 1

    logger.info("Feature matrix: %d games x %d ludemes", len(games), len(vocabulary))
    return FeatureMatrix(tuple(g.name for g in games), vocabulary, X)


def to_label(win_rate: float) -> float:
    """Win-rate in [0, 1] to a percent label with two decimals."""
    return round(win_rate * 100, 2)


def join_labels(
    matrix: FeatureMatrix,
    results: Path | Mapping[str, WinRateTable],
) -> LabeledDataset:
    """Attach per-slot win-% labels from a results directory or loaded tables."""
    if isinstance(results, Path):
        tables = load_results(results, matrix.game_names)
    else:
        tables = dict(results)

    labels: dict[HeuristicSpec, np.ndarray] = {}
    for slot in portfolio_slots():
        values = []
        for game in matrix.game_names:
            table = tables.get(game)
            if table is None:
                raise MissingResults(game)
            values.append(to_label(table.win_rate(slot)))
        labels[slot] = np.asarray(values, dtype=float)
    return LabeledDataset(matrix, labels)


def _frame(dataset: LabeledDataset) -> pd.DataFrame:
    frame = dataset.features.to_frame()
    for slot in dataset.slots:
        frame[label_column(slot)] = dataset.labels[slot]
    return frame


def write_csv(dataset: LabeledDataset | FeatureMatrix, path: Path, *, comment: str | None = None) -> None:
    """Write ``game,<ludemes...>,<label:Kind:sign...>`` with LF line endings.

    Features are written as 0/1 and labels with two fractional digits.
    ``comment`` becomes the first line and must start with ``#``.
    """
    if isinstance(dataset, FeatureMatrix):
        dataset = LabeledDataset(dataset, {})
    if comment is not None and not comment.startswith("#"):
        raise ValueError("CSV comment lines must start with '#'")

    buffer = io.StringIO()
    if comment is not None:
        buffer.write(comment.rstrip("\n") + "\n")
    _frame(dataset).to_csv(buffer, index=False, float_format="%.2f", lineterminator="\n")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(buffer.getvalue().encode("utf-8"))


def _leading_comments(text: str) -> int:
    count = 0
    for line in text.splitlines():
        if not line.startswith("#"):
            break
        count += 1
    return count


def read_csv(path: Path) -> LabeledDataset:
    """Inverse of ``write_csv``; a features-only file gives an empty label map."""
    if not path.exists():
        raise FileNotFoundError(f"File not found: {path}")
    text = path.read_text(encoding="utf-8")
    skipped = _leading_comments(text)

    try:
        raw = pd.read_csv(
            io.StringIO(text),
            header=None,
            skiprows=skipped,
            dtype=str,
            keep_default_na=False,
        )
    except pd.errors.EmptyDataError:
        raise MalformedCsv(skipped + 1, "no header row")
    except pd.errors.ParserError as e:
        found = _PARSER_LINE.search(str(e))
        line = int(found.group(1)) + skipped if found else 0
        raise MalformedCsv(line, str(e).strip()) from e

    header = [str(c) for c in raw.iloc[0].tolist()]
    header_line = skipped + 1
    if not header or header[0] != GAME_COLUMN:
        raise MalformedCsv(header_line, f"first column must be '{GAME_COLUMN}'")

    first_label = next((j for j, c in enumerate(header) if c.startswith(LABEL_PREFIX)), len(header))
    vocabulary = header[1:first_label]
    label_names = header[first_label:]
    if any(not c.startswith(LABEL_PREFIX) for c in label_names):
        raise MalformedCsv(header_line, "label columns must come after every ludeme column")
    if len(set(vocabulary)) != len(vocabulary) or any(not c for c in vocabulary):
        raise MalformedCsv(header_line, "ludeme columns must be unique and non-empty")
    try:
        slots = [parse_label_column(c) for c in label_names]
    except ValueError as e:
        raise MalformedCsv(header_line, str(e)) from e
    if len(set(slots)) != len(slots):
        raise MalformedCsv(header_line, "duplicate label column")

    games: list[str] = []
    X = np.zeros((len(raw) - 1, len(vocabulary)), dtype=np.int8)
    labels = np.zeros((len(raw) - 1, len(slots)), dtype=float)
    for i, row in enumerate(raw.iloc[1:].itertuples(index=False)):
        line = header_line + 1 + i
        values = ["" if pd.isna(v) else str(v) for v in row]
        name = values[0]
        if not name:
            raise MalformedCsv(line, "empty game name")
        if name in games:
            raise DuplicateGameName(name)
        games.append(name)
        for j in range(len(vocabulary)):
            X[i, j] = validate_feature_value(values[1 + j], line)
        for j in range(len(slots)):
            labels[i, j] = validate_label_value(values[first_label + j], line)

    features = FeatureMatrix(tuple(games), tuple(vocabulary), X)
    return LabeledDataset(features, {slot: labels[:, j].copy() for j, slot in enumerate(slots)})
