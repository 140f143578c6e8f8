"""Input validation for corpus manifests, dataset files and label values."""

from __future__ import annotations

import re

import pandas as pd

from heuristic_portfolio.core.models import HeuristicKind, HeuristicSpec
from heuristic_portfolio.errors import CorpusError, MalformedCsv

SAFE_NAME_PATTERN = re.compile(r"[^A-Za-z0-9._-]+")
LABEL_COLUMN_PATTERN = re.compile(r"^label:([A-Za-z]+):([+-])$")

MANIFEST_COLUMNS = ("name", "players", "file")


def safe_name(game: str) -> str:
    """A file-system-safe stem for a game name."""
    stem = SAFE_NAME_PATTERN.sub("_", game.strip())
    if not stem.strip("._"):
        raise ValueError(f"Game name '{game}' has no usable characters")
    return stem


def validate_player_count(players: int | str) -> int:
    try:
        value = int(players)
    except (ValueError, TypeError):
        raise ValueError(f"Invalid player count: '{players}'")
    if value < 2:
        raise ValueError("A game needs at least 2 players")
    return value


def validate_manifest(df: pd.DataFrame) -> pd.DataFrame:
    """Check a manifest frame (name, players, file) and normalise its values."""
    if df.empty:
        raise CorpusError("Manifest is empty")
    if df.shape[1] != len(MANIFEST_COLUMNS):
        raise CorpusError(f"Manifest rows need {len(MANIFEST_COLUMNS)} fields: name,players,file")

    frame = df.copy()
    frame.columns = list(MANIFEST_COLUMNS)
    errors: list[str] = []
    players: list[int] = []
    for row_num, row in enumerate(frame.itertuples(index=False), start=1):
        if pd.isna(row.name) or not str(row.name).strip():
            errors.append(f"Row {row_num}: Game name cannot be empty")
        try:
            players.append(validate_player_count(row.players))
        except ValueError as e:
            errors.append(f"Row {row_num}: {e}")
        if pd.isna(row.file) or not str(row.file).strip().endswith(".gdl"):
            errors.append(f"Row {row_num}: Game file must be a .gdl file")

    if errors:
        raise CorpusError("\n".join(errors))

    return pd.DataFrame(
        {
            "name": [str(s).strip() for s in frame["name"]],
            "players": players,
            "file": [str(s).strip() for s in frame["file"]],
        }
    )


def parse_label_column(column: str) -> HeuristicSpec:
    """``label:Material:+`` -> Material+."""
    match = LABEL_COLUMN_PATTERN.match(column)
    if not match:
        raise ValueError(f"Invalid label column: '{column}'")
    kind = HeuristicKind.from_name(match.group(1))
    return HeuristicSpec(kind, 1 if match.group(2) == "+" else -1)


def label_column(slot: HeuristicSpec) -> str:
    return f"label:{slot.kind.value}:{'+' if slot.sign > 0 else '-'}"


def validate_feature_value(value: str, line: int) -> int:
    if value not in ("0", "1"):
        raise MalformedCsv(line, f"feature value must be 0 or 1, got '{value}'")
    return int(value)


def validate_label_value(value: str, line: int) -> float:
    try:
        label = float(value)
    except ValueError:
        raise MalformedCsv(line, f"label is not a number: '{value}'")
    if not 0.0 <= label <= 100.0:
        raise MalformedCsv(line, f"label {label} outside [0, 100]")
    return label
