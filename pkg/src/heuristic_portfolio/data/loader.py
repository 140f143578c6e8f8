"""Corpus loading, validation and tournament-result reading."""

from __future__ import annotations

import json
import logging
from pathlib import Path

import pandas as pd

from heuristic_portfolio.core.models import (
    NULL_HEURISTIC,
    CheckStatus,
    CorpusGame,
    EntryResult,
    GameCheck,
    HeuristicKind,
    HeuristicSpec,
    WinRateTable,
)
from heuristic_portfolio.data.validators import MANIFEST_COLUMNS, safe_name, validate_manifest
from heuristic_portfolio.engine import GameSpec, compile_game
from heuristic_portfolio.errors import (
    CompileError,
    CorpusError,
    GdlSyntaxError,
    MissingResults,
    UnsupportedLudeme,
)
from heuristic_portfolio.gdl import CompoundNode, ValueNode, extract_ludemes, game_name, parse_text

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.txt"


def _read_text(path: Path) -> str:
    """Read a description with utf-8, falling back to latin-1 for legacy files."""
    try:
        return path.read_text(encoding="utf-8")
    except UnicodeDecodeError:
        return path.read_text(encoding="latin-1")


def declared_players(tree: object) -> int | None:
    """The integer of a top-level ``(players N)`` section, if present."""
    if not isinstance(tree, CompoundNode):
        return None
    for arg in tree.args:
        if isinstance(arg, CompoundNode) and arg.head == "players":
            for value in arg.args:
                if isinstance(value, ValueNode) and isinstance(value.value, int) \
                        and not isinstance(value.value, bool):
                    return value.value
    return None


def load_game(path: Path) -> CorpusGame:
    """Parse one ``.gdl`` file. The game is named by its ``(game "...")`` string."""
    if not path.exists():
        raise FileNotFoundError(f"File not found: {path}")
    tree = parse_text(_read_text(path))
    name = game_name(tree) or path.stem
    return CorpusGame(
        name=name,
        path=path,
        tree=tree,
        ludemes=extract_ludemes(tree),
        declared_players=declared_players(tree),
    )


def read_manifest(path: Path) -> pd.DataFrame:
    df = pd.read_csv(
        path,
        header=None,
        names=list(MANIFEST_COLUMNS),
        comment="#",
        dtype=str,
        skip_blank_lines=True,
    )
    return validate_manifest(df)


def _corpus_entries(directory: Path) -> list[tuple[Path, str | None, int | None]]:
    """(file, manifest name, manifest players) for each game, in corpus order."""
    if not directory.is_dir():
        raise CorpusError(f"Corpus directory not found: {directory}")
    manifest_path = directory / MANIFEST_NAME
    if manifest_path.exists():
        manifest = read_manifest(manifest_path)
        entries = [(directory / row["file"], row["name"], row["players"]) for _, row in manifest.iterrows()]
    else:
        entries = [(p, None, None) for p in sorted(directory.glob("*.gdl"))]
    if not entries:
        raise CorpusError(f"No games found in {directory}")
    return entries


def _check_manifest(game: CorpusGame, name: str | None, players: int | None) -> None:
    if name is not None and game.name != name:
        raise CorpusError(
            f"{game.path.name}: manifest names '{name}' but the description says '{game.name}'"
        )
    if players is not None and game.declared_players is not None and game.declared_players != players:
        raise CorpusError(
            f"{game.path.name}: manifest says {players} players, description says {game.declared_players}"
        )


def load_corpus(directory: Path) -> tuple[CorpusGame, ...]:
    """Load every game in ``directory``.

    ``manifest.txt`` (``name,players,file`` per line) fixes the order and the
    expected player counts; without it every ``*.gdl`` is loaded sorted by
    file name.
    """
    games = []
    for path, name, players in _corpus_entries(directory):
        game = load_game(path)
        _check_manifest(game, name, players)
        games.append(game)
    logger.info("Loaded %d game(s) from %s", len(games), directory)
    return tuple(games)


def compile_corpus(games: tuple[CorpusGame, ...]) -> dict[str, GameSpec]:
    """Playable specs by game name; games using unsupported ludemes are skipped."""
    specs = {}
    for game in games:
        try:
            specs[game.name] = compile_game(game.tree)
        except UnsupportedLudeme as e:
            logger.warning("Skipping %s: %s", game.name, e)
    return specs


def check_corpus(directory: Path) -> tuple[GameCheck, ...]:
    """Parse and compile every game, recording per-file diagnostics."""
    checks = []
    for path, name, players in _corpus_entries(directory):
        try:
            game = load_game(path)
        except (GdlSyntaxError, FileNotFoundError) as e:
            checks.append(GameCheck(path, CheckStatus.FAILED, message=str(e)))
            continue

        found = {"name": game.name, "players": game.declared_players, "ludeme_count": len(game.ludemes)}
        try:
            _check_manifest(game, name, players)
            spec = compile_game(game.tree)
        except UnsupportedLudeme as e:
            checks.append(GameCheck(path, CheckStatus.PARSE_ONLY, message=str(e), **found))
        except (CompileError, CorpusError) as e:
            checks.append(GameCheck(path, CheckStatus.FAILED, message=str(e), **found))
        else:
            found["players"] = spec.player_count
            checks.append(GameCheck(path, CheckStatus.PLAYABLE, **found))
        logger.debug("%s: %s", path.name, checks[-1].status.value)
    return tuple(checks)


def _resolved(kind_name: str, sign: int) -> HeuristicSpec:
    kind = HeuristicKind.from_name(kind_name)
    return NULL_HEURISTIC if kind is HeuristicKind.NULL else HeuristicSpec(kind, sign)


def load_win_rates(path: Path) -> WinRateTable:
    """Read a per-game tournament JSON back into a ``WinRateTable``."""
    if not path.exists():
        raise FileNotFoundError(f"File not found: {path}")
    doc = json.loads(path.read_text(encoding="utf-8"))
    try:
        entries = tuple(
            EntryResult(
                slot=HeuristicSpec.from_label(e["slot"]),
                resolved=_resolved(e["resolvedKind"], int(e["sign"])),
                games_played=int(e["gamesPlayed"]),
                win_credit=float(e["winCredit"]),
            )
            for e in doc["entries"]
        )
        return WinRateTable(
            game=doc["game"],
            n=int(doc["n"]),
            entries=entries,
            completed_matches=int(doc.get("completedMatches", 0)),
            failed_matches=int(doc.get("failedMatches", 0)),
        )
    except (KeyError, TypeError) as e:
        raise ValueError(f"{path}: not a tournament result file ({e})") from e


def load_results(directory: Path, games: tuple[str, ...] | list[str]) -> dict[str, WinRateTable]:
    """Per-game tables for ``games``, read from ``<directory>/<safe name>.json``."""
    tables = {}
    for game in games:
        path = directory / f"{safe_name(game)}.json"
        if not path.exists():
            raise MissingResults(game)
        tables[game] = load_win_rates(path)
    return tables
