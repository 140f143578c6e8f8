"""Shared fixtures."""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping
from pathlib import Path

import pytest

from heuristic_portfolio.engine import GameSpec
from tests.games import BLOCKED, CORPUS_DIR, STUCK, TIC_TAC_TOE, TWO_LINE, compile_text, corpus_game


@pytest.fixture(autouse=True)
def restore_root_handlers():
    """The CLI reconfigures root logging; undo it after each test."""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    for handler in root.handlers[:]:
        if handler not in handlers:
            root.removeHandler(handler)
    root.setLevel(level)


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS_DIR


@pytest.fixture(scope="session")
def tic_tac_toe() -> GameSpec:
    return compile_text(TIC_TAC_TOE)


@pytest.fixture(scope="session")
def crossings() -> GameSpec:
    return corpus_game("crossings_3.gdl")


@pytest.fixture(scope="session")
def capture_score() -> GameSpec:
    return corpus_game("capture_score.gdl")


@pytest.fixture(scope="session")
def three_line() -> GameSpec:
    return corpus_game("three_line.gdl")


@pytest.fixture(scope="session")
def two_line() -> GameSpec:
    return compile_text(TWO_LINE)


@pytest.fixture(scope="session")
def blocked() -> GameSpec:
    return compile_text(BLOCKED)


@pytest.fixture(scope="session")
def stuck() -> GameSpec:
    return compile_text(STUCK)


@pytest.fixture
def make_corpus(tmp_path: Path) -> Callable[..., Path]:
    """Write ``{file name: description}`` into a fresh corpus directory."""

    def _make(files: Mapping[str, str], manifest: str | None = None, name: str = "corpus") -> Path:
        directory = tmp_path / name
        directory.mkdir()
        for file_name, text in files.items():
            (directory / file_name).write_text(text, encoding="utf-8")
        if manifest is not None:
            (directory / "manifest.txt").write_text(manifest, encoding="utf-8")
        return directory

    return _make
