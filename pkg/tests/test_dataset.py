"""Tests for feature matrices, label joins and the dataset CSV format."""

from pathlib import Path

import numpy as np
import pytest

from heuristic_portfolio.core.models import (
    NULL_HEURISTIC,
    CorpusGame,
    EntryResult,
    HeuristicKind,
    HeuristicSpec,
    WinRateTable,
    portfolio_slots,
)
from heuristic_portfolio.data.dataset import (
    build_feature_matrix,
    join_labels,
    read_csv,
    to_label,
    write_csv,
)
from heuristic_portfolio.data.exporter import write_results_json
from heuristic_portfolio.data.loader import load_corpus, load_game
from heuristic_portfolio.data.validators import label_column
from heuristic_portfolio.errors import DuplicateGameName, MalformedCsv, MissingResults
from tests.games import TIC_TAC_TOE, TWO_LINE

MATERIAL_PLUS = HeuristicSpec(HeuristicKind.MATERIAL, 1)


def table(game: str, rate: float) -> WinRateTable:
    """Every slot at ``rate`` except Null, which sits at ``1 - rate``."""
    entries = tuple(
        EntryResult(slot, slot, 100, (1 - rate if slot == NULL_HEURISTIC else rate) * 100)
        for slot in portfolio_slots()
    )
    return WinRateTable(game=game, n=2, entries=entries, completed_matches=100)


@pytest.fixture
def games(make_corpus) -> tuple[CorpusGame, ...]:
    return load_corpus(make_corpus({"a.gdl": TIC_TAC_TOE, "b.gdl": TWO_LINE}))


@pytest.fixture
def dataset(games):
    matrix = build_feature_matrix(games)
    return join_labels(matrix, {"Tic-Tac-Toe": table("Tic-Tac-Toe", 0.6209), "Two-Line": table("Two-Line", 0.5)})


def write(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "dataset.csv"
    path.write_text(text, encoding="utf-8")
    return path


class TestFeatureMatrix:
    def test_single_game_is_all_ones(self, tmp_path: Path):
        path = tmp_path / "ttt.gdl"
        path.write_text(TIC_TAC_TOE, encoding="utf-8")
        matrix = build_feature_matrix([load_game(path)])
        assert matrix.X.shape == (1, len(matrix.vocabulary))
        assert matrix.X.all()

    def test_vocabulary_is_sorted_union(self, games):
        matrix = build_feature_matrix(games)
        assert list(matrix.vocabulary) == sorted(matrix.vocabulary)
        assert set(matrix.vocabulary) == games[0].ludemes.names | games[1].ludemes.names
        assert matrix.game_names == ("Tic-Tac-Toe", "Two-Line")

    def test_rows_match_ludemes(self, games):
        matrix = build_feature_matrix(games)
        for i, game in enumerate(games):
            present = {name for j, name in enumerate(matrix.vocabulary) if matrix.X[i, j]}
            assert present == game.ludemes.names

    def test_duplicate_names(self, games):
        with pytest.raises(DuplicateGameName, match="Tic-Tac-Toe"):
            build_feature_matrix([games[0], games[0]])

    def test_bundled_corpus(self, corpus_dir: Path):
        matrix = build_feature_matrix(load_corpus(corpus_dir))
        assert matrix.X.shape[0] == 13
        assert set(np.unique(matrix.X)) <= {0, 1}


class TestLabels:
    def test_to_label(self):
        assert to_label(0.6209) == 62.09
        assert to_label(1.0) == 100.0
        assert to_label(0.0) == 0.0

    def test_join_from_tables(self, dataset):
        assert dataset.slots == portfolio_slots()
        assert list(dataset.labels[MATERIAL_PLUS]) == [62.09, 50.0]
        assert list(dataset.labels[NULL_HEURISTIC]) == [37.91, 50.0]
        assert dataset.label_matrix().shape == (2, 27)

    def test_join_from_directory(self, games, tmp_path: Path):
        for name, rate in (("Tic-Tac-Toe", 0.25), ("Two-Line", 0.75)):
            write_results_json(table(name, rate), tmp_path / f"{name}.json", master_seed=1, config={})
        labeled = join_labels(build_feature_matrix(games), tmp_path)
        assert list(labeled.labels[MATERIAL_PLUS]) == [25.0, 75.0]

    def test_missing_game(self, games):
        with pytest.raises(MissingResults, match="Two-Line"):
            join_labels(build_feature_matrix(games), {"Tic-Tac-Toe": table("Tic-Tac-Toe", 0.5)})


class TestCsv:
    def test_round_trip(self, dataset, tmp_path: Path):
        path = tmp_path / "dataset.csv"
        write_csv(dataset, path, comment="# seed=42")
        loaded = read_csv(path)
        assert loaded.features.game_names == dataset.features.game_names
        assert loaded.features.vocabulary == dataset.features.vocabulary
        np.testing.assert_array_equal(loaded.features.X, dataset.features.X)
        assert loaded.slots == dataset.slots
        for slot in dataset.slots:
            np.testing.assert_allclose(loaded.labels[slot], dataset.labels[slot])

    def test_layout(self, dataset, tmp_path: Path):
        path = tmp_path / "dataset.csv"
        write_csv(dataset, path, comment="# seed=42")
        raw = path.read_bytes()
        assert b"\r" not in raw
        lines = raw.decode("utf-8").splitlines()
        assert lines[0] == "# seed=42"
        header = lines[1].split(",")
        assert header[0] == "game"
        assert header[-27:] == [label_column(s) for s in portfolio_slots()]
        assert lines[2].startswith("Tic-Tac-Toe,")
        assert lines[2].endswith(",37.91")

    def test_rewrite_is_byte_identical(self, dataset, tmp_path: Path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        write_csv(dataset, first)
        write_csv(dataset, second)
        assert first.read_bytes() == second.read_bytes()

    def test_features_only(self, dataset, tmp_path: Path):
        path = tmp_path / "features.csv"
        write_csv(dataset.features, path)
        loaded = read_csv(path)
        assert loaded.labels == {}
        assert loaded.features.vocabulary == dataset.features.vocabulary

    def test_comment_must_start_with_hash(self, dataset, tmp_path: Path):
        with pytest.raises(ValueError):
            write_csv(dataset, tmp_path / "x.csv", comment="seed=42")

    def test_missing_file(self, tmp_path: Path):
        with pytest.raises(FileNotFoundError):
            read_csv(tmp_path / "absent.csv")

    def test_bad_feature_value(self, tmp_path: Path):
        with pytest.raises(MalformedCsv) as exc:
            read_csv(write(tmp_path, "# run\ngame,add,line\nTTT,1,2\n"))
        assert exc.value.line == 3

    def test_label_out_of_range(self, tmp_path: Path):
        with pytest.raises(MalformedCsv, match="outside"):
            read_csv(write(tmp_path, "game,add,label:Material:+\nTTT,1,101\n"))

    def test_duplicate_row(self, tmp_path: Path):
        with pytest.raises(DuplicateGameName):
            read_csv(write(tmp_path, "game,add\nTTT,1\nTTT,0\n"))

    def test_first_column_must_be_game(self, tmp_path: Path):
        with pytest.raises(MalformedCsv) as exc:
            read_csv(write(tmp_path, "name,add\nTTT,1\n"))
        assert exc.value.line == 1

    def test_labels_after_ludemes(self, tmp_path: Path):
        with pytest.raises(MalformedCsv, match="label columns"):
            read_csv(write(tmp_path, "game,label:Material:+,add\nTTT,50,1\n"))

    def test_unknown_label_column(self, tmp_path: Path):
        with pytest.raises(MalformedCsv):
            read_csv(write(tmp_path, "game,add,label:Nope:+\nTTT,1,50\n"))

    def test_empty_file(self, tmp_path: Path):
        with pytest.raises(MalformedCsv):
            read_csv(write(tmp_path, ""))
