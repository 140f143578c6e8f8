"""Integration tests: corpus to tournament, evaluation and clustering artifacts."""

import os
import time
from pathlib import Path

import pytest
from click.testing import CliRunner

from heuristic_portfolio.cli.main import cli
from heuristic_portfolio.core.models import NULL_HEURISTIC
from heuristic_portfolio.data.dataset import join_labels, read_csv
from heuristic_portfolio.data.loader import load_results, load_win_rates
from tests.games import BLOCKED, MINI_LINE, TIC_TAC_TOE, TWO_LINE

CORPUS = {"a.gdl": TWO_LINE, "b.gdl": BLOCKED, "c.gdl": MINI_LINE, "d.gdl": TIC_TAC_TOE}
NAMES = ["Two-Line", "Blocked", "Mini-Line", "Tic-Tac-Toe"]


def invoke(*args: str) -> None:
    result = CliRunner().invoke(cli, list(args))
    assert result.exit_code == 0, result.output


def run_tournament(corpus: Path, output: Path, threads: int) -> None:
    invoke(
        "tournament", str(corpus), "-o", str(output),
        "--games-per-combination", "1", "--depth", "1", "--threads", str(threads),
    )


@pytest.fixture
def corpus(make_corpus) -> Path:
    return make_corpus(CORPUS)


class TestPipeline:
    def test_full_pipeline(self, corpus, tmp_path):
        features = tmp_path / "features.csv"
        results = tmp_path / "results"
        report = tmp_path / "report"
        clusters = tmp_path / "cluster"

        invoke("ludemes", str(corpus), "-o", str(features))
        run_tournament(corpus, results, threads=1)
        invoke(
            "evaluate", "--features", str(features), "--results", str(results), "-o", str(report),
            "--algorithms", "Naive,Ridge,KNeighbors,DecisionTree", "--threads", "1",
        )
        invoke("cluster", "--features", str(features), "-o", str(clusters), "--iterations", "200")

        tables = load_results(results, NAMES)
        assert set(tables) == set(NAMES)
        for table in tables.values():
            assert len(table.entries) == 27
            assert table.failed_matches == 0
            assert sum(e.win_credit for e in table.entries) == pytest.approx(table.completed_matches)

        assert tables["Two-Line"].completed_matches == 27 * 10
        # one game per combination puts every focus entry in the first seat, which always wins here
        for entry in tables["Two-Line"].entries:
            assert entry.win_credit == 10.0
        # every Blocked match ends with both sides stuck and no score
        assert all(e.win_rate == 0.5 for e in tables["Blocked"].entries)

        dataset = join_labels(read_csv(features).features, results)
        assert dataset.label_matrix().shape == (4, 27)
        assert list(dataset.labels[NULL_HEURISTIC][1:2]) == [50.0]

        eval_lines = (report / "report.csv").read_text(encoding="utf-8").splitlines()
        assert len(eval_lines) == 2 + 4
        assert (clusters / "embedding.csv").exists()
        assert (clusters / "clusters.txt").exists()

    def test_thread_count_does_not_change_artifacts(self, corpus, tmp_path):
        serial, parallel = tmp_path / "serial", tmp_path / "parallel"
        run_tournament(corpus, serial, threads=1)
        run_tournament(corpus, parallel, threads=2)
        files = sorted(p.name for p in serial.iterdir())
        assert files == sorted(p.name for p in parallel.iterdir())
        assert "report.csv" in files
        for name in files:
            assert (serial / name).read_bytes() == (parallel / name).read_bytes(), name

    def test_reruns_are_byte_identical(self, corpus, tmp_path):
        first, second = tmp_path / "first.csv", tmp_path / "second.csv"
        invoke("ludemes", str(corpus), "-o", str(first))
        invoke("ludemes", str(corpus), "-o", str(second))
        assert first.read_bytes() == second.read_bytes()

    @pytest.mark.slow
    def test_every_algorithm(self, corpus_dir, tmp_path):
        features = tmp_path / "features.csv"
        results = tmp_path / "results"
        invoke("ludemes", str(corpus_dir), "-o", str(features))
        invoke("tournament", str(corpus_dir), "-o", str(results), "--depth", "1", "--games-per-combination", "2")
        invoke("evaluate", "--features", str(features), "--results", str(results), "-o", str(tmp_path / "report"))
        lines = (tmp_path / "report" / "report.csv").read_text(encoding="utf-8").splitlines()
        assert len(lines) == 2 + 8

    @pytest.mark.slow
    def test_full_protocol_on_bundled_corpus(self, corpus_dir, tmp_path):
        threads = str(os.cpu_count() or 1)
        results = tmp_path / "results"
        started = time.perf_counter()
        invoke("tournament", str(corpus_dir), "-o", str(results), "--threads", threads)
        assert time.perf_counter() - started < 30 * 60

        tables = [load_win_rates(path) for path in sorted(results.glob("*.json"))]
        assert len(tables) == 13
        for table in tables:
            assert table.failed_matches == 0
            assert all(e.games_played >= 100 for e in table.entries), table.game
        assert (results / "report.csv").exists()

    @pytest.mark.slow
    def test_bundled_corpus_is_thread_independent(self, corpus_dir, tmp_path):
        serial, parallel = tmp_path / "serial", tmp_path / "parallel"
        for output, threads in ((serial, "1"), (parallel, str(os.cpu_count() or 1))):
            invoke(
                "tournament", str(corpus_dir), "-o", str(output),
                "--depth", "1", "--games-per-combination", "1", "--threads", threads,
            )
        files = sorted(p.name for p in serial.iterdir())
        assert files == sorted(p.name for p in parallel.iterdir())
        for name in files:
            assert (serial / name).read_bytes() == (parallel / name).read_bytes(), name
