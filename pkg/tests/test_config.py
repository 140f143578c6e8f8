"""Tests for run configuration."""

from pathlib import Path

import pytest

from heuristic_portfolio.config import ALGORITHMS, DEFAULT_SEED, RunConfig


class TestRunConfig:
    def test_defaults(self):
        config = RunConfig()
        assert config.master_seed == DEFAULT_SEED == 42
        assert config.search_depth == 2
        assert config.algorithms == ALGORITHMS
        assert config.cluster_min_pts == 4

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"search_depth": 0},
            {"per_combination_games": 0},
            {"algorithms": ("MLP",)},
            {"algorithms": ()},
            {"perplexity": 0.0},
            {"tsne_iterations": 0},
            {"cluster_min_pts": 0},
            {"threads": 0},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            RunConfig(**kwargs)

    def test_workers(self, mocker):
        assert RunConfig(threads=3).workers == 3
        mocker.patch("heuristic_portfolio.config.os.cpu_count", return_value=None)
        assert RunConfig().workers == 1

    def test_threads_do_not_affect_outputs(self):
        assert RunConfig(threads=1) == RunConfig(threads=8)
        assert RunConfig(threads=1).to_dict() == RunConfig(threads=8).to_dict()

    def test_paths_left_out_of_dict(self):
        config = RunConfig(corpus_dir=Path("/a"), output_dir=Path("/b"))
        assert config.to_dict() == RunConfig().to_dict()

    def test_comment_line(self):
        line = RunConfig(algorithms=("Naive", "Ridge"), per_combination_games=5).comment_line()
        assert line.startswith("# masterSeed=42 searchDepth=2 perCombinationGames=5 ")
        assert "algorithms=Naive|Ridge" in line
        assert "\n" not in line
