"""Run configuration shared by every pipeline command."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

ALGORITHMS = (
    "Naive",
    "Ridge",
    "Lasso",
    "ElasticNet",
    "KNeighbors",
    "DecisionTree",
    "RandomForest",
    "GradientBoosting",
)

DEFAULT_SEED = 42


@dataclass(frozen=True)
class RunConfig:
    corpus_dir: Path | None = None
    output_dir: Path | None = None
    master_seed: int = DEFAULT_SEED
    search_depth: int = 2
    per_combination_games: int | None = None
    algorithms: tuple[str, ...] = ALGORITHMS
    perplexity: float = 30.0
    tsne_iterations: int = 1000
    learning_rate: float = 200.0
    cluster_eps: float | None = None
    cluster_min_pts: int = 4
    threads: int | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.search_depth < 1:
            raise ValueError("Search depth must be at least 1")
        if self.per_combination_games is not None and self.per_combination_games < 1:
            raise ValueError("Games per combination must be positive")
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise ValueError(f"Unknown algorithm(s): {', '.join(unknown)}")
        if not self.algorithms:
            raise ValueError("At least one algorithm is required")
        if self.perplexity <= 0:
            raise ValueError("Perplexity must be positive")
        if self.tsne_iterations < 1:
            raise ValueError("t-SNE iterations must be positive")
        if self.cluster_min_pts < 1:
            raise ValueError("min-pts must be positive")
        if self.threads is not None and self.threads < 1:
            raise ValueError("Thread count must be positive")

    @property
    def workers(self) -> int:
        return self.threads or os.cpu_count() or 1

    def to_dict(self) -> dict[str, object]:
        """Settings that determine outputs; thread count and paths are left out."""
        return {
            "masterSeed": self.master_seed,
            "searchDepth": self.search_depth,
            "perCombinationGames": self.per_combination_games,
            "algorithms": list(self.algorithms),
            "perplexity": self.perplexity,
            "tsneIterations": self.tsne_iterations,
            "learningRate": self.learning_rate,
            "clusterEps": self.cluster_eps,
            "clusterMinPts": self.cluster_min_pts,
        }

    def comment_line(self) -> str:
        """The ``# key=value`` header line written at the top of CSV artifacts."""
        parts = []
        for key, value in self.to_dict().items():
            if isinstance(value, list):
                value = "|".join(value)
            parts.append(f"{key}={value}")
        return "# " + " ".join(parts)
