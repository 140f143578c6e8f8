"""Core data models: heuristics, tournaments, corpus games and datasets."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np
import pandas as pd

from heuristic_portfolio.gdl.models import LudemeSet, Node


class HeuristicKind(Enum):
    """Heuristic kinds in canonical order; the order breaks ties downstream."""

    MATERIAL = "Material"
    MOBILITY = "Mobility"
    INFLUENCE = "Influence"
    CORNER_PROXIMITY = "CornerProximity"
    SIDES_PROXIMITY = "SidesProximity"
    LINE_COMPLETION = "LineCompletion"
    CENTRE_PROXIMITY = "CentreProximity"
    REGION_PROXIMITY = "RegionProximity"
    OWN_REGIONS_COUNT = "OwnRegionsCount"
    PLAYER_REGIONS_PROXIMITY = "PlayerRegionsProximity"
    PLAYER_SITE_MAP_COUNT = "PlayerSiteMapCount"
    SCORE = "Score"
    COMPONENT_VALUES = "ComponentValues"
    NULL = "Null"

    @property
    def order(self) -> int:
        return _KIND_ORDER[self]

    @classmethod
    def from_name(cls, name: str) -> HeuristicKind:
        for kind in cls:
            if kind.value == name:
                return kind
        raise ValueError(f"Unknown heuristic: '{name}'")


_KIND_ORDER = {kind: i for i, kind in enumerate(HeuristicKind)}


@dataclass(frozen=True)
class HeuristicSpec:
    """A heuristic kind with a positive or negative weight."""

    kind: HeuristicKind
    sign: int = 1

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"Sign must be +1 or -1, got {self.sign}")
        if self.kind is HeuristicKind.NULL and self.sign != 1:
            raise ValueError("Null has no negative variant")

    @property
    def label(self) -> str:
        if self.kind is HeuristicKind.NULL:
            return self.kind.value
        return f"{self.kind.value}{'+' if self.sign > 0 else '-'}"

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.kind.order, 0 if self.sign > 0 else 1)

    @classmethod
    def from_label(cls, label: str) -> HeuristicSpec:
        """Inverse of ``label``."""
        if label == HeuristicKind.NULL.value:
            return cls(HeuristicKind.NULL)
        if len(label) < 2 or label[-1] not in "+-":
            raise ValueError(f"Invalid heuristic label: '{label}'")
        return cls(HeuristicKind.from_name(label[:-1]), 1 if label[-1] == "+" else -1)


NULL_HEURISTIC = HeuristicSpec(HeuristicKind.NULL)


def portfolio_slots() -> tuple[HeuristicSpec, ...]:
    """The 27 portfolio slots: 13 kinds x 2 signs, then Null."""
    slots = [
        HeuristicSpec(kind, sign)
        for kind in HeuristicKind
        if kind is not HeuristicKind.NULL
        for sign in (1, -1)
    ]
    return (*slots, NULL_HEURISTIC)


@dataclass(frozen=True)
class PoolEntry:
    """A portfolio slot and the heuristic that actually plays it."""

    slot: HeuristicSpec
    resolved: HeuristicSpec

    @property
    def substituted(self) -> bool:
        return self.slot != self.resolved


@dataclass(frozen=True)
class CandidatePool:
    game_name: str
    n: int
    entries: tuple[PoolEntry, ...]

    @property
    def k(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class ScheduledMatch:
    """One match: ``seats[i]`` is the pool entry index playing as player i+1."""

    focus: int
    combination: int
    repetition: int
    seats: tuple[int, ...]
    seed: int


@dataclass(frozen=True)
class MatchupSchedule:
    game_name: str
    master_seed: int
    combinations: tuple[tuple[tuple[int, ...], ...], ...]  # per focus entry
    games_per_combination: int
    matches: tuple[ScheduledMatch, ...]

    def matches_for(self, focus: int) -> tuple[ScheduledMatch, ...]:
        return tuple(m for m in self.matches if m.focus == focus)


@dataclass(frozen=True)
class EntryResult:
    slot: HeuristicSpec
    resolved: HeuristicSpec
    games_played: int
    win_credit: float

    @property
    def win_rate(self) -> float:
        if self.games_played == 0:
            return 0.0
        return self.win_credit / self.games_played


@dataclass(frozen=True)
class WinRateTable:
    """Tournament results for one game, one row per portfolio slot."""

    game: str
    n: int
    entries: tuple[EntryResult, ...]
    completed_matches: int
    failed_matches: int = 0

    def win_rate(self, slot: HeuristicSpec) -> float:
        for entry in self.entries:
            if entry.slot == slot:
                return entry.win_rate
        raise KeyError(slot.label)


@dataclass(frozen=True)
class ReportRow:
    slot: HeuristicSpec
    avg_win_pct: float
    top_count: int


@dataclass(frozen=True)
class HeuristicReport:
    """Win-rates averaged over games, with exclusive top-performer counts."""

    rows: tuple[ReportRow, ...]
    game_count: int


@dataclass(frozen=True)
class CorpusGame:
    """A game description as loaded from the corpus directory."""

    name: str
    path: Path
    tree: Node
    ludemes: LudemeSet
    declared_players: int | None = None


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """Binary ludeme-presence features, one row per game."""

    game_names: tuple[str, ...]
    vocabulary: tuple[str, ...]
    X: np.ndarray

    def __post_init__(self) -> None:
        if self.X.shape != (len(self.game_names), len(self.vocabulary)):
            raise ValueError(
                f"Feature matrix shape {self.X.shape} does not match "
                f"{len(self.game_names)} games x {len(self.vocabulary)} ludemes"
            )

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.X.astype(int), columns=list(self.vocabulary))
        frame.insert(0, "game", list(self.game_names), allow_duplicates=True)
        return frame


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Feature matrix plus one win-% label vector per portfolio slot."""

    features: FeatureMatrix
    labels: dict[HeuristicSpec, np.ndarray]

    def __post_init__(self) -> None:
        n = len(self.features.game_names)
        for slot, y in self.labels.items():
            if len(y) != n:
                raise ValueError(f"Label vector for {slot.label} has {len(y)} values, expected {n}")
            if np.any((y < 0) | (y > 100)):
                raise ValueError(f"Labels for {slot.label} must lie in [0, 100]")

    @property
    def slots(self) -> tuple[HeuristicSpec, ...]:
        return tuple(sorted(self.labels, key=lambda s: s.sort_key))

    def label_matrix(self) -> np.ndarray:
        """Games x slots matrix of labels in canonical slot order."""
        return np.column_stack([self.labels[s] for s in self.slots])


@dataclass(frozen=True)
class AlgorithmResult:
    """LOOCV results of one regression algorithm over every slot."""

    algorithm: str
    mae_per_slot: tuple[float, ...]
    mae_mean: float
    mae_stdev: float
    expected_win_rate: float
    regret: float
    mean_best_win_rate: float


@dataclass(frozen=True)
class EvalReport:
    slots: tuple[HeuristicSpec, ...]
    results: tuple[AlgorithmResult, ...]
    game_count: int
    seed: int

    def result(self, algorithm: str) -> AlgorithmResult:
        for r in self.results:
            if r.algorithm == algorithm:
                return r
        raise KeyError(algorithm)

    def improvement_over_naive(self, algorithm: str) -> tuple[float, float] | None:
        """Relative MAE and regret reduction versus Naive, in percent."""
        try:
            naive = self.result("Naive")
        except KeyError:
            return None
        current = self.result(algorithm)
        mae = (naive.mae_mean - current.mae_mean) / naive.mae_mean * 100 if naive.mae_mean else 0.0
        regret = (naive.regret - current.regret) / naive.regret * 100 if naive.regret else 0.0
        return mae, regret


@dataclass(frozen=True)
class TsneConfig:
    perplexity: float = 30.0
    iterations: int = 1000
    learning_rate: float = 200.0
    initial_momentum: float = 0.5
    final_momentum: float = 0.8
    momentum_switch: int = 250
    exaggeration: float = 12.0
    exaggeration_iterations: int = 250
    seed: int = 0

    def __post_init__(self) -> None:
        if self.perplexity <= 0:
            raise ValueError("Perplexity must be positive")
        if self.iterations < 1:
            raise ValueError("Iterations must be positive")
        if self.learning_rate <= 0:
            raise ValueError("Learning rate must be positive")


@dataclass(frozen=True, eq=False)
class Embedding:
    """2-D t-SNE coordinates, one row per game."""

    points: np.ndarray
    initial_kl: float
    final_kl: float
    config: TsneConfig


@dataclass(frozen=True)
class ClusterRule:
    """A root-to-leaf path: (ludeme, present) conditions predicting ``cluster``."""

    conditions: tuple[tuple[str, bool], ...]
    cluster: int
    samples: int

    def describe(self) -> str:
        if not self.conditions:
            return f"(all games) -> cluster {self.cluster} [{self.samples} games]"
        parts = [f"{name} {'present' if present else 'absent'}" for name, present in self.conditions]
        return f"{' AND '.join(parts)} -> cluster {self.cluster} [{self.samples} games]"


@dataclass(frozen=True)
class ClusterExplanation:
    labels: tuple[int, ...]
    rules: tuple[ClusterRule, ...]
    cluster_sizes: dict[int, int]
    accuracy: float

    @property
    def noise_count(self) -> int:
        return sum(1 for label in self.labels if label == -1)


class CheckStatus(Enum):
    PLAYABLE = "playable"
    PARSE_ONLY = "parse-only"
    FAILED = "failed"


@dataclass(frozen=True)
class GameCheck:
    """Validation outcome for one corpus file."""

    path: Path
    status: CheckStatus
    name: str | None = None
    players: int | None = None
    ludeme_count: int = 0
    message: str = ""

    @property
    def parses(self) -> bool:
        return self.status is not CheckStatus.FAILED or self.name is not None

    @property
    def compiles(self) -> bool:
        return self.status is CheckStatus.PLAYABLE
