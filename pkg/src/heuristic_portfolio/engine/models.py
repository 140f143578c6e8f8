"""Value types for compiled games and positions."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum, StrEnum


class Role(StrEnum):
    MOVER = "Mover"
    NEXT = "Next"


class ResultKind(StrEnum):
    WIN = "Win"
    LOSS = "Loss"
    DRAW = "Draw"


class Measure(StrEnum):
    SCORE = "Score"
    MATERIAL = "Material"


class Direction(StrEnum):
    FORWARD = "Forward"
    FORWARD_DIAGONAL = "ForwardDiagonal"
    ORTHOGONAL = "Orthogonal"
    DIAGONAL = "Diagonal"
    ADJACENT = "Adjacent"


@dataclass(frozen=True)
class Board:
    """A rows x cols grid. Site ``i`` sits at ``coords[i] = (i // cols, i % cols)``."""

    rows: int
    cols: int
    coords: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]  # orthogonal + diagonal neighbours
    corner_sites: frozenset[int]
    edge_sites: frozenset[int]  # perimeter without corners
    centre_sites: frozenset[int]
    distances: tuple[tuple[int, ...], ...]  # 8-neighbour graph distance

    @property
    def num_sites(self) -> int:
        return self.rows * self.cols

    def site(self, row: int, col: int) -> int | None:
        if 0 <= row < self.rows and 0 <= col < self.cols:
            return row * self.cols + col
        return None

    @property
    def perimeter_sites(self) -> frozenset[int]:
        return self.corner_sites | self.edge_sites


@dataclass(frozen=True)
class PieceType:
    name: str
    owner: int
    value: int = 1


@dataclass(frozen=True)
class Region:
    name: str
    sites: frozenset[int]
    owner: int | None = None


@dataclass(frozen=True)
class Placement:
    piece: str
    owner: int
    sites: tuple[int, ...]
    count: int = 1


@dataclass(frozen=True)
class AddToEmpty:
    pass


@dataclass(frozen=True)
class StepMove:
    directions: tuple[Direction, ...]
    capture_by_replacement: bool = False


PlayRule = AddToEmpty | StepMove


@dataclass(frozen=True)
class RoleResult:
    role: Role
    kind: ResultKind


@dataclass(frozen=True)
class HighestResult:
    """The exclusive leader on ``measure`` wins; a shared lead is a draw."""

    measure: Measure


Result = RoleResult | HighestResult


@dataclass(frozen=True)
class LineOf:
    length: int
    result: Result


@dataclass(frozen=True)
class NoMoves:
    result: Result


@dataclass(frozen=True)
class ReachRegion:
    region: str
    result: Result


@dataclass(frozen=True)
class TurnLimit:
    turns: int
    result: Result


EndRule = LineOf | NoMoves | ReachRegion | TurnLimit


@dataclass(frozen=True)
class GameSpec:
    """A compiled, playable game. Immutable and safe to share."""

    name: str
    player_count: int
    board: Board
    piece_types: tuple[PieceType, ...]
    regions: tuple[Region, ...]
    site_maps: tuple[tuple[int, frozenset[int]], ...]
    placements: tuple[Placement, ...]
    play_rule: PlayRule
    end_rules: tuple[EndRule, ...]
    points_per_capture: int | None = None
    line_windows: tuple[tuple[int, ...], ...] = ()

    def __hash__(self) -> int:
        return hash((self.name, self.player_count, self.board.rows, self.board.cols))

    @property
    def players(self) -> range:
        return range(1, self.player_count + 1)

    @property
    def line_target(self) -> int | None:
        for rule in self.end_rules:
            if isinstance(rule, LineOf):
                return rule.length
        return None

    def site_map(self, player: int) -> frozenset[int]:
        for owner, sites in self.site_maps:
            if owner == player:
                return sites
        return frozenset()

    def piece_value(self, piece: str, owner: int) -> int:
        for piece_type in self.piece_types:
            if piece_type.name == piece and piece_type.owner == owner:
                return piece_type.value
        return 1

    def pieces_of(self, player: int) -> tuple[PieceType, ...]:
        return tuple(p for p in self.piece_types if p.owner == player)


@dataclass(frozen=True)
class Occupant:
    owner: int
    piece: str
    count: int = 1


@dataclass(frozen=True)
class GameState:
    """A position snapshot. Position fields never change; ``apply`` returns a new state."""

    occupants: tuple[Occupant | None, ...]
    mover: int
    scores: tuple[int, ...]
    turn_number: int = 0
    history_hash: int = 0
    last_to: int | None = None
    # per-position cache of derived values (moves, outcome); not part of identity
    memo: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    @property
    def previous_mover(self) -> int:
        return (self.mover - 2) % len(self.scores) + 1

    def owned_sites(self, player: int) -> list[int]:
        return [i for i, occ in enumerate(self.occupants) if occ is not None and occ.owner == player]


class MoveKind(Enum):
    PASS = 0
    ADD = 1
    STEP = 2


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    to: int | None = None
    origin: int | None = None
    capture: bool = False

    @property
    def sort_key(self) -> tuple[int, int]:
        return (
            -1 if self.origin is None else self.origin,
            -1 if self.to is None else self.to,
        )


@dataclass(frozen=True)
class Outcome:
    """Per-player utility: win +1, loss -1, draw 0."""

    utilities: tuple[float, ...]

    @property
    def exclusive_winner(self) -> int | None:
        best = max(self.utilities)
        if best <= 0 or self.utilities.count(best) != 1:
            return None
        return self.utilities.index(best) + 1

    @property
    def is_draw(self) -> bool:
        return all(u == 0 for u in self.utilities)
