"""Fixed-depth alpha-beta search with a heuristic leaf evaluation.

With more than two players the search is paranoid: every opponent minimises
the root player's value.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from heuristic_portfolio.core.heuristics import state_value
from heuristic_portfolio.core.models import HeuristicSpec
from heuristic_portfolio.engine.models import GameSpec, GameState, Move
from heuristic_portfolio.engine.rules import apply_unchecked, legal_moves, outcome

DEFAULT_DEPTH = 2
TERMINAL_UTILITY_SCALE = 1e6


@dataclass(frozen=True)
class SearchConfig:
    depth: int = DEFAULT_DEPTH
    terminal_utility_scale: float = TERMINAL_UTILITY_SCALE
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.depth < 1:
            raise ValueError(f"Search depth must be at least 1, got {self.depth}")
        if self.terminal_utility_scale <= 0:
            raise ValueError("Terminal utility scale must be positive")


@dataclass
class SearchStats:
    """Counts visited nodes; pass one in to measure a search."""

    nodes: int = field(default=0)


def _leaf(
    spec: GameSpec,
    state: GameState,
    h: HeuristicSpec,
    depth: int,
    player: int,
    scale: float,
) -> float | None:
    result = outcome(spec, state)
    if result is not None:
        return result.utilities[player - 1] * scale
    if depth == 0:
        return state_value(h, spec, state, player)
    return None


def alphabeta(
    spec: GameSpec,
    state: GameState,
    h: HeuristicSpec,
    depth: int,
    player: int,
    *,
    alpha: float = -math.inf,
    beta: float = math.inf,
    scale: float = TERMINAL_UTILITY_SCALE,
    stats: SearchStats | None = None,
) -> float:
    """Depth-limited minimax value of ``state`` for ``player`` with pruning."""
    if stats is not None:
        stats.nodes += 1
    value = _leaf(spec, state, h, depth, player, scale)
    if value is not None:
        return value

    maximising = state.mover == player
    best = -math.inf if maximising else math.inf
    for move in legal_moves(spec, state):
        child = apply_unchecked(spec, state, move)
        score = alphabeta(
            spec, child, h, depth - 1, player,
            alpha=alpha, beta=beta, scale=scale, stats=stats,
        )
        if maximising:
            best = max(best, score)
            alpha = max(alpha, best)
        else:
            best = min(best, score)
            beta = min(beta, best)
        if alpha >= beta:
            break
    return best


def minimax_oracle(
    spec: GameSpec,
    state: GameState,
    h: HeuristicSpec,
    depth: int,
    player: int,
    *,
    scale: float = TERMINAL_UTILITY_SCALE,
    stats: SearchStats | None = None,
) -> float:
    """Plain minimax with the same leaves as ``alphabeta``; a test oracle."""
    if stats is not None:
        stats.nodes += 1
    value = _leaf(spec, state, h, depth, player, scale)
    if value is not None:
        return value

    scores = [
        minimax_oracle(spec, apply_unchecked(spec, state, m), h, depth - 1, player,
                       scale=scale, stats=stats)
        for m in legal_moves(spec, state)
    ]
    return max(scores) if state.mover == player else min(scores)


def root_values(
    spec: GameSpec,
    state: GameState,
    h: HeuristicSpec,
    config: SearchConfig,
) -> list[tuple[Move, float]]:
    """Exact value of every root move, or a proof that it is below the best.

    Each child is searched with alpha just below the best value so far, so a
    move that ties the best is valued exactly and a worse one fails low.
    """
    player = state.mover
    best = -math.inf
    values = []
    for move in legal_moves(spec, state):
        child = apply_unchecked(spec, state, move)
        floor = math.nextafter(best, -math.inf) if math.isfinite(best) else -math.inf
        value = alphabeta(
            spec, child, h, config.depth - 1, player,
            alpha=floor, scale=config.terminal_utility_scale,
        )
        values.append((move, value))
        best = max(best, value)
    return values


def choose_move(
    spec: GameSpec,
    state: GameState,
    h: HeuristicSpec,
    config: SearchConfig,
    rng: random.Random | None = None,
) -> Move:
    """A move with the highest root value; ties are broken uniformly by ``rng``.

    Without an ``rng`` a fresh one is seeded from ``config.rng_seed``.
    """
    values = root_values(spec, state, h, config)
    best = max(v for _, v in values)
    candidates = [m for m, v in values if v == best]
    if len(candidates) == 1:
        return candidates[0]
    if rng is None:
        rng = random.Random(config.rng_seed)
    return rng.choice(candidates)
