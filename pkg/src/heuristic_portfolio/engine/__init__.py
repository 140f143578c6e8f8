"""Playable engine for the supported ludeme subset."""

from heuristic_portfolio.engine.compiler import compile_game
from heuristic_portfolio.engine.models import GameSpec, GameState, Move, MoveKind, Outcome
from heuristic_portfolio.engine.rules import (
    apply,
    apply_unchecked,
    initial_state,
    legal_moves,
    outcome,
    position_key,
)

__all__ = [
    "GameSpec",
    "GameState",
    "Move",
    "MoveKind",
    "Outcome",
    "apply",
    "apply_unchecked",
    "compile_game",
    "initial_state",
    "legal_moves",
    "outcome",
    "position_key",
]
