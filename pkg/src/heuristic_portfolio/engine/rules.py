"""Initial state, move generation, move application and terminal detection.

Move lists, material counts and the outcome of a position are memoised on
the state, so search can ask for them repeatedly at no extra cost.
"""

from __future__ import annotations

from functools import lru_cache

from heuristic_portfolio.engine.compiler import line_windows
from heuristic_portfolio.engine.models import (
    AddToEmpty,
    Direction,
    GameSpec,
    GameState,
    HighestResult,
    LineOf,
    Measure,
    Move,
    MoveKind,
    NoMoves,
    Occupant,
    Outcome,
    ReachRegion,
    Result,
    ResultKind,
    Role,
    StepMove,
    TurnLimit,
)
from heuristic_portfolio.errors import IllegalMove

PASS = Move(MoveKind.PASS)

_FIXED_OFFSETS = {
    Direction.ORTHOGONAL: ((1, 0), (-1, 0), (0, 1), (0, -1)),
    Direction.DIAGONAL: ((1, 1), (1, -1), (-1, 1), (-1, -1)),
    Direction.ADJACENT: (
        (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1),
    ),
}


def initial_state(spec: GameSpec) -> GameState:
    occupants: list[Occupant | None] = [None] * spec.board.num_sites
    for placement in spec.placements:
        for site in placement.sites:
            occupants[site] = Occupant(placement.owner, placement.piece, placement.count)
    return GameState(
        occupants=tuple(occupants),
        mover=1,
        scores=(0,) * spec.player_count,
    )


def position_key(state: GameState) -> tuple:
    """Occupancy and side to move; ignores how the position was reached."""
    return (state.occupants, state.mover)


def _offsets(direction: Direction, player: int) -> tuple[tuple[int, int], ...]:
    forward = 1 if player == 1 else -1
    if direction is Direction.FORWARD:
        return ((forward, 0),)
    if direction is Direction.FORWARD_DIAGONAL:
        return ((forward, -1), (forward, 1))
    return _FIXED_OFFSETS[direction]


def rule_moves(spec: GameSpec, state: GameState, player: int) -> list[Move]:
    """Moves the play rule generates for ``player``, without the Pass fallback."""
    key = ("moves", player)
    moves = state.memo.get(key)
    if moves is None:
        moves = state.memo[key] = tuple(_generate_moves(spec, state, player))
    return list(moves)


def move_count(spec: GameSpec, state: GameState, player: int) -> int:
    """``len(rule_moves(...))`` without building the moves for placement games."""
    if isinstance(spec.play_rule, AddToEmpty):
        return state.occupants.count(None)
    return len(rule_moves(spec, state, player))


def _generate_moves(spec: GameSpec, state: GameState, player: int) -> list[Move]:
    occupants = state.occupants
    rule = spec.play_rule
    if isinstance(rule, AddToEmpty):
        return [Move(MoveKind.ADD, to=i) for i, occ in enumerate(occupants) if occ is None]

    board = spec.board
    offsets: list[tuple[int, int]] = []
    for direction in rule.directions:
        for offset in _offsets(direction, player):
            if offset not in offsets:
                offsets.append(offset)

    moves = []
    for origin, occ in enumerate(occupants):
        if occ is None or occ.owner != player:
            continue
        row, col = board.coords[origin]
        for dr, dc in offsets:
            target = board.site(row + dr, col + dc)
            if target is None:
                continue
            there = occupants[target]
            if there is None:
                moves.append(Move(MoveKind.STEP, to=target, origin=origin))
            elif there.owner != player and rule.capture_by_replacement:
                moves.append(Move(MoveKind.STEP, to=target, origin=origin, capture=True))
    moves.sort(key=lambda m: m.sort_key)
    return moves


def legal_moves(spec: GameSpec, state: GameState) -> list[Move]:
    """Legal moves for the side to move, sorted by (from, to). Never empty."""
    return rule_moves(spec, state, state.mover) or [PASS]


def apply(spec: GameSpec, state: GameState, move: Move) -> GameState:
    """Play ``move`` and return the successor state. Rejects illegal moves."""
    if move not in legal_moves(spec, state):
        raise IllegalMove(f"{move} is not legal for player {state.mover} in {spec.name}")
    return apply_unchecked(spec, state, move)


def apply_unchecked(spec: GameSpec, state: GameState, move: Move) -> GameState:
    """``apply`` without the legality check, for callers that generated the move."""
    mover = state.mover
    occupants = list(state.occupants)
    scores = state.scores

    if move.kind is MoveKind.ADD:
        piece = spec.pieces_of(mover)[0].name
        occupants[move.to] = Occupant(mover, piece, 1)
    elif move.kind is MoveKind.STEP:
        occupants[move.to] = occupants[move.origin]
        occupants[move.origin] = None
        if move.capture and spec.points_per_capture:
            scores = tuple(
                s + spec.points_per_capture if p == mover else s
                for p, s in enumerate(scores, start=1)
            )

    return GameState(
        occupants=tuple(occupants),
        mover=mover % spec.player_count + 1,
        scores=scores,
        turn_number=state.turn_number + 1,
        history_hash=hash((
            state.history_hash,
            move.kind.value,
            -1 if move.origin is None else move.origin,
            -1 if move.to is None else move.to,
        )),
        last_to=move.to,
    )


def material(state: GameState, player: int) -> int:
    totals = state.memo.get("material")
    if totals is None:
        totals = {}
        for occ in state.occupants:
            if occ is not None:
                totals[occ.owner] = totals.get(occ.owner, 0) + occ.count
        state.memo["material"] = totals
    return totals.get(player, 0)


def outcome(spec: GameSpec, state: GameState) -> Outcome | None:
    """Evaluate the end rules in order; ``None`` while the game continues.

    A state produced by a move only looks for lines through the site that
    move filled, so it assumes its predecessor was not already finished.
    Hand-built states (no last move) are scanned in full.
    """
    memo = state.memo
    if "outcome" not in memo:
        memo["outcome"] = _evaluate_end_rules(spec, state)
    return memo["outcome"]


def _evaluate_end_rules(spec: GameSpec, state: GameState) -> Outcome | None:
    for rule in spec.end_rules:
        if isinstance(rule, LineOf):
            owners = _line_owners(spec, state, rule.length)
            if owners:
                acting = state.previous_mover if state.previous_mover in owners else min(owners)
                return _resolve(spec, state, rule.result, acting)
        elif isinstance(rule, NoMoves):
            if not rule_moves(spec, state, state.mover):
                return _resolve(spec, state, rule.result, state.previous_mover)
        elif isinstance(rule, ReachRegion):
            acting = _region_reacher(spec, state, rule.region)
            if acting is not None:
                return _resolve(spec, state, rule.result, acting)
        elif isinstance(rule, TurnLimit):
            if state.turn_number >= rule.turns:
                return _resolve(spec, state, rule.result, state.previous_mover)

    if not any(isinstance(r, NoMoves) for r in spec.end_rules) and _everyone_stuck(spec, state):
        limit = next(r for r in spec.end_rules if isinstance(r, TurnLimit))
        return _resolve(spec, state, limit.result, state.previous_mover)
    return None


def _everyone_stuck(spec: GameSpec, state: GameState) -> bool:
    if isinstance(spec.play_rule, AddToEmpty):
        return None not in state.occupants
    if rule_moves(spec, state, state.mover):
        return False
    return all(not rule_moves(spec, state, p) for p in spec.players)


@lru_cache(maxsize=64)
def windows_through(spec: GameSpec, length: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Line windows of ``length`` grouped by the sites they contain."""
    windows = spec.line_windows if length == spec.line_target else line_windows(spec.board, length)
    return tuple(tuple(w for w in windows if site in w) for site in range(spec.board.num_sites))


def _line_owners(spec: GameSpec, state: GameState, length: int) -> set[int]:
    if state.last_to is None:
        windows = spec.line_windows if length == spec.line_target else line_windows(spec.board, length)
    else:
        windows = windows_through(spec, length)[state.last_to]
    occupants = state.occupants
    owners = set()
    for window in windows:
        first = occupants[window[0]]
        if first is None or first.owner in owners:
            continue
        if all(occupants[s] is not None and occupants[s].owner == first.owner for s in window[1:]):
            owners.add(first.owner)
    return owners


def _region_reacher(spec: GameSpec, state: GameState, name: str) -> int | None:
    order = [state.previous_mover] + [p for p in spec.players if p != state.previous_mover]
    for player in order:
        targets = set()
        for region in spec.regions:
            if region.name == name and region.owner in (None, player):
                targets |= region.sites
        for site in targets:
            occ = state.occupants[site]
            if occ is not None and occ.owner == player:
                return player
    return None


def _resolve(spec: GameSpec, state: GameState, result: Result, acting: int) -> Outcome:
    n = spec.player_count
    if isinstance(result, HighestResult):
        if result.measure is Measure.SCORE:
            values = list(state.scores)
        else:
            values = [material(state, p) for p in spec.players]
        best = max(values)
        if values.count(best) > 1:
            return Outcome((0.0,) * n)
        return _win(n, values.index(best) + 1)

    player = acting if result.role is Role.MOVER else state.mover
    if result.kind is ResultKind.WIN:
        return _win(n, player)
    if result.kind is ResultKind.LOSS:
        if n == 2:
            return _win(n, 3 - player)
        return Outcome(tuple(-1.0 if p == player else 0.0 for p in spec.players))
    return Outcome((0.0,) * n)


def _win(n: int, winner: int) -> Outcome:
    return Outcome(tuple(1.0 if p == winner else -1.0 for p in range(1, n + 1)))
