"""Heuristic tournaments: pools, schedules, matches and win-rate tables."""

from __future__ import annotations

import itertools
import logging
import math
import random
from collections.abc import Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from heuristic_portfolio.core.heuristics import applicable
from heuristic_portfolio.core.models import (
    NULL_HEURISTIC,
    CandidatePool,
    EntryResult,
    HeuristicReport,
    HeuristicSpec,
    MatchupSchedule,
    PoolEntry,
    ReportRow,
    ScheduledMatch,
    WinRateTable,
    portfolio_slots,
)
from heuristic_portfolio.core.search import SearchConfig, choose_move
from heuristic_portfolio.engine.models import GameSpec
from heuristic_portfolio.engine.rules import apply_unchecked, initial_state, outcome
from heuristic_portfolio.errors import EngineFailure
from heuristic_portfolio.utils.seeding import derive_seed

logger = logging.getLogger(__name__)

MAX_COMBINATIONS = 10
MIN_GAMES_PER_COMBINATION = 10
MIN_GAMES_PER_HEURISTIC = 100


def build_pool(spec: GameSpec) -> CandidatePool:
    """All 27 slots; inapplicable kinds are played by Null under their own label."""
    entries = tuple(
        PoolEntry(slot, slot if applicable(slot.kind, spec) else NULL_HEURISTIC)
        for slot in portfolio_slots()
    )
    return CandidatePool(game_name=spec.name, n=spec.player_count, entries=entries)


def games_per_combination(combination_count: int) -> int:
    return max(MIN_GAMES_PER_COMBINATION, math.ceil(MIN_GAMES_PER_HEURISTIC / combination_count))


def build_schedule(
    pool: CandidatePool,
    master_seed: int,
    per_combination_games: int | None = None,
) -> MatchupSchedule:
    """Opponent combinations and seeded, seat-rotated matches for every entry."""
    n, k = pool.n, pool.k
    per_focus: list[tuple[tuple[int, ...], ...]] = []
    for focus in range(k):
        others = [i for i in range(k) if i != focus]
        combos = list(itertools.combinations(others, n - 1))
        if len(combos) > MAX_COMBINATIONS:
            rng = random.Random(derive_seed(master_seed, pool.game_name, focus, "combinations"))
            picked = sorted(rng.sample(range(len(combos)), MAX_COMBINATIONS))
            combos = [combos[i] for i in picked]
        per_focus.append(tuple(combos))

    count = len(per_focus[0]) if per_focus else 0
    games = games_per_combination(count) if count else 0
    if per_combination_games is not None:
        if per_combination_games < 1:
            raise ValueError("per_combination_games must be positive")
        if per_combination_games * count < MIN_GAMES_PER_HEURISTIC:
            logger.warning(
                "%s: %d games per combination is below the %d-game protocol minimum",
                pool.game_name, per_combination_games, MIN_GAMES_PER_HEURISTIC,
            )
        games = per_combination_games

    matches = []
    for focus, combos in enumerate(per_focus):
        for c, opponents in enumerate(combos):
            for rep in range(games):
                seats = _rotate_seats(focus, opponents, rep, n)
                seed = derive_seed(master_seed, pool.game_name, focus, c, rep)
                matches.append(ScheduledMatch(focus, c, rep, seats, seed))

    return MatchupSchedule(
        game_name=pool.game_name,
        master_seed=master_seed,
        combinations=tuple(per_focus),
        games_per_combination=games,
        matches=tuple(matches),
    )


def _rotate_seats(focus: int, opponents: Sequence[int], rep: int, n: int) -> tuple[int, ...]:
    # focus takes seat rep % n; opponents fill the rest in rotated order
    seat = rep % n
    shift = rep % len(opponents) if opponents else 0
    rest = list(opponents[shift:]) + list(opponents[:shift])
    seats = rest[:seat] + [focus] + rest[seat:]
    return tuple(seats)


def run_match(
    spec: GameSpec,
    seats: Sequence[HeuristicSpec],
    seed: int,
    config: SearchConfig | None = None,
) -> tuple[float, ...]:
    """Play one game and return the credit each seat earned (sums to 1)."""
    config = config or SearchConfig()
    if len(seats) != spec.player_count:
        raise ValueError(f"{spec.name} needs {spec.player_count} seats, got {len(seats)}")

    rng = random.Random(seed)
    try:
        state = initial_state(spec)
        result = outcome(spec, state)
        while result is None:
            move = choose_move(spec, state, seats[state.mover - 1], config, rng)
            state = apply_unchecked(spec, state, move)
            result = outcome(spec, state)
    except Exception as e:
        raise EngineFailure(f"{spec.name} match (seed {seed}) failed: {e}") from e

    best = max(result.utilities)
    winners = [i for i, u in enumerate(result.utilities) if u == best]
    share = 1.0 / len(winners)
    return tuple(share if i in winners else 0.0 for i in range(spec.player_count))


def _play_scheduled(
    spec: GameSpec,
    pool: CandidatePool,
    config: SearchConfig,
    match: ScheduledMatch,
) -> tuple[float, ...] | None:
    seats = [pool.entries[i].resolved for i in match.seats]
    try:
        return run_match(spec, seats, match.seed, config)
    except EngineFailure as e:
        logger.warning("Excluding match: %s", e)
        return None


def run_tournament(
    spec: GameSpec,
    schedule: MatchupSchedule,
    *,
    pool: CandidatePool | None = None,
    config: SearchConfig | None = None,
    workers: int = 1,
) -> WinRateTable:
    """Play every scheduled match and aggregate credits per pool entry.

    Results are reduced in schedule order, so the table does not depend on
    the number of workers or on completion order.
    """
    pool = pool or build_pool(spec)
    config = config or SearchConfig()
    play = partial(_play_scheduled, spec, pool, config)

    logger.info("%s: playing %d matches with %d worker(s)", spec.name, len(schedule.matches), workers)
    if workers > 1 and len(schedule.matches) > 1:
        chunksize = max(1, len(schedule.matches) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as executor:
            outcomes = list(executor.map(play, schedule.matches, chunksize=chunksize))
    else:
        outcomes = [play(m) for m in schedule.matches]

    played = [0] * pool.k
    credit = [0.0] * pool.k
    failed = 0
    for match, credits in zip(schedule.matches, outcomes):
        if credits is None:
            failed += 1
            continue
        for entry, c in zip(match.seats, credits):
            played[entry] += 1
            credit[entry] += c

    if failed:
        logger.warning("%s: %d match(es) failed and were excluded", spec.name, failed)

    return WinRateTable(
        game=spec.name,
        n=pool.n,
        entries=tuple(
            EntryResult(e.slot, e.resolved, played[i], credit[i])
            for i, e in enumerate(pool.entries)
        ),
        completed_matches=len(schedule.matches) - failed,
        failed_matches=failed,
    )


def aggregate_report(tables: Mapping[str, WinRateTable] | Sequence[WinRateTable]) -> HeuristicReport:
    """Average win-% per slot across games and count exclusive top performances."""
    games = list(tables.values()) if isinstance(tables, Mapping) else list(tables)
    if not games:
        raise ValueError("At least one game table is required")

    slots = portfolio_slots()
    totals = {slot: 0.0 for slot in slots}
    tops = {slot: 0 for slot in slots}
    for table in games:
        rates = {e.slot: e.win_rate for e in table.entries}
        for slot in slots:
            totals[slot] += rates.get(slot, 0.0)
        best = max(rates.values())
        leaders = [s for s, r in rates.items() if r == best]
        if len(leaders) == 1:
            tops[leaders[0]] += 1

    rows = tuple(
        ReportRow(slot, totals[slot] / len(games) * 100, tops[slot])
        for slot in slots
    )
    return HeuristicReport(rows=rows, game_count=len(games))
