"""State-evaluation heuristics.

Each kind has a raw per-player value; ``state_value`` turns it into a signed,
opponent-relative score for search. The line and proximity formulas are
workbench definitions:

* proximity weight of a site = 1 - d / Dmax, where d is the graph distance
  to the nearest target site and Dmax the largest such distance on the board
  (weight 1 everywhere when Dmax = 0);
* line completion = sum of (m / L)^2 over length-L windows holding m >= 1 of
  the player's pieces and none of the opponents'.
"""

from __future__ import annotations

from functools import lru_cache

from heuristic_portfolio.core.models import HeuristicKind, HeuristicSpec
from heuristic_portfolio.engine.models import AddToEmpty, GameSpec, GameState, LineOf
from heuristic_portfolio.engine.rules import material, move_count, rule_moves
from heuristic_portfolio.errors import NotApplicable

_ALWAYS = frozenset({
    HeuristicKind.MATERIAL,
    HeuristicKind.MOBILITY,
    HeuristicKind.INFLUENCE,
    HeuristicKind.CORNER_PROXIMITY,
    HeuristicKind.SIDES_PROXIMITY,
    HeuristicKind.CENTRE_PROXIMITY,
    HeuristicKind.NULL,
})

_PROXIMITY = frozenset({
    HeuristicKind.CORNER_PROXIMITY,
    HeuristicKind.SIDES_PROXIMITY,
    HeuristicKind.CENTRE_PROXIMITY,
    HeuristicKind.REGION_PROXIMITY,
    HeuristicKind.PLAYER_REGIONS_PROXIMITY,
})


@lru_cache(maxsize=1024)
def applicable(kind: HeuristicKind, spec: GameSpec) -> bool:
    """Whether ``kind`` measures anything in this game."""
    if kind in _ALWAYS:
        return True
    match kind:
        case HeuristicKind.LINE_COMPLETION:
            return any(isinstance(r, LineOf) for r in spec.end_rules)
        case HeuristicKind.SCORE:
            return spec.points_per_capture is not None
        case HeuristicKind.REGION_PROXIMITY:
            return any(r.owner is None for r in spec.regions)
        case HeuristicKind.OWN_REGIONS_COUNT | HeuristicKind.PLAYER_REGIONS_PROXIMITY:
            return any(r.owner is not None for r in spec.regions)
        case HeuristicKind.PLAYER_SITE_MAP_COUNT:
            return bool(spec.site_maps)
        case HeuristicKind.COMPONENT_VALUES:
            return any(p.value != 1 for p in spec.piece_types)
    return False


def _target_sites(kind: HeuristicKind, spec: GameSpec, player: int) -> frozenset[int]:
    board = spec.board
    match kind:
        case HeuristicKind.CORNER_PROXIMITY:
            return board.corner_sites
        case HeuristicKind.SIDES_PROXIMITY:
            return board.perimeter_sites
        case HeuristicKind.CENTRE_PROXIMITY:
            return board.centre_sites
        case HeuristicKind.REGION_PROXIMITY:
            return frozenset().union(*(r.sites for r in spec.regions if r.owner is None))
        case HeuristicKind.PLAYER_REGIONS_PROXIMITY:
            return frozenset().union(*(r.sites for r in spec.regions if r.owner == player))
    raise ValueError(f"{kind.value} is not a proximity heuristic")


@lru_cache(maxsize=256)
def proximity_weights(spec: GameSpec, kind: HeuristicKind, player: int) -> tuple[float, ...]:
    """Per-site weight in [0, 1] for a proximity heuristic."""
    targets = _target_sites(kind, spec, player)
    distances = spec.board.distances
    if not targets:
        return (0.0,) * spec.board.num_sites
    nearest = [min(row[t] for t in targets) for row in distances]
    d_max = max(nearest)
    if d_max == 0:
        return (1.0,) * len(nearest)
    return tuple(1.0 - d / d_max for d in nearest)


def _line_completion(spec: GameSpec, state: GameState, player: int) -> float:
    totals = state.memo.get("line_completion")
    if totals is None:
        totals = state.memo["line_completion"] = _line_completion_totals(spec, state)
    return totals.get(player, 0.0)


def _line_completion_totals(spec: GameSpec, state: GameState) -> dict[int, float]:
    """Line completion of every player in one pass over the windows."""
    length = spec.line_target
    occupants = state.occupants
    totals: dict[int, float] = {}
    for window in spec.line_windows:
        owner = None
        mine = 0
        for site in window:
            occ = occupants[site]
            if occ is None:
                continue
            if owner is None:
                owner = occ.owner
            elif occ.owner != owner:
                owner = None
                mine = 0
                break
            mine += 1
        if mine:
            totals[owner] = totals.get(owner, 0.0) + (mine / length) ** 2
    return totals


def _region_count(spec: GameSpec, state: GameState, sites: frozenset[int]) -> int:
    return sum(state.occupants[s].count for s in sites if state.occupants[s] is not None)


def raw_value(kind: HeuristicKind, spec: GameSpec, state: GameState, player: int) -> float:
    """Unsigned value of ``kind`` for ``player`` in ``state``."""
    if not applicable(kind, spec):
        raise NotApplicable(kind.value, spec.name)

    if kind is HeuristicKind.NULL:
        return 0.0
    if kind is HeuristicKind.MATERIAL:
        return float(material(state, player))
    if kind is HeuristicKind.MOBILITY:
        return float(move_count(spec, state, player) or 1)  # a forced Pass is one move
    if kind is HeuristicKind.INFLUENCE:
        if isinstance(spec.play_rule, AddToEmpty):
            return float(move_count(spec, state, player))
        return float(len({m.to for m in rule_moves(spec, state, player)}))
    if kind in _PROXIMITY:
        weights = proximity_weights(spec, kind, player)
        return sum(
            weights[site] * occ.count
            for site, occ in enumerate(state.occupants)
            if occ is not None and occ.owner == player
        )
    if kind is HeuristicKind.LINE_COMPLETION:
        return _line_completion(spec, state, player)
    if kind is HeuristicKind.OWN_REGIONS_COUNT:
        owned = frozenset().union(*(r.sites for r in spec.regions if r.owner == player))
        return float(_region_count(spec, state, owned))
    if kind is HeuristicKind.PLAYER_SITE_MAP_COUNT:
        return float(_region_count(spec, state, spec.site_map(player)))
    if kind is HeuristicKind.SCORE:
        return float(state.scores[player - 1])
    if kind is HeuristicKind.COMPONENT_VALUES:
        return float(sum(
            spec.piece_value(occ.piece, occ.owner) * occ.count
            for occ in state.occupants
            if occ is not None and occ.owner == player
        ))
    raise ValueError(f"Unhandled heuristic: {kind.value}")


def state_value(h: HeuristicSpec, spec: GameSpec, state: GameState, player: int) -> float:
    """Signed advantage of ``player`` over the mean of the opponents."""
    if h.kind is HeuristicKind.NULL:
        return 0.0
    own = raw_value(h.kind, spec, state, player)
    others = [raw_value(h.kind, spec, state, q) for q in spec.players if q != player]
    return h.sign * (own - sum(others) / len(others))
