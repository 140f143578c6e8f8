"""Compile a parsed description into a playable GameSpec.

Only the documented engine subset is accepted. Anything else is reported as
``UnsupportedLudeme`` so that such games stay usable for feature extraction.
"""

from __future__ import annotations

import logging
import re
from collections.abc import Iterator

from heuristic_portfolio.engine.board import build_board
from heuristic_portfolio.engine.models import (
    AddToEmpty,
    Board,
    Direction,
    EndRule,
    GameSpec,
    HighestResult,
    LineOf,
    Measure,
    NoMoves,
    PieceType,
    Placement,
    PlayRule,
    ReachRegion,
    Region,
    Result,
    ResultKind,
    Role,
    RoleResult,
    StepMove,
    TurnLimit,
)
from heuristic_portfolio.errors import (
    CompileError,
    InvalidBoard,
    MissingSection,
    UnsupportedLudeme,
)
from heuristic_portfolio.gdl.models import CompoundNode, KeywordNode, ListNode, Node, ValueNode

logger = logging.getLogger(__name__)

DEFAULT_TURN_LIMIT = 150

SUPPORTED_LUDEMES = frozenset({
    "game", "players", "equipment", "rules",
    "board", "square", "rectangle",
    "piece", "each", "regions", "map", "pair",
    "sites", "top", "bottom", "left", "right", "corners", "centre", "edges",
    "row", "column", "empty",
    "start", "place", "count",
    "play", "move", "add", "to", "step", "directions", "capture", "replace",
    *(d.value.lower() for d in Direction),
    "scoring",
    "end", "if", "is", "line", "no", "moves", "reached", "limit",
    "result", "mover", "next", "win", "loss", "draw", "highest", "score", "material",
})

_PLAYER_PATTERN = re.compile(r"^p(\d+)$", re.IGNORECASE)

LINE_AXES = ((0, 1), (1, 0), (1, 1), (1, -1))


def compile_game(tree: Node) -> GameSpec:
    """Turn a ``(game ...)`` tree into a GameSpec, or raise a CompileError."""
    if not isinstance(tree, CompoundNode) or tree.head.lower() != "game":
        raise MissingSection("game")
    _check_supported(tree)

    name = next(
        (a.value for a in tree.args if isinstance(a, ValueNode) and isinstance(a.value, str)),
        "Unnamed",
    )
    players_node = _section(tree, "players")
    equipment = _section(tree, "equipment")
    rules = _section(tree, "rules")

    player_count = _int_arg(players_node, 0, "players")
    if player_count < 2:
        raise CompileError(f"'{name}' needs at least 2 players, got {player_count}")

    ctx = _Context(name, player_count)
    ctx.read_equipment(equipment)
    spec = ctx.read_rules(rules)
    logger.debug("Compiled %s: %d players, %dx%d board", name, player_count,
                 spec.board.rows, spec.board.cols)
    return spec


def _check_supported(tree: Node) -> None:
    for name in _preorder_names(tree):
        lowered = name.lower()
        if lowered not in SUPPORTED_LUDEMES and not _PLAYER_PATTERN.match(lowered):
            raise UnsupportedLudeme(lowered)


def _preorder_names(node: Node) -> Iterator[str]:
    if isinstance(node, CompoundNode):
        yield node.head
        for arg in node.args:
            yield from _preorder_names(arg)
    elif isinstance(node, ListNode):
        for item in node.items:
            yield from _preorder_names(item)
    elif isinstance(node, KeywordNode):
        yield node.name


def _children(node: Node) -> list[CompoundNode]:
    """Compound arguments of a node, flattening one level of ``{ }``."""
    args = node.args if isinstance(node, CompoundNode) else node.items if isinstance(node, ListNode) else ()
    out: list[CompoundNode] = []
    for arg in args:
        if isinstance(arg, CompoundNode):
            out.append(arg)
        elif isinstance(arg, ListNode):
            out.extend(a for a in arg.items if isinstance(a, CompoundNode))
    return out


def _section(node: CompoundNode, head: str) -> CompoundNode:
    found = _optional_section(node, head)
    if found is None:
        raise MissingSection(head)
    return found


def _optional_section(node: CompoundNode, head: str) -> CompoundNode | None:
    for child in _children(node):
        if child.head.lower() == head:
            return child
    return None


def _keywords(node: Node) -> list[str]:
    """Keyword arguments of a compound, including those inside a ``{ }`` list."""
    args = node.args if isinstance(node, CompoundNode) else node.items if isinstance(node, ListNode) else ()
    out: list[str] = []
    for arg in args:
        if isinstance(arg, KeywordNode):
            out.append(arg.name)
        elif isinstance(arg, ListNode):
            out.extend(_keywords(arg))
    return out


def _values(node: CompoundNode) -> list[str | int | float | bool]:
    return [a.value for a in node.args if isinstance(a, ValueNode)]


def _int_arg(node: CompoundNode, index: int, what: str) -> int:
    values = _values(node)
    if len(values) <= index or isinstance(values[index], bool) or not isinstance(values[index], int):
        raise CompileError(f"'{what}' expects an integer argument")
    return values[index]


def _str_arg(node: CompoundNode, what: str) -> str:
    for value in _values(node):
        if isinstance(value, str):
            return value
    raise CompileError(f"'{what}' expects a name string")


class _Context:
    def __init__(self, name: str, player_count: int) -> None:
        self.name = name
        self.player_count = player_count
        self.board: Board | None = None
        self.piece_types: list[PieceType] = []
        self.regions: list[Region] = []
        self.site_maps: dict[int, set[int]] = {}

    # -- shared helpers --------------------------------------------------

    def player(self, keyword: str) -> int:
        match = _PLAYER_PATTERN.match(keyword)
        if match is None:
            raise CompileError(f"Expected a player such as P1, got '{keyword}'")
        index = int(match.group(1))
        if not 1 <= index <= self.player_count:
            raise CompileError(f"Player {keyword} does not exist in a {self.player_count}-player game")
        return index

    def optional_player(self, node: CompoundNode) -> int | None:
        for keyword in _keywords(node):
            if _PLAYER_PATTERN.match(keyword):
                return self.player(keyword)
        return None

    def sites(self, node: CompoundNode) -> frozenset[int]:
        board = self.require_board()
        if node.head.lower() != "sites":
            raise CompileError(f"Expected (sites ...), got ({node.head} ...)")
        explicit = [a for a in node.args if isinstance(a, ListNode)]
        if explicit:
            result = set()
            for item in explicit[0].items:
                if not isinstance(item, ValueNode) or isinstance(item.value, bool) or not isinstance(item.value, int):
                    raise CompileError("Site lists must contain integers")
                if not 0 <= item.value < board.num_sites:
                    raise InvalidBoard(f"Site {item.value} is outside the {board.rows}x{board.cols} board")
                result.add(item.value)
            return frozenset(result)

        keywords = [k.lower() for k in _keywords(node)]
        if not keywords:
            raise CompileError("(sites ...) needs a site list or a site class")
        kind = keywords[0]
        coords = board.coords
        if kind == "top":
            return frozenset(i for i, (r, _) in enumerate(coords) if r == board.rows - 1)
        if kind == "bottom":
            return frozenset(i for i, (r, _) in enumerate(coords) if r == 0)
        if kind == "left":
            return frozenset(i for i, (_, c) in enumerate(coords) if c == 0)
        if kind == "right":
            return frozenset(i for i, (_, c) in enumerate(coords) if c == board.cols - 1)
        if kind == "corners":
            return board.corner_sites
        if kind == "centre":
            return board.centre_sites
        if kind == "edges":
            return board.perimeter_sites
        if kind in ("row", "column"):
            index = _int_arg(node, 0, f"sites {kind}")
            limit = board.rows if kind == "row" else board.cols
            if not 0 <= index < limit:
                raise InvalidBoard(f"{kind.title()} {index} is outside the board")
            axis = 0 if kind == "row" else 1
            return frozenset(i for i, rc in enumerate(coords) if rc[axis] == index)
        raise CompileError(f"Site class '{kind}' is not usable here")

    def require_board(self) -> Board:
        if self.board is None:
            raise InvalidBoard(f"'{self.name}' declares no board")
        return self.board

    # -- equipment -------------------------------------------------------

    def read_equipment(self, equipment: CompoundNode) -> None:
        items = _children(equipment)
        board_node = next((i for i in items if i.head.lower() == "board"), None)
        if board_node is None:
            raise InvalidBoard(f"'{self.name}' declares no board")
        self.board = self._read_board(board_node)

        for item in items:
            head = item.head.lower()
            if head == "piece":
                self._read_piece(item)
            elif head == "regions":
                self.regions.append(
                    Region(
                        name=_str_arg(item, "regions"),
                        sites=self.sites(_section(item, "sites")),
                        owner=self.optional_player(item),
                    )
                )
            elif head == "map":
                for pair in _children(item):
                    if pair.head.lower() != "pair":
                        raise CompileError("(map ...) expects (pair Pk site) entries")
                    owner = self.optional_player(pair)
                    if owner is None:
                        raise CompileError("(pair ...) needs a player")
                    site = _int_arg(pair, 0, "pair")
                    if not 0 <= site < self.board.num_sites:
                        raise InvalidBoard(f"Mapped site {site} is outside the board")
                    self.site_maps.setdefault(owner, set()).add(site)
            elif head != "board":
                raise CompileError(f"({item.head} ...) is not valid equipment")

    def _read_board(self, node: CompoundNode) -> Board:
        shapes = _children(node)
        if not shapes:
            raise InvalidBoard("(board ...) needs a shape")
        shape = shapes[0]
        if shape.head.lower() == "square":
            side = _int_arg(shape, 0, "square")
            return build_board(side, side)
        if shape.head.lower() == "rectangle":
            return build_board(_int_arg(shape, 0, "rectangle"), _int_arg(shape, 1, "rectangle"))
        raise InvalidBoard(f"Unknown board shape '{shape.head}'")

    def _read_piece(self, node: CompoundNode) -> None:
        name = _str_arg(node, "piece")
        numbers = [v for v in _values(node) if isinstance(v, int) and not isinstance(v, bool)]
        value = numbers[0] if numbers else 1
        keywords = _keywords(node)
        if any(k.lower() == "each" for k in keywords):
            owners = list(range(1, self.player_count + 1))
        else:
            owner = self.optional_player(node)
            if owner is None:
                raise CompileError(f"Piece '{name}' needs an owner")
            owners = [owner]
        for owner in owners:
            self.piece_types.append(PieceType(name=name, owner=owner, value=value))

    # -- rules -----------------------------------------------------------

    def read_rules(self, rules: CompoundNode) -> GameSpec:
        board = self.require_board()
        placements = self._read_start(_optional_section(rules, "start"))
        play_rule = self._read_play(_section(rules, "play"))

        points = None
        scoring = _optional_section(rules, "scoring")
        if scoring is not None:
            capture = _section(scoring, "capture")
            points = _int_arg(capture, 0, "capture")

        end_rules = self._read_end(_optional_section(rules, "end"))
        if not any(isinstance(r, TurnLimit) for r in end_rules):
            end_rules.append(TurnLimit(DEFAULT_TURN_LIMIT, HighestResult(Measure.SCORE)))

        line_target = next((r.length for r in end_rules if isinstance(r, LineOf)), None)
        return GameSpec(
            name=self.name,
            player_count=self.player_count,
            board=board,
            piece_types=tuple(self.piece_types),
            regions=tuple(self.regions),
            site_maps=tuple(
                (owner, frozenset(sites)) for owner, sites in sorted(self.site_maps.items())
            ),
            placements=placements,
            play_rule=play_rule,
            end_rules=tuple(end_rules),
            points_per_capture=points,
            line_windows=line_windows(board, line_target) if line_target else (),
        )

    def _read_start(self, start: CompoundNode | None) -> tuple[Placement, ...]:
        if start is None:
            return ()
        placements = []
        for place in _children(start):
            if place.head.lower() != "place":
                raise CompileError(f"({place.head} ...) is not a start directive")
            piece = _str_arg(place, "place")
            owner = self.optional_player(place)
            if owner is None:
                raise CompileError(f"(place \"{piece}\" ...) needs a player")
            if not any(p.name == piece and p.owner == owner for p in self.piece_types):
                raise CompileError(f"Player {owner} has no piece named '{piece}'")
            count_node = _optional_section(place, "count")
            count = _int_arg(count_node, 0, "count") if count_node else 1
            if count < 1:
                raise CompileError("Piece counts must be positive")
            placements.append(
                Placement(
                    piece=piece,
                    owner=owner,
                    sites=tuple(sorted(self.sites(_section(place, "sites")))),
                    count=count,
                )
            )
        return tuple(placements)

    def _read_play(self, play: CompoundNode) -> PlayRule:
        move = _section(play, "move")
        keywords = [a.name.lower() for a in move.args if isinstance(a, KeywordNode)]
        if "add" in keywords:
            target = _section(move, "to")
            sites = _section(target, "sites")
            if [k.lower() for k in _keywords(sites)] != ["empty"]:
                raise CompileError("Add moves must target (sites Empty)")
            for player in range(1, self.player_count + 1):
                if not any(p.owner == player for p in self.piece_types):
                    raise CompileError(f"Player {player} has no piece to add")
            return AddToEmpty()

        if "step" in keywords:
            directions_node = _section(move, "directions")
            names = {d.value.lower(): d for d in Direction}
            directions = []
            for keyword in _keywords(directions_node):
                if keyword.lower() not in names:
                    raise CompileError(f"Unknown direction '{keyword}'")
                directions.append(names[keyword.lower()])
            if not directions:
                raise CompileError("(directions ...) is empty")
            relative = {Direction.FORWARD, Direction.FORWARD_DIAGONAL}
            if relative & set(directions) and self.player_count != 2:
                raise CompileError("Forward directions need a 2-player game")
            capture = _optional_section(move, "capture")
            replaces = capture is not None and [k.lower() for k in _keywords(capture)] == ["replace"]
            if capture is not None and not replaces:
                raise CompileError("Only (capture Replace) is supported")
            return StepMove(directions=tuple(directions), capture_by_replacement=replaces)

        raise CompileError("(move ...) must be Add or Step")

    def _read_end(self, end: CompoundNode | None) -> list[EndRule]:
        if end is None:
            return []
        rules: list[EndRule] = []
        for clause in _children(end):
            if clause.head.lower() != "if":
                raise CompileError(f"({clause.head} ...) is not an end clause")
            parts = _children(clause)
            if len(parts) != 2:
                raise CompileError("(if ...) expects a condition and a result")
            rules.append(self._end_rule(parts[0], self._result(parts[1])))
        return rules

    def _end_rule(self, condition: CompoundNode, result: Result) -> EndRule:
        head = condition.head.lower()
        keywords = [k.lower() for k in _keywords(condition)]
        if head == "is" and keywords[:1] == ["line"]:
            length = _int_arg(condition, 0, "is Line")
            if length < 2:
                raise CompileError("Line length must be at least 2")
            return LineOf(length, result)
        if head == "is" and keywords[:1] == ["limit"]:
            turns = _int_arg(condition, 0, "is Limit")
            if turns < 1:
                raise CompileError("Turn limit must be positive")
            return TurnLimit(turns, result)
        if head == "is" and keywords[:1] == ["reached"]:
            region = _str_arg(condition, "is Reached")
            if not any(r.name == region for r in self.regions):
                raise CompileError(f"Unknown region '{region}'")
            return ReachRegion(region, result)
        if head == "no" and keywords == ["moves", "next"]:
            return NoMoves(result)
        raise CompileError(f"Unsupported end condition ({condition.head} {' '.join(keywords)})")

    def _result(self, node: CompoundNode) -> Result:
        if node.head.lower() != "result":
            raise CompileError(f"Expected (result ...), got ({node.head} ...)")
        keywords = [k.lower() for k in _keywords(node)]
        if len(keywords) != 2:
            raise CompileError("(result ...) expects two keywords")
        first, second = keywords
        if first == "highest":
            measures = {m.value.lower(): m for m in Measure}
            if second not in measures:
                raise CompileError(f"Cannot rank players by '{second}'")
            return HighestResult(measures[second])
        roles = {r.value.lower(): r for r in Role}
        kinds = {k.value.lower(): k for k in ResultKind}
        if first not in roles or second not in kinds:
            raise CompileError(f"Unsupported result ({' '.join(keywords)})")
        return RoleResult(roles[first], kinds[second])


def line_windows(board: Board, length: int) -> tuple[tuple[int, ...], ...]:
    """Every straight run of ``length`` sites along rows, columns and diagonals."""
    windows = []
    for r, c in board.coords:
        for dr, dc in LINE_AXES:
            sites = [board.site(r + k * dr, c + k * dc) for k in range(length)]
            if all(s is not None for s in sites):
                windows.append(tuple(sites))
    return tuple(windows)
