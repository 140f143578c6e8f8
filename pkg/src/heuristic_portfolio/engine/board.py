"""Rectangular board construction."""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from heuristic_portfolio.engine.models import Board
from heuristic_portfolio.errors import InvalidBoard

NEIGHBOUR_OFFSETS = (
    (-1, -1), (-1, 0), (-1, 1),
    (0, -1),           (0, 1),
    (1, -1),  (1, 0),  (1, 1),
)

MAX_SIDE = 32


def build_board(rows: int, cols: int) -> Board:
    """Build a grid with 8-neighbour adjacency and precomputed site classes."""
    if not (2 <= rows <= MAX_SIDE and 2 <= cols <= MAX_SIDE):
        raise InvalidBoard(f"Board sides must be within 2..{MAX_SIDE}, got {rows}x{cols}")

    coords = tuple((i // cols, i % cols) for i in range(rows * cols))
    adjacency = tuple(
        tuple(
            (r + dr) * cols + (c + dc)
            for dr, dc in NEIGHBOUR_OFFSETS
            if 0 <= r + dr < rows and 0 <= c + dc < cols
        )
        for r, c in coords
    )

    corners = frozenset(
        r * cols + c for r in (0, rows - 1) for c in (0, cols - 1)
    )
    perimeter = frozenset(
        i for i, (r, c) in enumerate(coords)
        if r in (0, rows - 1) or c in (0, cols - 1)
    )

    mid_r, mid_c = (rows - 1) / 2, (cols - 1) / 2
    offsets = [max(abs(r - mid_r), abs(c - mid_c)) for r, c in coords]
    nearest = min(offsets)
    centre = frozenset(i for i, off in enumerate(offsets) if off == nearest)

    return Board(
        rows=rows,
        cols=cols,
        coords=coords,
        adjacency=adjacency,
        corner_sites=corners,
        edge_sites=perimeter - corners,
        centre_sites=centre,
        distances=_graph_distances(adjacency),
    )


def _graph_distances(adjacency: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    n = len(adjacency)
    row_idx = [i for i, nbrs in enumerate(adjacency) for _ in nbrs]
    col_idx = [j for nbrs in adjacency for j in nbrs]
    graph = csr_matrix((np.ones(len(col_idx)), (row_idx, col_idx)), shape=(n, n))
    dist = shortest_path(graph, directed=False, unweighted=True)
    if not np.isfinite(dist).all():
        raise InvalidBoard("Board graph is not connected")
    return tuple(tuple(int(d) for d in row) for row in dist)
