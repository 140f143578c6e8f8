"""Density clustering of an embedding and decision-tree explanations of clusters."""

from __future__ import annotations

import logging
from collections import Counter

import numpy as np
from sklearn.cluster import DBSCAN
from sklearn.tree import DecisionTreeClassifier

from heuristic_portfolio.core.models import ClusterExplanation, ClusterRule, FeatureMatrix

logger = logging.getLogger(__name__)

NOISE = -1
DEFAULT_EPS_FRACTION = 0.05
DEFAULT_MIN_PTS = 4
DEFAULT_MAX_DEPTH = 3


def default_eps(points: np.ndarray) -> float:
    """5% of the bounding-box diagonal; a tiny positive value for a single point cloud."""
    points = np.asarray(points, dtype=float)
    diagonal = float(np.linalg.norm(points.max(axis=0) - points.min(axis=0)))
    if diagonal == 0.0:
        return float(np.finfo(float).eps)
    return DEFAULT_EPS_FRACTION * diagonal


def cluster_embedding(
    points: np.ndarray,
    eps: float | None = None,
    min_pts: int = DEFAULT_MIN_PTS,
) -> np.ndarray:
    """DBSCAN labels per point, ``-1`` for noise. A non-positive eps makes everything noise."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or len(points) == 0:
        raise ValueError(f"Expected a non-empty 2-D point array, got shape {points.shape}")
    if eps is None:
        eps = default_eps(points)
    if eps <= 0:
        return np.full(len(points), NOISE)

    labels = DBSCAN(eps=eps, min_samples=min_pts).fit_predict(points)
    found = len(set(labels) - {NOISE})
    logger.info("DBSCAN (eps=%.4g, min_pts=%d): %d cluster(s), %d noise", eps, min_pts, found, int((labels == NOISE).sum()))
    return labels


def _rules(tree: DecisionTreeClassifier, vocabulary: tuple[str, ...]) -> tuple[ClusterRule, ...]:
    structure = tree.tree_
    rules: list[ClusterRule] = []
    stack: list[tuple[int, tuple[tuple[str, bool], ...]]] = [(0, ())]
    while stack:
        node, path = stack.pop()
        left, right = structure.children_left[node], structure.children_right[node]
        if left == right:
            cluster = int(tree.classes_[int(np.argmax(structure.value[node][0]))])
            rules.append(ClusterRule(path, cluster, int(structure.n_node_samples[node])))
            continue
        # binary features: left is "absent" (<= 0.5)
        name = vocabulary[structure.feature[node]]
        stack.append((right, path + ((name, True),)))
        stack.append((left, path + ((name, False),)))
    return tuple(rules)


def explain_clusters(
    matrix: FeatureMatrix,
    labels: np.ndarray,
    max_depth: int = DEFAULT_MAX_DEPTH,
    seed: int = 0,
) -> ClusterExplanation:
    """Fit a Gini tree on the clustered games and read its root-to-leaf rules."""
    labels = np.asarray(labels, dtype=int)
    if len(labels) != len(matrix.game_names):
        raise ValueError(f"{len(labels)} labels for {len(matrix.game_names)} games")

    clustered = labels != NOISE
    sizes = dict(sorted(Counter(int(c) for c in labels[clustered]).items()))
    if not clustered.any():
        logger.warning("Every game is noise; nothing to explain")
        return ClusterExplanation(tuple(int(c) for c in labels), (), {}, 0.0)

    X = matrix.X[clustered].astype(float)
    y = labels[clustered]
    tree = DecisionTreeClassifier(criterion="gini", max_depth=max_depth, random_state=seed)
    tree.fit(X, y)
    accuracy = float(tree.score(X, y))
    if len(sizes) < 2:
        logger.warning("Only one cluster found; the explanation is a single leaf")

    return ClusterExplanation(
        labels=tuple(int(c) for c in labels),
        rules=_rules(tree, matrix.vocabulary),
        cluster_sizes=sizes,
        accuracy=accuracy,
    )
