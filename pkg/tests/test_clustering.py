"""Tests for density clustering and cluster explanations."""

import numpy as np
import pytest

from heuristic_portfolio.analysis.clustering import (
    NOISE,
    cluster_embedding,
    default_eps,
    explain_clusters,
)
from heuristic_portfolio.core.models import ClusterRule, FeatureMatrix


@pytest.fixture
def blobs() -> np.ndarray:
    offsets = np.array([[0.0, 0.0], [0.1, 0.0], [0.0, 0.1], [0.1, 0.1], [0.05, 0.05]])
    return np.vstack([offsets, offsets + 10.0, [[5.0, 5.0]]])


@pytest.fixture
def matrix() -> FeatureMatrix:
    # "capture" marks the second group; "line" is shared by everyone but the outlier
    capture = [0] * 5 + [1] * 5 + [0]
    line = [1] * 10 + [0]
    X = np.array([capture, line], dtype=np.int8).T
    names = tuple(f"Game {i}" for i in range(11))
    return FeatureMatrix(names, ("capture", "line"), X)


class TestDefaultEps:
    def test_fraction_of_diagonal(self):
        assert default_eps(np.array([[0.0, 0.0], [3.0, 4.0]])) == pytest.approx(0.25)

    def test_single_location(self):
        eps = default_eps(np.array([[1.0, 1.0], [1.0, 1.0]]))
        assert 0 < eps < 1e-10


class TestClusterEmbedding:
    def test_two_blobs_and_noise(self, blobs):
        labels = cluster_embedding(blobs)
        assert list(labels[:5]) == [0] * 5
        assert list(labels[5:10]) == [1] * 5
        assert labels[10] == NOISE

    def test_min_pts_above_blob_size(self, blobs):
        assert np.all(cluster_embedding(blobs, min_pts=6) == NOISE)

    def test_non_positive_eps(self, blobs):
        assert np.all(cluster_embedding(blobs, eps=0.0) == NOISE)

    def test_large_eps_joins_everything(self, blobs):
        assert set(cluster_embedding(blobs, eps=100.0)) == {0}

    def test_empty(self):
        with pytest.raises(ValueError):
            cluster_embedding(np.zeros((0, 2)))


class TestExplainClusters:
    def test_rules_separate_clusters(self, matrix, blobs):
        explanation = explain_clusters(matrix, cluster_embedding(blobs))
        assert explanation.cluster_sizes == {0: 5, 1: 5}
        assert explanation.noise_count == 1
        assert explanation.accuracy == 1.0
        assert set(explanation.rules) == {
            ClusterRule((("capture", False),), 0, 5),
            ClusterRule((("capture", True),), 1, 5),
        }

    def test_single_cluster_is_one_leaf(self, matrix):
        labels = np.array([0] * 10 + [NOISE])
        explanation = explain_clusters(matrix, labels)
        assert explanation.rules == (ClusterRule((), 0, 10),)
        assert explanation.accuracy == 1.0

    def test_all_noise(self, matrix):
        explanation = explain_clusters(matrix, np.full(11, NOISE))
        assert explanation.rules == ()
        assert explanation.cluster_sizes == {}
        assert explanation.noise_count == 11

    def test_label_count_mismatch(self, matrix):
        with pytest.raises(ValueError):
            explain_clusters(matrix, np.zeros(3, dtype=int))

    def test_describe(self):
        rule = ClusterRule((("capture", True), ("line", False)), 2, 7)
        assert rule.describe() == "capture present AND line absent -> cluster 2 [7 games]"
        assert ClusterRule((), 0, 3).describe() == "(all games) -> cluster 0 [3 games]"

    def test_cluster_needing_two_ludemes(self):
        # cluster 1 is exactly the games with both a track and dice
        groups = [((1, 1), 1, 4), ((1, 0), 0, 6), ((0, 1), 0, 2), ((0, 0), 0, 4)]
        rows = [(track, dice, 1) for (track, dice), _, size in groups for _ in range(size)]
        labels = np.array([cluster for _, cluster, size in groups for _ in range(size)])
        names = tuple(f"Game {i}" for i in range(len(rows)))
        matrix = FeatureMatrix(names, ("track", "dice", "add"), np.array(rows, dtype=np.int8))
        explanation = explain_clusters(matrix, labels, seed=7)
        assert explanation.accuracy == 1.0
        [both] = [r for r in explanation.rules if r.cluster == 1]
        assert len(both.conditions) == 2
        assert set(both.conditions) == {("track", True), ("dice", True)}
        assert both.samples == 4
        assert both.conditions[0] == ("dice", True)
        assert len(explanation.rules) == 3
        assert sum(r.samples for r in explanation.rules) == len(rows)
