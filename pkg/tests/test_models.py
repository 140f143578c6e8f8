"""Tests for data models."""

import numpy as np
import pytest

from heuristic_portfolio.core.models import (
    NULL_HEURISTIC,
    AlgorithmResult,
    EntryResult,
    EvalReport,
    FeatureMatrix,
    HeuristicKind,
    HeuristicSpec,
    LabeledDataset,
    PoolEntry,
    WinRateTable,
    portfolio_slots,
)


class TestHeuristicSpec:
    def test_labels(self):
        assert HeuristicSpec(HeuristicKind.MATERIAL, 1).label == "Material+"
        assert HeuristicSpec(HeuristicKind.LINE_COMPLETION, -1).label == "LineCompletion-"
        assert NULL_HEURISTIC.label == "Null"

    def test_from_label(self):
        for slot in portfolio_slots():
            assert HeuristicSpec.from_label(slot.label) == slot

    @pytest.mark.parametrize("label", ["Material", "Material*", "Unknown+", "", "Null-"])
    def test_invalid_label(self, label):
        with pytest.raises(ValueError):
            HeuristicSpec.from_label(label)

    def test_invalid_sign(self):
        with pytest.raises(ValueError):
            HeuristicSpec(HeuristicKind.MATERIAL, 0)

    def test_no_negative_null(self):
        with pytest.raises(ValueError, match="Null"):
            HeuristicSpec(HeuristicKind.NULL, -1)

    def test_canonical_order(self):
        slots = portfolio_slots()
        assert len(slots) == 27
        assert slots[0].label == "Material+"
        assert slots[1].label == "Material-"
        assert slots[-1] == NULL_HEURISTIC
        assert list(slots) == sorted(slots, key=lambda s: s.sort_key)


class TestPoolAndResults:
    def test_substituted(self):
        slot = HeuristicSpec(HeuristicKind.SCORE, 1)
        assert PoolEntry(slot, NULL_HEURISTIC).substituted
        assert not PoolEntry(slot, slot).substituted

    def test_win_rate(self):
        assert EntryResult(NULL_HEURISTIC, NULL_HEURISTIC, 8, 3.0).win_rate == 0.375
        assert EntryResult(NULL_HEURISTIC, NULL_HEURISTIC, 0, 0.0).win_rate == 0.0

    def test_table_lookup(self):
        table = WinRateTable("G", 2, (EntryResult(NULL_HEURISTIC, NULL_HEURISTIC, 4, 2.0),), 4)
        assert table.win_rate(NULL_HEURISTIC) == 0.5
        with pytest.raises(KeyError):
            table.win_rate(HeuristicSpec(HeuristicKind.MATERIAL, 1))


class TestDatasets:
    def test_feature_shape_checked(self):
        with pytest.raises(ValueError, match="does not match"):
            FeatureMatrix(("A", "B"), ("add",), np.zeros((3, 1), dtype=np.int8))

    def test_to_frame(self):
        matrix = FeatureMatrix(("A", "B"), ("add", "line"), np.array([[1, 0], [0, 1]], dtype=np.int8))
        frame = matrix.to_frame()
        assert list(frame.columns) == ["game", "add", "line"]
        assert frame["line"].tolist() == [0, 1]

    def test_game_column_may_also_be_a_ludeme(self):
        matrix = FeatureMatrix(("A",), ("game",), np.ones((1, 1), dtype=np.int8))
        assert list(matrix.to_frame().columns) == ["game", "game"]

    def test_label_range(self):
        matrix = FeatureMatrix(("A",), ("add",), np.ones((1, 1), dtype=np.int8))
        with pytest.raises(ValueError, match=r"\[0, 100\]"):
            LabeledDataset(matrix, {NULL_HEURISTIC: np.array([100.5])})

    def test_label_length(self):
        matrix = FeatureMatrix(("A",), ("add",), np.ones((1, 1), dtype=np.int8))
        with pytest.raises(ValueError, match="expected 1"):
            LabeledDataset(matrix, {NULL_HEURISTIC: np.array([1.0, 2.0])})

    def test_slots_in_canonical_order(self):
        matrix = FeatureMatrix(("A",), ("add",), np.ones((1, 1), dtype=np.int8))
        material = HeuristicSpec(HeuristicKind.MATERIAL, -1)
        dataset = LabeledDataset(matrix, {NULL_HEURISTIC: np.array([1.0]), material: np.array([2.0])})
        assert dataset.slots == (material, NULL_HEURISTIC)
        np.testing.assert_array_equal(dataset.label_matrix(), [[2.0, 1.0]])


class TestEvalReport:
    def test_lookup(self):
        report = EvalReport((NULL_HEURISTIC,), (AlgorithmResult("Ridge", (1.0,), 1.0, 0.0, 50.0, 0.0, 50.0),), 3, 0)
        assert report.result("Ridge").mae_mean == 1.0
        with pytest.raises(KeyError):
            report.result("Lasso")

    def test_zero_baseline(self):
        report = EvalReport(
            (NULL_HEURISTIC,),
            (
                AlgorithmResult("Naive", (0.0,), 0.0, 0.0, 50.0, 0.0, 50.0),
                AlgorithmResult("Ridge", (0.0,), 0.0, 0.0, 50.0, 0.0, 50.0),
            ),
            3,
            0,
        )
        assert report.improvement_over_naive("Ridge") == (0.0, 0.0)
