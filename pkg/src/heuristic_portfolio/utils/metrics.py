"""Prediction-quality metrics on win-% labels."""

from __future__ import annotations

import numpy as np


def mae(predictions: np.ndarray, labels: np.ndarray) -> float:
    """Mean absolute error, in win-% points."""
    predictions = np.asarray(predictions, dtype=float)
    labels = np.asarray(labels, dtype=float)
    if predictions.shape != labels.shape:
        raise ValueError(f"Shape mismatch: {predictions.shape} vs {labels.shape}")
    if predictions.size == 0:
        return 0.0
    return float(np.abs(predictions - labels).mean())


def _check(predictions: np.ndarray, true_rates: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    predictions = np.atleast_2d(np.asarray(predictions, dtype=float))
    true_rates = np.atleast_2d(np.asarray(true_rates, dtype=float))
    if predictions.shape != true_rates.shape:
        raise ValueError(f"Shape mismatch: {predictions.shape} vs {true_rates.shape}")
    if predictions.shape[0] == 0:
        raise ValueError("At least one game is required")
    return predictions, true_rates


def chosen_slots(predictions: np.ndarray) -> np.ndarray:
    """Per game, the column with the highest prediction.

    Columns are in canonical slot order, so the first maximum is the tie-break.
    """
    return np.argmax(np.atleast_2d(predictions), axis=1)


def best_win_rate(true_rates: np.ndarray) -> float:
    """Mean over games of the best slot's true win-rate."""
    return float(np.atleast_2d(np.asarray(true_rates, dtype=float)).max(axis=1).mean())


def expected_win_rate(predictions: np.ndarray, true_rates: np.ndarray) -> float:
    """Mean true win-rate of the slot each game's predictions rank highest.

    Both arguments are games x slots matrices.
    """
    predictions, true_rates = _check(predictions, true_rates)
    picks = chosen_slots(predictions)
    return float(true_rates[np.arange(len(picks)), picks].mean())


def regret(predictions: np.ndarray, true_rates: np.ndarray) -> float:
    """Mean over games of best true win-rate minus the chosen slot's."""
    predictions, true_rates = _check(predictions, true_rates)
    picks = chosen_slots(predictions)
    return float((true_rates.max(axis=1) - true_rates[np.arange(len(picks)), picks]).mean())
