"""Leave-one-out evaluation of regression algorithms on a labelled dataset."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

from heuristic_portfolio.core.models import AlgorithmResult, EvalReport, LabeledDataset
from heuristic_portfolio.errors import DegenerateInput
from heuristic_portfolio.learn.regressors import make_model
from heuristic_portfolio.utils.metrics import best_win_rate, expected_win_rate, mae, regret

logger = logging.getLogger(__name__)

IDENTITY_TOLERANCE = 1e-10


def fold_seeds(seed: int, folds: int) -> list[int]:
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(folds)]


def _fold(algorithm: str, X: np.ndarray, y: np.ndarray, params: dict, job: tuple[int, int]) -> float:
    i, seed = job
    keep = np.arange(len(y)) != i
    model = make_model(algorithm, seed, **params).fit(X[keep], y[keep])
    return float(model.predict(X[i:i + 1])[0])


def loocv(
    algorithm: str,
    X: np.ndarray,
    y: np.ndarray,
    seed: int = 0,
    *,
    workers: int = 1,
    **params: object,
) -> np.ndarray:
    """Prediction i comes from a model fitted on every row except i."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(y) < 2:
        raise DegenerateInput("Leave-one-out needs at least 2 games")

    jobs = list(enumerate(fold_seeds(seed, len(y))))
    run = partial(_fold, algorithm, X, y, dict(params))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            return np.array(list(executor.map(run, jobs)))
    return np.array([run(job) for job in jobs])


def evaluate_algorithm(
    algorithm: str,
    dataset: LabeledDataset,
    seed: int = 0,
    *,
    workers: int = 1,
) -> AlgorithmResult:
    X = dataset.features.X.astype(float)
    slots = dataset.slots
    truth = dataset.label_matrix()
    predictions = np.empty_like(truth)
    for j, slot in enumerate(slots):
        predictions[:, j] = loocv(algorithm, X, truth[:, j], seed + j, workers=workers)

    per_slot = tuple(mae(predictions[:, j], truth[:, j]) for j in range(len(slots)))
    expected = expected_win_rate(predictions, truth)
    lost = regret(predictions, truth)
    best = best_win_rate(truth)
    if lost < 0 or abs(expected + lost - best) > IDENTITY_TOLERANCE:
        raise RuntimeError(
            f"{algorithm}: expected win-rate {expected} + regret {lost} != best win-rate {best}"
        )

    result = AlgorithmResult(
        algorithm=algorithm,
        mae_per_slot=per_slot,
        mae_mean=float(np.mean(per_slot)),
        mae_stdev=float(np.std(per_slot, ddof=1)) if len(per_slot) > 1 else 0.0,
        expected_win_rate=expected,
        regret=lost,
        mean_best_win_rate=best,
    )
    logger.info(
        "%s: MAE %.2f, expected win-rate %.2f, regret %.2f",
        algorithm, result.mae_mean, expected, lost,
    )
    return result


def evaluate(
    dataset: LabeledDataset,
    algorithms: Sequence[str],
    seed: int = 0,
    *,
    workers: int = 1,
) -> EvalReport:
    """LOOCV every algorithm on every slot; one model per slot and fold."""
    if not dataset.labels:
        raise DegenerateInput("Dataset has no label columns")
    if len(dataset.features.game_names) < 2:
        raise DegenerateInput("Evaluation needs at least 2 games")

    results = tuple(evaluate_algorithm(a, dataset, seed, workers=workers) for a in algorithms)
    return EvalReport(
        slots=dataset.slots,
        results=results,
        game_count=len(dataset.features.game_names),
        seed=seed,
    )
