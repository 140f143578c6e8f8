"""Win-rate regression: models and leave-one-out evaluation."""

from heuristic_portfolio.learn.evaluation import evaluate, loocv
from heuristic_portfolio.learn.regressors import REGISTRY, RegressionModel, fit, kkt_residual, predict

__all__ = [
    "REGISTRY",
    "RegressionModel",
    "evaluate",
    "fit",
    "kkt_residual",
    "loocv",
    "predict",
]
