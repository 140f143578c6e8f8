"""Exact t-SNE on numpy.

Every reduction is a plain numpy sum over full arrays in a fixed order, so a
seed reproduces the same embedding bit for bit.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy.spatial.distance import pdist, squareform

from heuristic_portfolio.core.models import Embedding, TsneConfig
from heuristic_portfolio.errors import DegenerateInput, PerplexityTooLarge

logger = logging.getLogger(__name__)

PERPLEXITY_TOLERANCE = 1e-5
MAX_SEARCH_STEPS = 200
INITIAL_SCALE = 1e-4
MIN_GAIN = 0.01


def _row_distribution(distances: np.ndarray, beta: float) -> tuple[np.ndarray, float]:
    """Gaussian conditional probabilities for one row and their entropy (nats)."""
    shifted = distances - distances.min()
    weights = np.exp(-shifted * beta)
    total = weights.sum()
    probs = weights / total
    entropy = float(np.log(total) + beta * (shifted * weights).sum() / total)
    return probs, entropy


def conditional_probabilities(
    distances: np.ndarray,
    perplexity: float,
    *,
    tol: float = PERPLEXITY_TOLERANCE,
) -> tuple[np.ndarray, np.ndarray]:
    """Row-conditional P(j|i) with each row's perplexity matched to ``perplexity``.

    ``distances`` holds squared Euclidean distances. Returns the matrix and
    the per-row precisions found by bisection.
    """
    n = distances.shape[0]
    target = np.log(perplexity)
    P = np.zeros((n, n))
    betas = np.ones(n)
    for i in range(n):
        others = np.concatenate([distances[i, :i], distances[i, i + 1:]])
        beta, lo, hi = 1.0, 0.0, np.inf
        probs, entropy = _row_distribution(others, beta)
        for _ in range(MAX_SEARCH_STEPS):
            if abs(np.exp(entropy) - perplexity) < tol:
                break
            if entropy > target:
                lo = beta
                beta = beta * 2 if np.isinf(hi) else (beta + hi) / 2
            else:
                hi = beta
                beta = (beta + lo) / 2
            probs, entropy = _row_distribution(others, beta)
        P[i, :i] = probs[:i]
        P[i, i + 1:] = probs[i:]
        betas[i] = beta
    return P, betas


def affinities(X: np.ndarray, perplexity: float) -> np.ndarray:
    """Symmetric joint probabilities summing to 1."""
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    if n < 3:
        raise DegenerateInput("t-SNE needs at least 3 points")
    if perplexity >= n - 1:
        raise PerplexityTooLarge(f"Perplexity {perplexity} must be below {n - 1} for {n} points")

    distances = squareform(pdist(X, "sqeuclidean"))
    conditional, _ = conditional_probabilities(distances, perplexity)
    P = conditional + conditional.T
    return P / P.sum()


def kl_divergence_and_gradient(
    Y: np.ndarray,
    P: np.ndarray,
    exaggeration: float = 1.0,
) -> tuple[float, np.ndarray]:
    """KL(P || Q) for the Student-t kernel Q of ``Y``, and its gradient in ``Y``."""
    num = 1.0 / (1.0 + squareform(pdist(Y, "sqeuclidean")))
    np.fill_diagonal(num, 0.0)
    Q = num / num.sum()
    PP = P * exaggeration

    mask = PP > 0
    kl = float((PP[mask] * np.log(PP[mask] / Q[mask])).sum())

    W = (PP - Q) * num
    grad = 4.0 * (W.sum(axis=1)[:, None] * Y - W @ Y)
    return kl, grad


def tsne(P: np.ndarray, config: TsneConfig | None = None) -> Embedding:
    """Gradient descent with momentum, per-coordinate gains and early exaggeration."""
    config = config or TsneConfig()
    P = np.asarray(P, dtype=float)
    n = P.shape[0]
    if P.shape != (n, n) or n < 3:
        raise DegenerateInput(f"Affinity matrix must be square with at least 3 rows, got {P.shape}")

    rng = np.random.default_rng(config.seed)
    Y = INITIAL_SCALE * rng.standard_normal((n, 2))
    initial_kl, _ = kl_divergence_and_gradient(Y, P)

    update = np.zeros_like(Y)
    gains = np.ones_like(Y)
    for it in range(config.iterations):
        exaggeration = config.exaggeration if it < config.exaggeration_iterations else 1.0
        momentum = config.initial_momentum if it < config.momentum_switch else config.final_momentum
        _, grad = kl_divergence_and_gradient(Y, P, exaggeration)

        same_sign = (grad > 0) == (update > 0)
        gains = np.where(same_sign, gains * 0.8, gains + 0.2)
        np.maximum(gains, MIN_GAIN, out=gains)
        update = momentum * update - config.learning_rate * gains * grad
        Y = Y + update
        Y = Y - Y.mean(axis=0)

        if (it + 1) % 250 == 0:
            kl, _ = kl_divergence_and_gradient(Y, P)
            logger.debug("t-SNE iteration %d: KL %.5f", it + 1, kl)

    final_kl, _ = kl_divergence_and_gradient(Y, P)
    if not np.all(np.isfinite(Y)):
        raise DegenerateInput("t-SNE diverged to non-finite coordinates")
    logger.info("t-SNE: KL %.5f -> %.5f over %d iterations", initial_kl, final_kl, config.iterations)
    return Embedding(points=Y, initial_kl=initial_kl, final_kl=max(final_kl, 0.0), config=config)
