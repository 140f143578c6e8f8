"""Regression algorithms implemented on numpy.

Every model follows the same small protocol: ``fit(X, y)`` returns the model
and ``predict(X)`` returns predictions clamped to the win-% range [0, 100].
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field

import numpy as np

from heuristic_portfolio.errors import DegenerateInput

LABEL_MIN = 0.0
LABEL_MAX = 100.0


def _as_arrays(X: np.ndarray, y: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray | None]:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ValueError(f"X must be 2-D, got shape {X.shape}")
    if X.shape[0] == 0:
        raise DegenerateInput("Cannot fit a model on zero rows")
    if y is None:
        return X, None
    y = np.asarray(y, dtype=float)
    if y.shape != (X.shape[0],):
        raise ValueError(f"y has shape {y.shape}, expected ({X.shape[0]},)")
    return X, y


class RegressionModel(ABC):
    name: str = ""

    def __init__(self, seed: int = 0) -> None:
        self.seed = seed
        self.n_features: int | None = None

    def fit(self, X: np.ndarray, y: np.ndarray) -> RegressionModel:
        X, y = _as_arrays(X, y)
        self.n_features = X.shape[1]
        self._fit(X, y)
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        if self.n_features is None:
            raise RuntimeError(f"{self.name} model is not fitted")
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] != self.n_features:
            raise ValueError(f"Expected {self.n_features} features, got {X.shape[1]}")
        return np.clip(self._predict(X), LABEL_MIN, LABEL_MAX)

    @abstractmethod
    def _fit(self, X: np.ndarray, y: np.ndarray) -> None: ...

    @abstractmethod
    def _predict(self, X: np.ndarray) -> np.ndarray: ...


class NaiveRegressor(RegressionModel):
    """Always predicts the training mean."""

    name = "Naive"

    def _fit(self, X: np.ndarray, y: np.ndarray) -> None:
        self.mean_ = float(y.mean())

    def _predict(self, X: np.ndarray) -> np.ndarray:
        return np.full(X.shape[0], self.mean_)


class _LinearModel(RegressionModel):
    coef_: np.ndarray
    intercept_: float

    def _predict(self, X: np.ndarray) -> np.ndarray:
        return X @ self.coef_ + self.intercept_


class RidgeRegressor(_LinearModel):
    """Closed-form ridge with an unpenalised intercept."""

    name = "Ridge"

    def __init__(self, alpha: float = 1.0, seed: int = 0) -> None:
        super().__init__(seed)
        if alpha < 0:
            raise ValueError("alpha must be non-negative")
        self.alpha = alpha

    def _fit(self, X: np.ndarray, y: np.ndarray) -> None:
        x_mean = X.mean(axis=0)
        y_mean = y.mean()
        Xc = X - x_mean
        gram = Xc.T @ Xc + self.alpha * np.eye(X.shape[1])
        rhs = Xc.T @ (y - y_mean)
        try:
            self.coef_ = np.linalg.solve(gram, rhs)
        except np.linalg.LinAlgError:
            self.coef_ = np.linalg.lstsq(gram, rhs, rcond=None)[0]
        self.intercept_ = float(y_mean - x_mean @ self.coef_)


def _soft_threshold(value: float, threshold: float) -> float:
    if value > threshold:
        return value - threshold
    if value < -threshold:
        return value + threshold
    return 0.0


class ElasticNetRegressor(_LinearModel):
    """Coordinate descent on

        (1 / 2n) ||y - Xw - b||^2 + alpha * l1_ratio * ||w||_1
            + alpha * (1 - l1_ratio) / 2 * ||w||^2
    """

    name = "ElasticNet"

    def __init__(
        self,
        alpha: float = 1.0,
        l1_ratio: float = 0.5,
        tol: float = 1e-6,
        max_iter: int = 10_000,
        seed: int = 0,
    ) -> None:
        super().__init__(seed)
        if alpha < 0:
            raise ValueError("alpha must be non-negative")
        if not 0.0 <= l1_ratio <= 1.0:
            raise ValueError("l1_ratio must lie in [0, 1]")
        self.alpha = alpha
        self.l1_ratio = l1_ratio
        self.tol = tol
        self.max_iter = max_iter
        self.n_iter_ = 0

    def _fit(self, X: np.ndarray, y: np.ndarray) -> None:
        n, p = X.shape
        x_mean = X.mean(axis=0)
        y_mean = y.mean()
        Xc = X - x_mean
        residual = y - y_mean
        col_sq = (Xc ** 2).sum(axis=0) / n
        l1 = self.alpha * self.l1_ratio
        l2 = self.alpha * (1.0 - self.l1_ratio)
        w = np.zeros(p)

        for sweep in range(1, self.max_iter + 1):
            max_change = 0.0
            for j in range(p):
                if col_sq[j] == 0.0:
                    continue
                old = w[j]
                rho = Xc[:, j] @ residual / n + col_sq[j] * old
                new = _soft_threshold(rho, l1) / (col_sq[j] + l2)
                if new != old:
                    residual -= Xc[:, j] * (new - old)
                    w[j] = new
                    max_change = max(max_change, abs(new - old))
            self.n_iter_ = sweep
            if max_change < self.tol:
                break

        self.coef_ = w
        self.intercept_ = float(y_mean - x_mean @ w)


class LassoRegressor(ElasticNetRegressor):
    name = "Lasso"

    def __init__(self, alpha: float = 1.0, tol: float = 1e-6, max_iter: int = 10_000, seed: int = 0) -> None:
        super().__init__(alpha=alpha, l1_ratio=1.0, tol=tol, max_iter=max_iter, seed=seed)


def kkt_residual(model: ElasticNetRegressor, X: np.ndarray, y: np.ndarray) -> float:
    """Largest violation of the optimality conditions of a fitted elastic net."""
    X, y = _as_arrays(X, y)
    n = X.shape[0]
    Xc = X - X.mean(axis=0)
    yc = y - y.mean()
    w = model.coef_
    l1 = model.alpha * model.l1_ratio
    l2 = model.alpha * (1.0 - model.l1_ratio)
    grad = -Xc.T @ (yc - Xc @ w) / n + l2 * w
    violation = np.where(
        w != 0.0,
        np.abs(grad + l1 * np.sign(w)),
        np.maximum(0.0, np.abs(grad) - l1),
    )
    return float(violation.max()) if violation.size else 0.0


class KNeighborsRegressor(RegressionModel):
    """Mean label of the k nearest training rows; ties go to the lower row index."""

    name = "KNeighbors"

    def __init__(self, k: int = 5, seed: int = 0) -> None:
        super().__init__(seed)
        if k < 1:
            raise ValueError("k must be positive")
        self.k = k

    def _fit(self, X: np.ndarray, y: np.ndarray) -> None:
        self.X_ = X.copy()
        self.y_ = y.copy()

    def _predict(self, X: np.ndarray) -> np.ndarray:
        k = min(self.k, len(self.y_))
        out = np.empty(X.shape[0])
        for i, row in enumerate(X):
            d = ((self.X_ - row) ** 2).sum(axis=1)
            nearest = np.argsort(d, kind="stable")[:k]
            out[i] = self.y_[nearest].mean()
        return out


@dataclass
class _Tree:
    feature: list[int] = field(default_factory=list)
    threshold: list[float] = field(default_factory=list)
    left: list[int] = field(default_factory=list)
    right: list[int] = field(default_factory=list)
    value: list[float] = field(default_factory=list)

    def add_leaf(self, value: float) -> int:
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.value.append(value)
        return len(self.value) - 1

    def predict_row(self, row: np.ndarray) -> float:
        node = 0
        while self.feature[node] >= 0:
            node = self.left[node] if row[self.feature[node]] <= self.threshold[node] else self.right[node]
        return self.value[node]


def _best_split(
    X: np.ndarray,
    y: np.ndarray,
    features: np.ndarray,
    min_leaf: int,
) -> tuple[int, float] | None:
    """Variance-reduction split; the first candidate feature wins exact ties."""
    n = len(y)
    if n < 2 * min_leaf:
        return None
    total_sum = y.sum()
    parent = total_sum * total_sum / n
    # split after position i: the left child holds the first i + 1 sorted rows
    positions = np.arange(min_leaf - 1, n - min_leaf)
    n_left = positions + 1
    best_gain = 0.0
    best: tuple[int, float] | None = None
    for j in features:
        order = np.argsort(X[:, j], kind="stable")
        xs = X[order, j]
        left_sum = np.cumsum(y[order])[positions]
        right_sum = total_sum - left_sum
        gain = left_sum ** 2 / n_left + right_sum ** 2 / (n - n_left) - parent
        gain[xs[positions] == xs[positions + 1]] = -np.inf
        i = int(np.argmax(gain))
        if gain[i] > best_gain + 1e-12:
            best_gain = float(gain[i])
            at = positions[i]
            best = (int(j), float((xs[at] + xs[at + 1]) / 2))
    return best


class DecisionTreeRegressor(RegressionModel):
    """CART regression tree with variance-reduction splits."""

    name = "DecisionTree"

    def __init__(
        self,
        min_samples_leaf: int = 5,
        max_depth: int | None = None,
        max_features: int | None = None,
        seed: int = 0,
    ) -> None:
        super().__init__(seed)
        if min_samples_leaf < 1:
            raise ValueError("min_samples_leaf must be positive")
        self.min_samples_leaf = min_samples_leaf
        self.max_depth = max_depth
        self.max_features = max_features

    def _fit(self, X: np.ndarray, y: np.ndarray) -> None:
        rng = np.random.default_rng(self.seed)
        p = X.shape[1]
        self.tree_ = _Tree()
        self.tree_.add_leaf(float(y.mean()))
        stack = [(0, np.arange(len(y)), 0)]
        while stack:
            node, rows, depth = stack.pop()
            if len(rows) < 2 * self.min_samples_leaf:
                continue
            if self.max_depth is not None and depth >= self.max_depth:
                continue
            if self.max_features is not None and self.max_features < p:
                features = np.sort(rng.choice(p, self.max_features, replace=False))
            else:
                features = np.arange(p)
            split = _best_split(X[rows], y[rows], features, self.min_samples_leaf)
            if split is None:
                continue
            j, threshold = split
            go_left = X[rows, j] <= threshold
            left_rows, right_rows = rows[go_left], rows[~go_left]
            left = self.tree_.add_leaf(float(y[left_rows].mean()))
            right = self.tree_.add_leaf(float(y[right_rows].mean()))
            self.tree_.feature[node] = j
            self.tree_.threshold[node] = threshold
            self.tree_.left[node] = left
            self.tree_.right[node] = right
            stack.append((right, right_rows, depth + 1))
            stack.append((left, left_rows, depth + 1))

    def _predict(self, X: np.ndarray) -> np.ndarray:
        return np.array([self.tree_.predict_row(row) for row in X])

    @property
    def node_count(self) -> int:
        return len(self.tree_.value)


class RandomForestRegressor(RegressionModel):
    name = "RandomForest"

    def __init__(
        self,
        n_estimators: int = 100,
        bootstrap: bool = True,
        max_features: int | str | None = "sqrt",
        min_samples_leaf: int = 5,
        seed: int = 0,
    ) -> None:
        super().__init__(seed)
        if n_estimators < 1:
            raise ValueError("n_estimators must be positive")
        self.n_estimators = n_estimators
        self.bootstrap = bootstrap
        self.max_features = max_features
        self.min_samples_leaf = min_samples_leaf

    def _features_per_split(self, p: int) -> int | None:
        if self.max_features is None:
            return None
        if self.max_features == "sqrt":
            return max(1, math.ceil(math.sqrt(p)))
        if isinstance(self.max_features, int):
            return self.max_features
        raise ValueError(f"Unsupported max_features: {self.max_features!r}")

    def _fit(self, X: np.ndarray, y: np.ndarray) -> None:
        n = len(y)
        m = self._features_per_split(X.shape[1])
        self.trees_: list[DecisionTreeRegressor] = []
        for child in np.random.SeedSequence(self.seed).spawn(self.n_estimators):
            rng = np.random.default_rng(child)
            rows = rng.integers(0, n, n) if self.bootstrap else np.arange(n)
            tree = DecisionTreeRegressor(
                min_samples_leaf=self.min_samples_leaf,
                max_features=m,
                seed=int(child.generate_state(1)[0]),
            )
            tree._fit(X[rows], y[rows])
            tree.n_features = X.shape[1]
            self.trees_.append(tree)

    def _predict(self, X: np.ndarray) -> np.ndarray:
        return np.mean([tree._predict(X) for tree in self.trees_], axis=0)


class GradientBoostingRegressor(RegressionModel):
    """Squared-loss boosting of shallow regression trees."""

    name = "GradientBoosting"

    def __init__(
        self,
        n_estimators: int = 100,
        learning_rate: float = 0.1,
        max_depth: int = 3,
        min_samples_leaf: int = 1,
        seed: int = 0,
    ) -> None:
        super().__init__(seed)
        self.n_estimators = n_estimators
        self.learning_rate = learning_rate
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf

    def _fit(self, X: np.ndarray, y: np.ndarray) -> None:
        self.init_ = float(y.mean())
        current = np.full(len(y), self.init_)
        self.stages_: list[DecisionTreeRegressor] = []
        for _ in range(self.n_estimators):
            stage = DecisionTreeRegressor(
                min_samples_leaf=self.min_samples_leaf,
                max_depth=self.max_depth,
                seed=self.seed,
            )
            stage._fit(X, y - current)
            stage.n_features = X.shape[1]
            current = current + self.learning_rate * stage._predict(X)
            self.stages_.append(stage)

    def _predict(self, X: np.ndarray) -> np.ndarray:
        out = np.full(X.shape[0], self.init_)
        for stage in self.stages_:
            out = out + self.learning_rate * stage._predict(X)
        return out


REGISTRY: dict[str, type[RegressionModel]] = {
    cls.name: cls
    for cls in (
        NaiveRegressor,
        RidgeRegressor,
        LassoRegressor,
        ElasticNetRegressor,
        KNeighborsRegressor,
        DecisionTreeRegressor,
        RandomForestRegressor,
        GradientBoostingRegressor,
    )
}


def make_model(algorithm: str, seed: int = 0, **params: object) -> RegressionModel:
    try:
        cls = REGISTRY[algorithm]
    except KeyError:
        raise ValueError(f"Unknown algorithm: '{algorithm}'. Choose from: {', '.join(REGISTRY)}")
    return cls(seed=seed, **params)


def fit(algorithm: str, X: np.ndarray, y: np.ndarray, seed: int = 0, **params: object) -> RegressionModel:
    """Build and fit ``algorithm`` with its default hyperparameters unless overridden."""
    return make_model(algorithm, seed, **params).fit(X, y)


def predict(model: RegressionModel, X: np.ndarray) -> np.ndarray:
    return model.predict(X)
