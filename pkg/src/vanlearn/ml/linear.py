"""Linear regression fitted by gradient descent on mean squared error."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateDataError, ShapeError
from ..tensor import Matrix, Vector
from .gd import GdConfig, destandardize_weights, linear_loss_grad, run_gd, standardize


@dataclass(frozen=True)
class LinearModel:
    """Weights and intercept in original feature space, plus the per-feature
    (mean, std) pairs used internally; std 0 flags a constant feature."""

    weights: Vector
    intercept: float
    standardization: tuple[tuple[float, float], ...]
    loss_history: tuple[float, ...]
    iterations_run: int


def linreg_fit(X: Matrix, y: Vector, cfg: GdConfig = GdConfig()) -> LinearModel:
    if X.rows != y.len:
        raise ShapeError(f"X has {X.rows} rows but y has {y.len} entries")
    if X.rows < 2:
        raise ShapeError("linear regression needs at least 2 rows")
    Xn = X.to_numpy()
    yn = y.to_numpy()
    if X.cols >= 1 and bool(np.all(Xn == Xn[0])):
        raise DegenerateDataError("all feature rows are identical")
    scaled, means, stds = standardize(Xn)
    w_std, b_std, losses, iterations = run_gd(linear_loss_grad(scaled, yn), X.cols, cfg)
    w, b = destandardize_weights(w_std, b_std, means, stds)
    return LinearModel(
        weights=Vector(w),
        intercept=b,
        standardization=tuple(zip(means.tolist(), stds.tolist())),
        loss_history=tuple(losses),
        iterations_run=iterations,
    )


def linreg_predict(model: LinearModel, X: Matrix) -> Vector:
    if X.rows == 0:
        return Vector([])
    if X.cols != model.weights.len:
        raise ShapeError(f"model expects {model.weights.len} features, got {X.cols}")
    return Vector(X.to_numpy() @ model.weights.to_numpy() + model.intercept)
