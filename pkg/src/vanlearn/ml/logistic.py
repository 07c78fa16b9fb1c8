"""Binary logistic regression fitted by gradient descent on cross-entropy."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..codec import Cell, render_cell
from ..errors import LabelCardinalityError, ShapeError
from ..tensor import Matrix, Vector
from .gd import (
    GdConfig,
    destandardize_weights,
    logistic_loss_grad,
    run_gd,
    sigmoid,
    standardize,
)


@dataclass(frozen=True)
class LogisticModel:
    """label_map pairs the two original label values with classes (0, 1);
    the lexicographically smaller label (by its text form) maps to 0."""

    weights: Vector
    intercept: float
    label_map: tuple[Cell, Cell]
    standardization: tuple[tuple[float, float], ...]
    loss_history: tuple[float, ...]
    iterations_run: int


def order_labels(labels: Sequence[Cell]) -> tuple[Cell, Cell]:
    distinct = list(dict.fromkeys(labels))
    if len(distinct) != 2:
        raise LabelCardinalityError(f"expected exactly 2 distinct labels, found {len(distinct)}")
    distinct.sort(key=render_cell)
    return distinct[0], distinct[1]


def logreg_fit(X: Matrix, y_labels: Sequence[Cell], cfg: GdConfig = GdConfig()) -> LogisticModel:
    labels = list(y_labels)
    if X.rows != len(labels):
        raise ShapeError(f"X has {X.rows} rows but {len(labels)} labels were given")
    if X.rows < 2:
        raise ShapeError("logistic regression needs at least 2 rows")
    label_map = order_labels(labels)
    y = np.array([0.0 if lab == label_map[0] else 1.0 for lab in labels])
    scaled, means, stds = standardize(X.to_numpy())
    w_std, b_std, losses, iterations = run_gd(logistic_loss_grad(scaled, y), X.cols, cfg)
    w, b = destandardize_weights(w_std, b_std, means, stds)
    return LogisticModel(
        weights=Vector(w),
        intercept=b,
        label_map=label_map,
        standardization=tuple(zip(means.tolist(), stds.tolist())),
        loss_history=tuple(losses),
        iterations_run=iterations,
    )


def logreg_predict(model: LogisticModel, X: Matrix) -> tuple[list[Cell], Vector]:
    """Per-row (original label, probability of the class-1 label).
    Probability exactly 0.5 resolves to the label mapped to 1."""
    if X.rows == 0:
        return [], Vector([])
    if X.cols != model.weights.len:
        raise ShapeError(f"model expects {model.weights.len} features, got {X.cols}")
    p = sigmoid(X.to_numpy() @ model.weights.to_numpy() + model.intercept)
    labels = [model.label_map[1] if pi >= 0.5 else model.label_map[0] for pi in p]
    return labels, Vector(p)


def training_accuracy(model: LogisticModel, X: Matrix, y_labels: Sequence[Cell]) -> float:
    predicted, _ = logreg_predict(model, X)
    hits = sum(1 for a, b in zip(predicted, y_labels) if a == b)
    return hits / len(predicted)
