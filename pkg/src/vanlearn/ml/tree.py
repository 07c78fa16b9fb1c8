"""CART-style decision tree on Gini impurity.

The last dataset column is the output and may be text; every other column
must be numeric. Split candidates are midpoints between consecutive sorted
distinct feature values. Ties in gain break toward the lowest feature
index, then the lowest threshold, so trees are deterministic.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from ..codec import Dataset, render_cell
from ..errors import EmptyError, SchemaError, ShapeError
from ..tensor import Matrix

MIN_SPLIT_GAIN = 1e-12


@dataclass(frozen=True)
class Leaf:
    label: str
    count: int


@dataclass(frozen=True)
class Split:
    feature_index: int
    threshold: float
    left: "TreeNode"
    right: "TreeNode"


TreeNode = Leaf | Split


@dataclass(frozen=True)
class TreeModel:
    root: TreeNode
    class_labels: tuple[str, ...]
    n_features: int
    depth: int
    training_accuracy: float


def _gini(counts: Counter) -> float:
    total = sum(counts.values())
    return 1.0 - sum((c / total) ** 2 for c in counts.values())


def _majority(counts: Counter) -> str:
    best = max(counts.values())
    return min(label for label, c in counts.items() if c == best)


def _best_split(features: list[list[float]], labels: list[str]) -> tuple[int, float] | None:
    """Scan every feature with prefix class counts; returns the (feature,
    threshold) with the largest Gini gain, or None when nothing improves."""
    n = len(labels)
    parent = Counter(labels)
    parent_gini = _gini(parent)
    best_gain = MIN_SPLIT_GAIN
    best: tuple[int, float] | None = None
    for j in range(len(features[0])):
        order = sorted(range(n), key=lambda i: features[i][j])
        left: Counter = Counter()
        right = parent.copy()
        for rank in range(n - 1):
            label = labels[order[rank]]
            left[label] += 1
            right[label] -= 1
            if right[label] == 0:
                del right[label]
            value = features[order[rank]][j]
            next_value = features[order[rank + 1]][j]
            if value == next_value:
                continue
            n_left = rank + 1
            weighted = (n_left * _gini(left) + (n - n_left) * _gini(right)) / n
            gain = parent_gini - weighted
            if gain > best_gain:
                best_gain = gain
                best = (j, value + (next_value - value) / 2.0)
    return best


def _grow(
    features: list[list[float]],
    labels: list[str],
    depth: int,
    max_depth: int | None,
) -> tuple[TreeNode, int]:
    counts = Counter(labels)
    if len(counts) == 1 or (max_depth is not None and depth >= max_depth):
        return Leaf(_majority(counts), len(labels)), depth
    found = _best_split(features, labels)
    if found is None:
        return Leaf(_majority(counts), len(labels)), depth
    j, threshold = found
    left_idx = [i for i in range(len(labels)) if features[i][j] <= threshold]
    right_idx = [i for i in range(len(labels)) if features[i][j] > threshold]
    left, left_depth = _grow(
        [features[i] for i in left_idx], [labels[i] for i in left_idx], depth + 1, max_depth
    )
    right, right_depth = _grow(
        [features[i] for i in right_idx], [labels[i] for i in right_idx], depth + 1, max_depth
    )
    return Split(j, threshold, left, right), max(left_depth, right_depth)


def dtree_fit(dataset: Dataset, max_depth: int | None = None) -> TreeModel:
    if dataset.n_cols < 2:
        raise SchemaError("decision tree needs at least 2 columns (features + output)")
    if dataset.n_rows < 1:
        raise EmptyError("decision tree needs at least 1 row")
    n_features = dataset.n_cols - 1
    features: list[list[float]] = []
    for i, row in enumerate(dataset.rows):
        for j in range(n_features):
            if not isinstance(row[j], float):
                raise SchemaError(
                    f"feature column {dataset.columns[j]!r} has non-numeric value at row {i}"
                )
        features.append([row[j] for j in range(n_features)])
    labels = [render_cell(row[-1]) for row in dataset.rows]

    root, depth = _grow(features, labels, 0, max_depth)
    predicted = [_route(root, r) for r in features]
    accuracy = sum(1 for a, b in zip(predicted, labels) if a == b) / len(labels)
    return TreeModel(
        root=root,
        class_labels=tuple(sorted(set(labels))),
        n_features=n_features,
        depth=depth,
        training_accuracy=accuracy,
    )


def _route(node: TreeNode, row: list[float]) -> str:
    while isinstance(node, Split):
        node = node.left if row[node.feature_index] <= node.threshold else node.right
    return node.label


def dtree_predict(model: TreeModel, X: Matrix) -> list[str]:
    if X.rows == 0:
        return []
    if X.cols != model.n_features:
        raise ShapeError(f"model expects {model.n_features} features, got {X.cols}")
    rows = X.to_lists()
    return [_route(model.root, row) for row in rows]


def leaf_count(node: TreeNode) -> int:
    if isinstance(node, Leaf):
        return 1
    return leaf_count(node.left) + leaf_count(node.right)
