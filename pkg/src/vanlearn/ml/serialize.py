"""Versioned JSON serialization for trained models.

Documents look like ``{"version": 1, "algorithm": "...", "model": {...}}``
and round-trip exactly; the persistence layer stores the string form.
"""

from __future__ import annotations

import json
from typing import Any

from ..errors import FormatError
from ..tensor import Matrix, Vector
from .kmeans import KMeansModel
from .linear import LinearModel
from .logistic import LogisticModel
from .tree import Leaf, Split, TreeModel, TreeNode

FORMAT_VERSION = 1

TrainedModel = KMeansModel | LinearModel | LogisticModel | TreeModel


def _node_to_dict(node: TreeNode) -> dict[str, Any]:
    if isinstance(node, Leaf):
        return {"kind": "leaf", "label": node.label, "count": node.count}
    return {
        "kind": "split",
        "feature_index": node.feature_index,
        "threshold": node.threshold,
        "left": _node_to_dict(node.left),
        "right": _node_to_dict(node.right),
    }


def _node_from_dict(doc: dict[str, Any]) -> TreeNode:
    if doc["kind"] == "leaf":
        return Leaf(doc["label"], doc["count"])
    return Split(
        doc["feature_index"],
        doc["threshold"],
        _node_from_dict(doc["left"]),
        _node_from_dict(doc["right"]),
    )


def model_to_json(model: TrainedModel) -> str:
    if isinstance(model, KMeansModel):
        algorithm = "kmeans"
        body: dict[str, Any] = {
            "centroids": model.centroids.to_lists(),
            "n_centroid_cols": model.centroids.cols,
            "assignments": list(model.assignments),
            "inertia": model.inertia,
            "iterations_run": model.iterations_run,
            "inertia_history": list(model.inertia_history),
        }
    elif isinstance(model, LinearModel):
        algorithm = "linreg"
        body = {
            "weights": model.weights.to_list(),
            "intercept": model.intercept,
            "standardization": [list(p) for p in model.standardization],
            "iterations_run": model.iterations_run,
        }
    elif isinstance(model, LogisticModel):
        algorithm = "logreg"
        body = {
            "weights": model.weights.to_list(),
            "intercept": model.intercept,
            "label_map": list(model.label_map),
            "standardization": [list(p) for p in model.standardization],
            "iterations_run": model.iterations_run,
        }
    elif isinstance(model, TreeModel):
        algorithm = "dtree"
        body = {
            "root": _node_to_dict(model.root),
            "class_labels": list(model.class_labels),
            "n_features": model.n_features,
            "depth": model.depth,
            "training_accuracy": model.training_accuracy,
        }
    else:
        raise FormatError(f"cannot serialize {type(model).__name__}")
    return json.dumps({"version": FORMAT_VERSION, "algorithm": algorithm, "model": body})


def model_from_json(text: str) -> TrainedModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"model document is not JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("model document must be a JSON object")
    if doc.get("version") != FORMAT_VERSION:
        raise FormatError(f"unsupported model document version {doc.get('version')!r}")
    body = doc["model"]
    algorithm = doc["algorithm"]
    if algorithm == "kmeans":
        centroid_rows = body["centroids"]
        cols = body.get("n_centroid_cols", len(centroid_rows[0]) if centroid_rows else 0)
        flat = [v for row in centroid_rows for v in row]
        return KMeansModel(
            centroids=Matrix(len(centroid_rows), cols, flat),
            assignments=tuple(body["assignments"]),
            inertia=body["inertia"],
            iterations_run=body["iterations_run"],
            inertia_history=tuple(body["inertia_history"]),
        )
    if algorithm == "linreg":
        return LinearModel(
            weights=Vector(body["weights"]),
            intercept=body["intercept"],
            standardization=tuple((m, s) for m, s in body["standardization"]),
            loss_history=(),
            iterations_run=body["iterations_run"],
        )
    if algorithm == "logreg":
        label_map = body["label_map"]
        norm = tuple(float(v) if isinstance(v, (int, float)) else v for v in label_map)
        return LogisticModel(
            weights=Vector(body["weights"]),
            intercept=body["intercept"],
            label_map=(norm[0], norm[1]),
            standardization=tuple((m, s) for m, s in body["standardization"]),
            loss_history=(),
            iterations_run=body["iterations_run"],
        )
    if algorithm == "dtree":
        return TreeModel(
            root=_node_from_dict(body["root"]),
            class_labels=tuple(body["class_labels"]),
            n_features=body["n_features"],
            depth=body["depth"],
            training_accuracy=body["training_accuracy"],
        )
    raise FormatError(f"unknown algorithm {algorithm!r} in model document")
