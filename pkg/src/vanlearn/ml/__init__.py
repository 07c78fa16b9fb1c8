"""The learning algorithms: k-means, linear/logistic regression, decision tree."""

from .gd import GdConfig
from .kmeans import KMeansConfig, KMeansModel, kmeans_fit
from .linear import LinearModel, linreg_fit, linreg_predict
from .logistic import LogisticModel, logreg_fit, logreg_predict
from .serialize import TrainedModel, model_from_json, model_to_json
from .tree import Leaf, Split, TreeModel, dtree_fit, dtree_predict

__all__ = [
    "GdConfig",
    "KMeansConfig",
    "KMeansModel",
    "kmeans_fit",
    "LinearModel",
    "linreg_fit",
    "linreg_predict",
    "LogisticModel",
    "logreg_fit",
    "logreg_predict",
    "TrainedModel",
    "model_from_json",
    "model_to_json",
    "Leaf",
    "Split",
    "TreeModel",
    "dtree_fit",
    "dtree_predict",
]
