"""K-means clustering: seeded k-means++ initialization plus Lloyd iteration.

Runs are fully deterministic for a fixed (data, config) pair. Inertia is
recorded after every centroid update; the sequence is non-increasing, which
the tests assert on every run.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ParamsError, ShapeError, TooFewRowsError
from ..tensor import Matrix


@dataclass(frozen=True)
class KMeansConfig:
    k: int
    max_iters: int = 300
    seed: int = 0
    tol: float = 1e-6

    def __post_init__(self):
        if self.k < 1:
            raise ParamsError("k must be >= 1")
        if self.max_iters < 1:
            raise ParamsError("max_iters must be >= 1")
        if self.tol <= 0:
            raise ParamsError("tol must be > 0")


@dataclass(frozen=True)
class KMeansModel:
    centroids: Matrix
    assignments: tuple[int, ...]
    inertia: float
    iterations_run: int
    inertia_history: tuple[float, ...]


def _sq_dists_to(X: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """n x k squared Euclidean distances, clipped at 0 against rounding."""
    d2 = (
        (X * X).sum(axis=1)[:, None]
        + (centroids * centroids).sum(axis=1)[None, :]
        - 2.0 * (X @ centroids.T)
    )
    return np.maximum(d2, 0.0)


def _plus_plus_init(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++: each next centroid sampled with probability proportional
    to its squared distance from the nearest one already chosen."""
    n = X.shape[0]
    chosen = np.empty((k, X.shape[1]))
    first = int(rng.integers(n))
    chosen[0] = X[first]
    closest = ((X - chosen[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = float(closest.sum())
        if total > 0:
            idx = int(rng.choice(n, p=closest / total))
        else:
            idx = int(rng.integers(n))  # all remaining points coincide
        chosen[j] = X[idx]
        closest = np.minimum(closest, ((X - chosen[j]) ** 2).sum(axis=1))
    return chosen


def _fix_empty_clusters(assign: np.ndarray, point_d2: np.ndarray, k: int):
    """Hand each empty cluster the point currently farthest from its own
    centroid, skipping points whose source cluster would empty out."""
    counts = np.bincount(assign, minlength=k)
    for cluster in np.flatnonzero(counts == 0):
        order = np.argsort(-point_d2, kind="stable")
        for idx in order:
            source = assign[idx]
            if counts[source] >= 2:
                assign[idx] = cluster
                counts[source] -= 1
                counts[cluster] += 1
                point_d2[idx] = 0.0
                break


def kmeans_fit(data: Matrix, cfg: KMeansConfig) -> KMeansModel:
    if data.cols < 1:
        raise ShapeError("k-means needs at least 1 feature column")
    if data.rows < cfg.k:
        raise TooFewRowsError(f"need at least k={cfg.k} rows, got {data.rows}")
    X = data.to_numpy()
    n, k = data.rows, cfg.k
    rng = np.random.default_rng(cfg.seed)
    centroids = _plus_plus_init(X, k, rng)

    history: list[float] = []
    assign = np.full(n, -1, dtype=np.int64)
    prev_assign: np.ndarray | None = None
    iterations = 0
    for _ in range(cfg.max_iters):
        d2 = _sq_dists_to(X, centroids)
        assign = d2.argmin(axis=1)
        point_d2 = d2[np.arange(n), assign]
        _fix_empty_clusters(assign, point_d2, k)

        new_centroids = np.empty_like(centroids)
        for j in range(k):
            new_centroids[j] = X[assign == j].mean(axis=0)
        shift = float(np.sqrt(((new_centroids - centroids) ** 2).sum(axis=1)).max())
        centroids = new_centroids

        inertia = float(((X - centroids[assign]) ** 2).sum())
        history.append(inertia)
        iterations += 1
        if prev_assign is not None and np.array_equal(assign, prev_assign):
            break
        prev_assign = assign.copy()
        if shift < cfg.tol:
            break

    return KMeansModel(
        centroids=Matrix.from_numpy(centroids),
        assignments=tuple(int(a) for a in assign),
        inertia=history[-1],
        iterations_run=iterations,
        inertia_history=tuple(history),
    )
