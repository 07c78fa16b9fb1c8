"""Independent reference implementations used to cross-check the package.

Everything here is deliberately written via a *different* route than the
code under test: closed-form normal equations instead of gradient descent,
exhaustive partition search instead of Lloyd iterations, finite differences
instead of analytic gradients. Plain Python loops only.
"""

from __future__ import annotations

import math
from itertools import product


def gaussian_solve(M: list[list[float]], rhs: list[float]) -> list[float]:
    """Solve M x = rhs by Gaussian elimination with partial pivoting."""
    n = len(M)
    A = [row[:] + [rhs[i]] for i, row in enumerate(M)]
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(A[r][col]))
        if abs(A[pivot][col]) < 1e-12:
            raise ValueError("singular system")
        A[col], A[pivot] = A[pivot], A[col]
        for r in range(col + 1, n):
            factor = A[r][col] / A[col][col]
            for c in range(col, n + 1):
                A[r][c] -= factor * A[col][c]
    x = [0.0] * n
    for r in range(n - 1, -1, -1):
        acc = A[r][n]
        for c in range(r + 1, n):
            acc -= A[r][c] * x[c]
        x[r] = acc / A[r][r]
    return x


def solve_normal_equations(
    X: list[list[float]], y: list[float]
) -> tuple[list[float], float]:
    """Least-squares weights and intercept from (AᵀA)x = Aᵀy where A is the
    design matrix with a leading column of ones."""
    n = len(X)
    A = [[1.0] + list(row) for row in X]
    m = len(A[0])
    G = [[sum(A[r][i] * A[r][j] for r in range(n)) for j in range(m)] for i in range(m)]
    b = [sum(A[r][i] * y[r] for r in range(n)) for i in range(m)]
    sol = gaussian_solve(G, b)
    return sol[1:], sol[0]


def linreg_mse(X: list[list[float]], y: list[float], w: list[float], b: float) -> float:
    n = len(X)
    total = 0.0
    for row, target in zip(X, y):
        pred = b + sum(wi * xi for wi, xi in zip(w, row))
        total += (pred - target) ** 2
    return total / n


def kmeans_inertia(points: list[list[float]], assignment: list[int], k: int) -> float:
    """Inertia of a fixed partition with centroids at the cluster means."""
    dims = len(points[0])
    total = 0.0
    for c in range(k):
        members = [p for p, a in zip(points, assignment) if a == c]
        if not members:
            continue
        mean = [sum(p[j] for p in members) / len(members) for j in range(dims)]
        for p in members:
            total += sum((p[j] - mean[j]) ** 2 for j in range(dims))
    return total


def exhaustive_kmeans(points: list[list[float]], k: int) -> tuple[float, tuple[int, ...]]:
    """Global k-means optimum by scoring every assignment of n points to k
    non-empty clusters. Exponential; fine for n ≤ 10."""
    n = len(points)
    best = math.inf
    best_assign: tuple[int, ...] = ()
    for assignment in product(range(k), repeat=n):
        if len(set(assignment)) != k:
            continue
        inertia = kmeans_inertia(points, list(assignment), k)
        if inertia < best:
            best = inertia
            best_assign = assignment
    return best, best_assign


def finite_difference_gradient(loss, w: list[float], b: float, h: float = 1e-6):
    """Central-difference gradient of loss(w, b) in weights and intercept."""
    grad_w = []
    for i in range(len(w)):
        hi = [v + h if j == i else v for j, v in enumerate(w)]
        lo = [v - h if j == i else v for j, v in enumerate(w)]
        grad_w.append((loss(hi, b) - loss(lo, b)) / (2 * h))
    grad_b = (loss(w, b + h) - loss(w, b - h)) / (2 * h)
    return grad_w, grad_b


def majority_baseline(labels: list) -> float:
    """Accuracy of always answering the most common label."""
    counts: dict = {}
    for lab in labels:
        counts[lab] = counts.get(lab, 0) + 1
    return max(counts.values()) / len(labels)
