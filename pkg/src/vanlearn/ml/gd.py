"""Gradient descent driver shared by the linear and logistic fits.

Features are standardized internally so one small fixed step size works on
raw UCI-scale data; fitted weights are mapped back to the original feature
space afterwards. The optional two-point mode derives the step length from
successive iterate/gradient differences instead of keeping it fixed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import ParamsError

STEP_FIXED = "fixed"
STEP_TWO_POINT = "two_point"


@dataclass(frozen=True)
class GdConfig:
    step_size: float = 1e-3
    max_iters: int = 10_000
    grad_tol: float = 1e-6
    step_mode: str = STEP_FIXED

    def __post_init__(self):
        if self.step_size <= 0:
            raise ParamsError("step_size must be > 0")
        if self.max_iters < 1:
            raise ParamsError("max_iters must be >= 1")
        if self.grad_tol <= 0:
            raise ParamsError("grad_tol must be > 0")
        if self.step_mode not in (STEP_FIXED, STEP_TWO_POINT):
            raise ParamsError(f"unknown step_mode {self.step_mode!r}")


def standardize(X: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Column-wise (x - mean) / std. Constant columns keep std 0 as the
    flag and are scaled to all-zero so their weight stays at zero."""
    if X.shape[0] == 0:
        return X.copy(), np.zeros(X.shape[1]), np.zeros(X.shape[1])
    means = X.mean(axis=0)
    stds = X.std(axis=0)
    divisors = np.where(stds > 0, stds, 1.0)
    scaled = (X - means) / divisors
    scaled[:, stds == 0] = 0.0
    return scaled, means, stds


def destandardize_weights(
    w: np.ndarray, b: float, means: np.ndarray, stds: np.ndarray
) -> tuple[np.ndarray, float]:
    """Map weights fitted on standardized features back to raw features."""
    safe = np.where(stds > 0, stds, 1.0)
    w_raw = np.where(stds > 0, w / safe, 0.0)
    b_raw = b - float(np.dot(w_raw, means))
    return w_raw, b_raw


LossGrad = Callable[[np.ndarray, float], tuple[float, np.ndarray, float]]


def run_gd(loss_grad: LossGrad, n_features: int, cfg: GdConfig) -> tuple[np.ndarray, float, list[float], int]:
    """Minimize via gradient descent from the zero start.

    ``loss_grad(w, b)`` returns (loss, grad_w, grad_b). Stops when the
    sup-norm of the gradient drops below ``grad_tol`` or at ``max_iters``.
    Returns (w, b, per-iteration losses, iterations run).
    """
    w = np.zeros(n_features)
    b = 0.0
    losses: list[float] = []
    prev_theta: np.ndarray | None = None
    prev_grad: np.ndarray | None = None
    iterations = 0
    for _ in range(cfg.max_iters):
        loss, grad_w, grad_b = loss_grad(w, b)
        losses.append(loss)
        iterations += 1
        grad = np.append(grad_w, grad_b)
        if float(np.max(np.abs(grad))) < cfg.grad_tol:
            break
        theta = np.append(w, b)
        step = cfg.step_size
        if cfg.step_mode == STEP_TWO_POINT and prev_theta is not None:
            s = theta - prev_theta
            g_diff = grad - prev_grad
            curvature = float(np.dot(s, g_diff))
            if curvature > 0:
                candidate = float(np.dot(s, s)) / curvature
                if np.isfinite(candidate) and candidate > 0:
                    step = candidate
        prev_theta = theta
        prev_grad = grad
        w = w - step * grad_w
        b = b - step * grad_b
    return w, b, losses, iterations


def linear_loss_grad(X: np.ndarray, y: np.ndarray) -> LossGrad:
    """Mean squared error and its gradient for ``X @ w + b``."""
    n = X.shape[0]

    def fn(w: np.ndarray, b: float) -> tuple[float, np.ndarray, float]:
        residual = X @ w + b - y
        loss = float(residual @ residual) / n
        grad_w = (2.0 / n) * (X.T @ residual)
        grad_b = (2.0 / n) * float(residual.sum())
        return loss, grad_w, grad_b

    return fn


def sigmoid(z: np.ndarray) -> np.ndarray:
    """Numerically stable logistic function."""
    out = np.empty_like(z, dtype=np.float64)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def logistic_loss_grad(X: np.ndarray, y: np.ndarray) -> LossGrad:
    """Mean cross-entropy with the sigmoid link; y holds 0/1 targets."""
    n = X.shape[0]
    eps = 1e-12

    def fn(w: np.ndarray, b: float) -> tuple[float, np.ndarray, float]:
        p = sigmoid(X @ w + b)
        clipped = np.clip(p, eps, 1.0 - eps)
        loss = -float(np.mean(y * np.log(clipped) + (1.0 - y) * np.log(1.0 - clipped)))
        diff = p - y
        grad_w = (X.T @ diff) / n
        grad_b = float(diff.sum()) / n
        return loss, grad_w, grad_b

    return fn
