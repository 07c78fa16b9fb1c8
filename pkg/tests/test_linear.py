import numpy as np
import pytest

from oracles import linreg_mse, solve_normal_equations
from vanlearn.errors import DegenerateDataError, ShapeError
from vanlearn.ml.gd import GdConfig, linear_loss_grad, run_gd
from vanlearn.ml.linear import linreg_fit, linreg_predict
from vanlearn.tensor import Matrix, Vector, matrix_from_rows


def test_exact_line_recovers_slope_and_intercept():
    X = matrix_from_rows([[0.0], [1.0], [2.0], [3.0]])
    y = Vector([1.0, 3.0, 5.0, 7.0])
    model = linreg_fit(X, y)
    assert abs(model.weights[0] - 2.0) < 1e-3
    assert abs(model.intercept - 1.0) < 1e-3


def test_matches_normal_equations_on_seeded_problems():
    # Smaller cousin of the acceptance sweep: gradient descent against the
    # closed-form least-squares solution.
    rng = np.random.default_rng(6)
    for _ in range(6):
        n = 50
        d = int(rng.integers(1, 6))
        X = rng.uniform(-5, 5, size=(n, d))
        w_true = rng.uniform(-3, 3, size=d)
        y = X @ w_true + rng.uniform(-2, 2) + rng.normal(scale=0.3, size=n)
        model = linreg_fit(Matrix.from_numpy(X), Vector(y))
        w_ref, b_ref = solve_normal_equations(X.tolist(), y.tolist())
        for got, want in zip(model.weights.to_list(), w_ref):
            assert abs(got - want) < 1e-3
        assert abs(model.intercept - b_ref) < 1e-3


def test_loss_history_non_increasing_and_consistent():
    rng = np.random.default_rng(13)
    X = rng.uniform(-4, 4, size=(40, 3))
    y = X @ np.array([1.0, -2.0, 0.5]) + 3.0 + rng.normal(scale=0.5, size=40)
    model = linreg_fit(Matrix.from_numpy(X), Vector(y))
    hist = model.loss_history
    assert all(hist[i + 1] <= hist[i] + 1e-12 for i in range(len(hist) - 1))
    # the recorded final loss equals an independent MSE computation
    final = linreg_mse(X.tolist(), y.tolist(), model.weights.to_list(), model.intercept)
    assert abs(final - hist[-1]) < 1e-9
    assert model.iterations_run == len(hist)


def test_two_point_step_matches_oracle_faster():
    rng = np.random.default_rng(21)
    X = rng.uniform(-5, 5, size=(50, 4))
    y = X @ np.array([2.0, -1.0, 0.25, 3.0]) + 1.5 + rng.normal(scale=0.2, size=50)
    fixed = linreg_fit(Matrix.from_numpy(X), Vector(y), GdConfig(step_mode="fixed"))
    bb = linreg_fit(Matrix.from_numpy(X), Vector(y), GdConfig(step_mode="two_point"))
    w_ref, b_ref = solve_normal_equations(X.tolist(), y.tolist())
    for got, want in zip(bb.weights.to_list(), w_ref):
        assert abs(got - want) < 1e-3
    assert abs(bb.intercept - b_ref) < 1e-3
    assert bb.iterations_run <= fixed.iterations_run


def test_gradient_matches_finite_differences():
    from oracles import finite_difference_gradient

    rng = np.random.default_rng(17)
    X = rng.uniform(-2, 2, size=(20, 3))
    y = rng.uniform(-5, 5, size=20)
    fn = linear_loss_grad(X, y)

    def loss_only(w, b):
        return fn(np.array(w), b)[0]

    for _ in range(4):
        w = list(rng.uniform(-2, 2, size=3))
        b = float(rng.uniform(-2, 2))
        _, grad_w, grad_b = fn(np.array(w), b)
        fd_w, fd_b = finite_difference_gradient(loss_only, w, b, h=1e-6)
        for a, n_ in zip(grad_w, fd_w):
            assert abs(a - n_) / max(1.0, abs(n_)) < 1e-4
        assert abs(grad_b - fd_b) / max(1.0, abs(fd_b)) < 1e-4


def test_predictions_match_weights():
    X = matrix_from_rows([[1.0, 2.0], [3.0, 4.0]])
    y = Vector([5.0, 6.0])
    model = linreg_fit(X, y)
    preds = linreg_predict(model, X)
    for i in range(2):
        manual = model.intercept + sum(
            w * x for w, x in zip(model.weights.to_list(), X.row(i))
        )
        assert abs(preds[i] - manual) < 1e-12


def test_predict_empty_and_shape_mismatch():
    X = matrix_from_rows([[0.0], [1.0], [2.0]])
    model = linreg_fit(X, Vector([1.0, 2.0, 3.0]))
    assert linreg_predict(model, Matrix(0, 1, [])).len == 0
    with pytest.raises(ShapeError):
        linreg_predict(model, matrix_from_rows([[1.0, 2.0]]))


def test_fit_rejects_bad_shapes():
    X = matrix_from_rows([[1.0], [2.0]])
    with pytest.raises(ShapeError):
        linreg_fit(X, Vector([1.0]))
    with pytest.raises(ShapeError):
        linreg_fit(matrix_from_rows([[1.0]]), Vector([1.0]))


def test_fit_rejects_identical_rows():
    X = matrix_from_rows([[2.0, 3.0], [2.0, 3.0], [2.0, 3.0]])
    with pytest.raises(DegenerateDataError):
        linreg_fit(X, Vector([1.0, 2.0, 3.0]))


def test_constant_feature_gets_zero_weight():
    # A zero-variance column cannot carry signal; its weight must be 0 and
    # the rest of the fit must still match the oracle on the live columns.
    rng = np.random.default_rng(30)
    x_live = rng.uniform(-5, 5, size=40)
    X = np.column_stack([x_live, np.full(40, 7.0)])
    y = 3.0 * x_live - 2.0 + rng.normal(scale=0.1, size=40)
    model = linreg_fit(Matrix.from_numpy(X), Vector(y))
    assert model.weights[1] == 0.0
    w_ref, b_ref = solve_normal_equations([[v] for v in x_live], y.tolist())
    assert abs(model.weights[0] - w_ref[0]) < 1e-3
    # intercept absorbs the constant column in the closed form
    assert abs(model.intercept - b_ref) < 1e-2


def test_run_gd_stops_on_gradient_tolerance():
    X = np.array([[0.0], [1.0], [2.0], [3.0]])
    y = np.array([1.0, 3.0, 5.0, 7.0])
    w, b, losses, iters = run_gd(linear_loss_grad(X, y), 1, GdConfig(max_iters=50_000))
    assert iters < 50_000  # converged before the cap
    assert losses[-1] < 1e-6


def test_deterministic_fit():
    rng = np.random.default_rng(5)
    X = rng.normal(size=(30, 2))
    y = rng.normal(size=30)
    a = linreg_fit(Matrix.from_numpy(X), Vector(y))
    b = linreg_fit(Matrix.from_numpy(X), Vector(y))
    assert a.weights.to_numpy().tobytes() == b.weights.to_numpy().tobytes()
    assert a.intercept == b.intercept
