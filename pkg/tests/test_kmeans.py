import numpy as np
import pytest

from oracles import exhaustive_kmeans
from vanlearn.errors import ParamsError, ShapeError, TooFewRowsError
from vanlearn.ml.kmeans import KMeansConfig, kmeans_fit
from vanlearn.tensor import Matrix, matrix_from_rows


def fit(points, k, seed=0, **kw):
    return kmeans_fit(matrix_from_rows(points), KMeansConfig(k=k, seed=seed, **kw))


def test_two_far_pairs_hand_example():
    model = fit([[0.0, 0.0], [0.0, 1.0], [10.0, 10.0], [10.0, 11.0]], k=2)
    assert abs(model.inertia - 1.0) < 1e-12
    a = model.assignments
    assert a[0] == a[1] and a[2] == a[3] and a[0] != a[2]
    centroids = sorted(model.centroids.to_lists())
    assert centroids == [[0.0, 0.5], [10.0, 10.5]]


def test_k_equals_one_centroid_is_mean():
    model = fit([[1.0], [2.0], [6.0]], k=1)
    assert model.centroids.to_lists() == [[3.0]]
    assert abs(model.inertia - (4.0 + 1.0 + 9.0)) < 1e-12


def test_k_equals_n_gives_zero_inertia():
    model = fit([[0.0], [5.0], [9.0]], k=3)
    assert model.inertia == 0.0
    assert sorted(model.assignments) == [0, 1, 2]


def test_too_few_rows_and_bad_shapes():
    with pytest.raises(TooFewRowsError):
        fit([[1.0], [2.0]], k=3)
    with pytest.raises(ShapeError):
        kmeans_fit(Matrix(3, 0, []), KMeansConfig(k=2))
    with pytest.raises(ParamsError):
        KMeansConfig(k=0)


def test_deterministic_for_fixed_seed():
    rng = np.random.default_rng(1)
    points = rng.normal(size=(30, 3)).tolist()
    a = fit(points, k=4, seed=9)
    b = fit(points, k=4, seed=9)
    assert a.centroids.to_numpy().tobytes() == b.centroids.to_numpy().tobytes()
    assert a.assignments == b.assignments
    assert a.inertia_history == b.inertia_history


def test_inertia_monotone_on_random_instances():
    rng = np.random.default_rng(12)
    for trial in range(30):
        n = int(rng.integers(5, 40))
        d = int(rng.integers(1, 4))
        k = int(rng.integers(1, min(n, 6)))
        points = rng.normal(scale=rng.uniform(0.5, 20), size=(n, d)).tolist()
        model = fit(points, k=k, seed=trial)
        hist = model.inertia_history
        assert all(hist[i + 1] <= hist[i] + 1e-9 for i in range(len(hist) - 1))
        assert model.inertia == hist[-1]


def test_matches_exhaustive_optimum_small_instances():
    # Unit-scale version of the acceptance sweep: best of 10 seeds against
    # the oracle that scores every possible 2-partition. Restarted Lloyd
    # carries no global guarantee in general; the pinned instance seed keeps
    # every drawn instance within reach of the 10-restart schedule (a wrong
    # distance/update/seeding would still miss by a wide margin).
    rng = np.random.default_rng(0)
    for _ in range(15):
        n = int(rng.integers(2, 9))
        d = int(rng.integers(1, 4))
        points = rng.normal(scale=5.0, size=(n, d)).tolist()
        best_oracle, _ = exhaustive_kmeans(points, 2)
        best_fit = min(fit(points, k=2, seed=s).inertia for s in range(10))
        assert abs(best_fit - best_oracle) < 1e-9


def test_all_identical_points_terminates():
    # Forces the empty-cluster repair path: every point coincides, so one
    # cluster always ends up starving.
    model = fit([[2.0, 2.0]] * 5, k=2)
    assert model.inertia == 0.0
    assert set(model.assignments) <= {0, 1}


def test_empty_cluster_reassignment_keeps_k_clusters():
    # Two tight groups and one repeated coordinate; with k=3 some seed will
    # start two centroids in the same spot and need the repair step.
    points = [[0.0], [0.1], [0.2], [50.0], [50.1], [50.2]]
    for seed in range(8):
        model = fit(points, k=3, seed=seed)
        assert len(set(model.assignments)) == 3


def test_assignments_are_nearest_centroid():
    rng = np.random.default_rng(8)
    points = rng.normal(size=(25, 2)).tolist()
    model = fit(points, k=3, seed=4)
    X = np.array(points)
    C = np.array(model.centroids.to_lists())
    d2 = ((X[:, None, :] - C[None, :, :]) ** 2).sum(axis=2)
    nearest = d2.argmin(axis=1)
    got = np.array(model.assignments)
    # ties can pick either index; verify distances, not indices
    assert np.allclose(d2[np.arange(len(points)), got], d2[np.arange(len(points)), nearest])


def test_iterations_bounded_by_config():
    rng = np.random.default_rng(3)
    points = rng.normal(size=(50, 2)).tolist()
    model = fit(points, k=5, seed=1, max_iters=3)
    assert model.iterations_run <= 3
