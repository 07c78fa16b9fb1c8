import numpy as np
import pytest

from vanlearn.errors import EmptyError, NonFiniteError, RaggedError, ShapeError
from vanlearn.tensor import (
    Matrix,
    Vector,
    column_means,
    identity,
    matmul,
    matrix_from_rows,
    transpose,
)


def test_matmul_hand_example():
    a = matrix_from_rows([[1.0, 2.0], [3.0, 4.0]])
    b = matrix_from_rows([[5.0], [6.0]])
    assert matmul(a, b).to_lists() == [[17.0], [39.0]]


def test_matmul_matches_numpy_on_random_matrices():
    rng = np.random.default_rng(42)
    for _ in range(25):
        n, m, p = rng.integers(1, 7, size=3)
        a = rng.normal(size=(n, m))
        b = rng.normal(size=(m, p))
        got = matmul(Matrix.from_numpy(a), Matrix.from_numpy(b)).to_numpy()
        assert np.allclose(got, a @ b, rtol=1e-12, atol=1e-12)


def test_matmul_exact_on_integer_matrices():
    # Small-integer products and sums are exactly representable, so the
    # loop accumulation and the library result must agree to the last bit.
    rng = np.random.default_rng(7)
    for _ in range(25):
        n, m, p = rng.integers(1, 6, size=3)
        a = rng.integers(-9, 10, size=(n, m)).astype(np.float64)
        b = rng.integers(-9, 10, size=(m, p)).astype(np.float64)
        got = matmul(Matrix.from_numpy(a), Matrix.from_numpy(b)).to_numpy()
        assert np.array_equal(got, a @ b)


def test_matmul_bit_reproducible():
    rng = np.random.default_rng(3)
    a = Matrix.from_numpy(rng.normal(size=(4, 5)))
    b = Matrix.from_numpy(rng.normal(size=(5, 3)))
    first = matmul(a, b).to_numpy().tobytes()
    second = matmul(a, b).to_numpy().tobytes()
    assert first == second


def test_matmul_identity_is_noop():
    a = matrix_from_rows([[1.5, -2.0, 3.25], [0.0, 4.0, 5.5]])
    assert matmul(a, identity(3)) == a


def test_matmul_shape_mismatch():
    a = matrix_from_rows([[1.0, 2.0]])
    with pytest.raises(ShapeError):
        matmul(a, a)


def test_constructors_reject_non_finite():
    with pytest.raises(NonFiniteError):
        Vector([1.0, float("nan")])
    with pytest.raises(NonFiniteError):
        Matrix(1, 2, [1.0, float("inf")])


def test_matrix_from_rows_ragged():
    with pytest.raises(RaggedError):
        matrix_from_rows([[1.0, 2.0], [3.0]])


def test_matrix_from_rows_empty_is_zero_by_zero():
    assert matrix_from_rows([]).shape == (0, 0)


def test_matrix_value_count_must_match_shape():
    with pytest.raises(ShapeError):
        Matrix(2, 2, [1.0, 2.0, 3.0])


def test_storage_is_read_only():
    m = matrix_from_rows([[1.0, 2.0]])
    arr = m.to_numpy()
    with pytest.raises(ValueError):
        arr[0, 0] = 99.0
    v = Vector([1.0])
    with pytest.raises(ValueError):
        v.to_numpy()[0] = 99.0


def test_accessors():
    m = matrix_from_rows([[1.0, 2.0], [3.0, 4.0]])
    assert m.at(1, 0) == 3.0
    assert m.row(1) == [3.0, 4.0]
    assert m.shape == (2, 2)
    v = Vector([5.0, 6.0])
    assert v.len == 2 and v[1] == 6.0 and list(v) == [5.0, 6.0]


def test_transpose_involution_and_values():
    m = matrix_from_rows([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])
    t = transpose(m)
    assert t.shape == (3, 2)
    assert t.to_lists() == [[1.0, 4.0], [2.0, 5.0], [3.0, 6.0]]
    assert transpose(t) == m


def test_column_means_hand_value():
    m = matrix_from_rows([[1.0, 10.0], [3.0, 20.0]])
    assert column_means(m) == Vector([2.0, 15.0])


def test_column_means_empty_matrix():
    with pytest.raises(EmptyError):
        column_means(Matrix(0, 3, []))


def test_column_means_matches_numpy():
    rng = np.random.default_rng(11)
    arr = rng.normal(size=(40, 6))
    got = column_means(Matrix.from_numpy(arr)).to_numpy()
    assert np.allclose(got, arr.mean(axis=0), rtol=1e-12, atol=1e-12)
