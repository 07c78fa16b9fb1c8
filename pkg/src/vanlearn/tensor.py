"""Dense 1D/2D float64 containers and the arithmetic the ML core needs.

Values are immutable after construction and constructors reject NaN/Inf,
so the algorithms downstream never see dirty data. Accumulations run
left to right, which keeps results bit-reproducible across runs.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .errors import EmptyError, NonFiniteError, RaggedError, ShapeError


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


class Vector:
    """Immutable 1D tensor of finite 64-bit floats."""

    __slots__ = ("_array",)

    def __init__(self, values: Sequence[float] | np.ndarray):
        arr = np.array(values, dtype=np.float64, copy=True).reshape(-1)
        if arr.size and not np.isfinite(arr).all():
            raise NonFiniteError("vector values must be finite")
        self._array = _freeze(arr)

    @property
    def len(self) -> int:
        return int(self._array.size)

    def __len__(self) -> int:
        return self.len

    def __getitem__(self, i: int) -> float:
        return float(self._array[i])

    def __iter__(self):
        return iter(self._array.tolist())

    def to_numpy(self) -> np.ndarray:
        """Read-only float64 view, no copy."""
        return self._array

    def to_list(self) -> list[float]:
        return self._array.tolist()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Vector) and np.array_equal(self._array, other._array)

    def __repr__(self) -> str:
        return f"Vector({self._array.tolist()!r})"


class Matrix:
    """Immutable row-major 2D tensor of finite 64-bit floats."""

    __slots__ = ("_array",)

    def __init__(self, rows: int, cols: int, values: Sequence[float] | np.ndarray):
        if rows < 0 or cols < 0:
            raise ShapeError("matrix shape must be non-negative")
        arr = np.array(values, dtype=np.float64, copy=True).reshape(-1)
        if arr.size != rows * cols:
            raise ShapeError(f"expected {rows * cols} values for {rows}x{cols}, got {arr.size}")
        if arr.size and not np.isfinite(arr).all():
            raise NonFiniteError("matrix values must be finite")
        self._array = _freeze(np.ascontiguousarray(arr.reshape(rows, cols)))

    @property
    def rows(self) -> int:
        return int(self._array.shape[0])

    @property
    def cols(self) -> int:
        return int(self._array.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def at(self, i: int, j: int) -> float:
        return float(self._array[i, j])

    def row(self, i: int) -> list[float]:
        return self._array[i].tolist()

    def to_numpy(self) -> np.ndarray:
        """Read-only float64 view, no copy."""
        return self._array

    def to_lists(self) -> list[list[float]]:
        return self._array.tolist()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Matrix)
            and self.shape == other.shape
            and np.array_equal(self._array, other._array)
        )

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, {self._array.tolist()!r})"

    @staticmethod
    def from_numpy(arr: np.ndarray) -> "Matrix":
        if arr.ndim != 2:
            raise ShapeError("expected a 2D array")
        return Matrix(arr.shape[0], arr.shape[1], arr)


def matrix_from_rows(rows: Sequence[Sequence[float]]) -> Matrix:
    """Build a Matrix from equal-length row sequences; empty input gives (0, 0)."""
    rows = list(rows)
    if not rows:
        return Matrix(0, 0, [])
    width = len(rows[0])
    flat: list[float] = []
    for i, r in enumerate(rows):
        if len(r) != width:
            raise RaggedError(f"row {i} has {len(r)} values, expected {width}")
        flat.extend(float(v) for v in r)
    return Matrix(len(rows), width, flat)


def identity(n: int) -> Matrix:
    return Matrix.from_numpy(np.eye(n, dtype=np.float64))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """Standard matrix product with left-to-right accumulation over the inner index."""
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    a_rows = a.to_lists()
    b_rows = b.to_lists()
    n, m, p = a.rows, a.cols, b.cols
    out = [0.0] * (n * p)
    for i in range(n):
        ai = a_rows[i]
        base = i * p
        for j in range(p):
            acc = 0.0
            for k in range(m):
                acc += ai[k] * b_rows[k][j]
            out[base + j] = acc
    return Matrix(n, p, out)


def transpose(a: Matrix) -> Matrix:
    out = np.ascontiguousarray(a.to_numpy().T)
    return Matrix(a.cols, a.rows, out)


def column_means(a: Matrix) -> Vector:
    """Per-column mean, left-to-right accumulation. Requires at least one row."""
    if a.rows == 0:
        raise EmptyError("column_means requires at least one row")
    rows = a.to_lists()
    n = a.rows
    sums = [0.0] * a.cols
    for r in rows:
        for j, v in enumerate(r):
            sums[j] += v
    return Vector([s / n for s in sums])
