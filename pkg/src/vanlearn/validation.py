"""Size and schema gatekeeping that runs before data reaches the ML core.

The browser client enforces the same rules with the same violation codes;
the codes below are a stable contract shared by both sides. Reports are
plain data rather than exceptions so a UI can render every violation at
once.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .codec import Dataset
from .errors import ParamsError

DEFAULT_MAX_BYTES = 2_097_152  # 2 MiB
DEFAULT_MAX_ROWS = 10_000
DEFAULT_MAX_COLS = 100

ALGORITHMS = ("kmeans", "linreg", "logreg", "dtree")

V_BYTES = "V_BYTES"
V_ROWS = "V_ROWS"
V_COLS = "V_COLS"
V_NON_NUMERIC = "V_NON_NUMERIC"
V_TARGET_RANGE = "V_TARGET_RANGE"
V_LABEL_CARDINALITY = "V_LABEL_CARDINALITY"
V_TOO_FEW_ROWS = "V_TOO_FEW_ROWS"
V_TOO_FEW_COLS = "V_TOO_FEW_COLS"


@dataclass(frozen=True)
class ValidationRules:
    max_bytes: int = DEFAULT_MAX_BYTES
    max_rows: int = DEFAULT_MAX_ROWS
    max_cols: int = DEFAULT_MAX_COLS

    def __post_init__(self):
        if min(self.max_bytes, self.max_rows, self.max_cols) < 1:
            raise ParamsError("validation limits must be >= 1")


@dataclass(frozen=True)
class SchemaRequirement:
    """Which algorithm the data must fit; supervised regressions carry the
    user-selected target column, the decision tree always targets the last
    column."""

    algorithm: str
    target_column: int | None = None

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ParamsError(f"unknown algorithm {self.algorithm!r}")
        needs_target = self.algorithm in ("linreg", "logreg")
        if needs_target and self.target_column is None:
            raise ParamsError(f"{self.algorithm} requires a target column")
        if not needs_target and self.target_column is not None:
            raise ParamsError(f"{self.algorithm} takes no target column")


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    row: int | None = None
    col: int | None = None


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> list[str]:
        return [v.code for v in self.violations]


@dataclass
class _Collector:
    items: list[Violation] = field(default_factory=list)

    def add(self, code: str, message: str, row: int | None = None, col: int | None = None):
        self.items.append(Violation(code, message, row, col))

    def report(self) -> ValidationReport:
        return ValidationReport(tuple(self.items))


def validate_size(byte_len: int, rows: int, cols: int, rules: ValidationRules) -> ValidationReport:
    """Inclusive limits: a value equal to the cap passes."""
    out = _Collector()
    if byte_len > rules.max_bytes:
        out.add(V_BYTES, f"{byte_len} bytes exceeds limit of {rules.max_bytes}")
    if rows > rules.max_rows:
        out.add(V_ROWS, f"{rows} rows exceeds limit of {rules.max_rows}")
    if cols > rules.max_cols:
        out.add(V_COLS, f"{cols} columns exceeds limit of {rules.max_cols}")
    return out.report()


def _check_numeric(d: Dataset, col_indices: range | list[int], out: _Collector):
    for j in col_indices:
        for i, row in enumerate(d.rows):
            if not isinstance(row[j], float):
                out.add(
                    V_NON_NUMERIC,
                    f"column {d.columns[j]!r} has non-numeric value {row[j]!r}",
                    row=i,
                    col=j,
                )


def validate_schema(d: Dataset, req: SchemaRequirement) -> ValidationReport:
    """Check the dataset against what the chosen algorithm can consume."""
    out = _Collector()
    algo = req.algorithm

    if algo == "kmeans":
        if d.n_rows < 1:
            out.add(V_TOO_FEW_ROWS, "clustering needs at least 1 row")
        _check_numeric(d, range(d.n_cols), out)
        return out.report()

    if algo in ("linreg", "logreg"):
        if d.n_rows < 2:
            out.add(V_TOO_FEW_ROWS, f"{algo} needs at least 2 rows")
        target = req.target_column
        assert target is not None
        if not 0 <= target < d.n_cols:
            out.add(V_TARGET_RANGE, f"target column {target} out of range 0..{d.n_cols - 1}")
        # linreg predicts a number so its target must be numeric too;
        # logreg labels may be text, so its target is exempt from the scan
        if algo == "logreg" and 0 <= target < d.n_cols:
            _check_numeric(d, [j for j in range(d.n_cols) if j != target], out)
        else:
            _check_numeric(d, range(d.n_cols), out)
        if 0 <= target < d.n_cols and algo == "logreg":
            distinct = {row[target] for row in d.rows}
            if len(distinct) != 2:
                out.add(
                    V_LABEL_CARDINALITY,
                    f"target column must hold exactly 2 distinct values, found {len(distinct)}",
                    col=target,
                )
        return out.report()

    # dtree: last column is the output and may be text, the rest must be numeric
    if d.n_cols < 2:
        out.add(V_TOO_FEW_COLS, "decision tree needs at least 2 columns")
    if d.n_rows < 1:
        out.add(V_TOO_FEW_ROWS, "decision tree needs at least 1 row")
    if d.n_cols >= 2:
        _check_numeric(d, range(d.n_cols - 1), out)
    return out.report()
