"""Benchmark harness: fetch/generate datasets, run the four algorithms,
and print the six-column report (module, dataset, training and test times,
parameter count, click count).

Parameter counts come from each algorithm's request arity; click counts are
the UI contract constants (a CLI cannot click) and are pinned by the
frontend's own tests.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import sys
import time
import urllib.error
import urllib.request
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .codec import Dataset, dataset_of, export, parse_csv
from .errors import ArgumentError, ChecksumError, NetworkError, VanlearnError
from .ml.gd import GdConfig
from .ml.kmeans import KMeansConfig, kmeans_fit
from .ml.linear import linreg_fit, linreg_predict
from .ml.logistic import logreg_fit, logreg_predict
from .ml.tree import dtree_fit, dtree_predict
from .tensor import Matrix, Vector
from .validation import SchemaRequirement, validate_schema

PARAMS = {"kmeans": 1, "linreg": 1, "logreg": 1, "dtree": 0}
CLICKS = {"kmeans": 1, "linreg": 5, "logreg": 5, "dtree": 5}
MODULE_NAMES = {
    "kmeans": "k-means",
    "logreg": "Logistic regression",
    "linreg": "Linear Regression",
    "dtree": "Decision Tree",
}

# Raw UCI files (headerless; headers below are added on fetch).
SOURCES = {
    "seeds": (
        "https://archive.ics.uci.edu/ml/machine-learning-databases/00236/seeds_dataset.txt",
        ("area", "perimeter", "compactness", "kernel_length", "kernel_width",
         "asymmetry", "groove_length", "variety"),
        (210, 8),
    ),
    "haberman": (
        "https://archive.ics.uci.edu/ml/machine-learning-databases/haberman/haberman.data",
        ("age", "op_year", "axillary_nodes", "survival"),
        (306, 4),
    ),
    "iris": (
        "https://archive.ics.uci.edu/ml/machine-learning-databases/iris/iris.data",
        ("sepal_length", "sepal_width", "petal_length", "petal_width", "species"),
        (150, 5),
    ),
}


@dataclass(frozen=True)
class BenchRow:
    module_name: str
    dataset_name: str
    training_secs: float
    test_secs: float | None
    parameter_count: int
    click_count: int


# ---------------------------------------------------------------------------
# data acquisition


def generate_linear_data(n: int, noise_sd: float, seed: int) -> Dataset:
    """x uniform over [0, 10), y = 2x + 1 plus Gaussian noise."""
    if n < 2:
        raise ArgumentError("n must be >= 2")
    if noise_sd < 0:
        raise ArgumentError("noise_sd must be >= 0")
    rng = np.random.default_rng(seed)
    x = rng.uniform(0.0, 10.0, n)
    y = 2.0 * x + 1.0 + rng.normal(0.0, noise_sd, n) if noise_sd > 0 else 2.0 * x + 1.0
    return dataset_of(("x", "y"), [(float(a), float(b)) for a, b in zip(x, y)])


def _normalize_raw(name: str, raw: str) -> Dataset:
    """Raw UCI files are headerless and (for seeds) whitespace-separated;
    rebuild them as a headered CSV table."""
    _, columns, (want_rows, want_cols) = SOURCES[name]
    rows = []
    for line in raw.splitlines():
        line = line.strip()
        if not line:
            continue
        parts = line.split() if name == "seeds" else line.split(",")
        if len(parts) != want_cols:
            raise ChecksumError(f"{name}: expected {want_cols} fields, got {len(parts)}")
        cells = []
        for p in parts:
            try:
                cells.append(float(p))
            except ValueError:
                cells.append(p)
        rows.append(tuple(cells))
    d = dataset_of(columns, rows)
    if d.n_rows != want_rows:
        raise ChecksumError(f"{name}: expected {want_rows} rows, got {d.n_rows}")
    return d


def fetch_datasets(out_dir: str, offline: bool = False) -> dict[str, Path]:
    """Write seeds/haberman/iris CSVs under out_dir. Online mode downloads
    the UCI originals; --offline copies the bundled files. Refetching over
    an existing file verifies the checksum matches instead of overwriting."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: dict[str, Path] = {}
    for name, (url, _, shape) in SOURCES.items():
        target = out / f"{name}.csv"
        if offline:
            data = resources.files("vanlearn").joinpath(f"data/{name}.csv").read_bytes()
        else:
            try:
                with urllib.request.urlopen(url, timeout=30) as resp:
                    raw = resp.read().decode("utf-8")
            except (urllib.error.URLError, OSError, TimeoutError) as exc:
                raise NetworkError(
                    f"could not download {name} from {url} ({exc}); "
                    "rerun with --offline to use the bundled copies"
                ) from None
            data = export(_normalize_raw(name, raw), "csv")
        d = parse_csv(data)
        if (d.n_rows, d.n_cols) != shape:
            raise ChecksumError(f"{name}: shape {(d.n_rows, d.n_cols)} != expected {shape}")
        if target.exists():
            old = hashlib.sha256(target.read_bytes()).hexdigest()
            new = hashlib.sha256(data).hexdigest()
            if old != new:
                raise ChecksumError(
                    f"{name}: existing {target} has checksum {old[:12]}…, "
                    f"fetched copy has {new[:12]}…; delete the file to replace it"
                )
        else:
            target.write_bytes(data)
        written[name] = target
    return written


def _load_dataset(name_or_path: str, data_dir: str) -> tuple[str, Dataset]:
    """A bare name resolves to <data_dir>/<name>.csv, falling back to the
    bundled copy; anything with a path separator or .csv suffix is a file."""
    p = Path(name_or_path)
    if p.suffix == ".csv" or p.exists():
        if not p.exists():
            raise ArgumentError(f"no such file {name_or_path!r}")
        return (p.stem, parse_csv(p.read_bytes()))
    candidate = Path(data_dir) / f"{name_or_path}.csv"
    if candidate.exists():
        return (name_or_path, parse_csv(candidate.read_bytes()))
    if name_or_path in SOURCES:
        data = resources.files("vanlearn").joinpath(f"data/{name_or_path}.csv").read_bytes()
        return (name_or_path, parse_csv(data))
    raise ArgumentError(f"no dataset named {name_or_path!r} (looked in {data_dir})")


# ---------------------------------------------------------------------------
# timed runs


def _features(d: Dataset, skip: int | None = None) -> Matrix:
    cols = [j for j in range(d.n_cols) if j != skip]
    values = [float(row[j]) for row in d.rows for j in cols]
    return Matrix(d.n_rows, len(cols), values)


def run_benchmark(
    algorithm: str,
    dataset_name: str,
    d: Dataset,
    k: int = 3,
    target: int | None = None,
) -> BenchRow:
    """Validate, fit, and (for the supervised algorithms) predict back over
    the training rows, timing only the fit/predict calls."""
    if algorithm not in PARAMS:
        raise ArgumentError(f"unknown algorithm {algorithm!r}")
    if algorithm in ("linreg", "logreg") and target is None:
        target = d.n_cols - 1
    report = validate_schema(d, SchemaRequirement(algorithm, target))
    if not report.ok:
        lines = "; ".join(f"{v.code}: {v.message}" for v in report.violations)
        raise ArgumentError(f"{dataset_name} is not valid for {algorithm}: {lines}")

    test_secs: float | None = None
    if algorithm == "kmeans":
        X = _features(d)
        t0 = time.perf_counter()
        kmeans_fit(X, KMeansConfig(k=k))
        train_secs = time.perf_counter() - t0
    elif algorithm == "linreg":
        X = _features(d, skip=target)
        y = Vector([float(row[target]) for row in d.rows])
        t0 = time.perf_counter()
        model = linreg_fit(X, y, GdConfig())
        train_secs = time.perf_counter() - t0
        t0 = time.perf_counter()
        linreg_predict(model, X)
        test_secs = time.perf_counter() - t0
    elif algorithm == "logreg":
        X = _features(d, skip=target)
        labels = [row[target] for row in d.rows]
        t0 = time.perf_counter()
        model = logreg_fit(X, labels, GdConfig())
        train_secs = time.perf_counter() - t0
        t0 = time.perf_counter()
        logreg_predict(model, X)
        test_secs = time.perf_counter() - t0
    else:
        t0 = time.perf_counter()
        model = dtree_fit(d)
        train_secs = time.perf_counter() - t0
        X = _features(d, skip=d.n_cols - 1)
        t0 = time.perf_counter()
        dtree_predict(model, X)
        test_secs = time.perf_counter() - t0

    return BenchRow(
        MODULE_NAMES[algorithm],
        dataset_name,
        train_secs,
        test_secs,
        PARAMS[algorithm],
        CLICKS[algorithm],
    )


def full_report(data_dir: str, seed: int = 7) -> list[BenchRow]:
    """The four-row table: k-means/Seeds, logistic/Haberman,
    linear/self-generated, tree/Iris."""
    _, seeds = _load_dataset("seeds", data_dir)
    _, haberman = _load_dataset("haberman", data_dir)
    _, iris = _load_dataset("iris", data_dir)
    generated = generate_linear_data(1000, 0.5, seed)
    return [
        run_benchmark("kmeans", "Seeds", seeds, k=3),
        run_benchmark("logreg", "Haberman", haberman),
        run_benchmark("linreg", "Self-generated", generated),
        run_benchmark("dtree", "Iris", iris),
    ]


# ---------------------------------------------------------------------------
# report formatting


def _fmt_secs(value: float | None) -> str:
    return "/" if value is None else f"{value:.3f}"


def format_table(rows: list[BenchRow]) -> str:
    header = ("Module Name", "Dataset", "Training (sec)", "Test (sec)", "Parameters", "Clicks")
    table = [header] + [
        (
            r.module_name,
            r.dataset_name,
            _fmt_secs(r.training_secs),
            _fmt_secs(r.test_secs),
            str(r.parameter_count),
            str(r.click_count),
        )
        for r in rows
    ]
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    out = io.StringIO()
    for row in table:
        out.write("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
        out.write("\n")
    return out.getvalue()


def rows_to_csv(rows: list[BenchRow]) -> str:
    lines = ["module_name,dataset,training_secs,test_secs,parameters,clicks"]
    for r in rows:
        test = "" if r.test_secs is None else f"{r.test_secs:.6f}"
        lines.append(
            f"{r.module_name},{r.dataset_name},{r.training_secs:.6f},{test},"
            f"{r.parameter_count},{r.click_count}"
        )
    return "\n".join(lines) + "\n"


def _emit(rows: list[BenchRow], csv_path: str | None):
    sys.stdout.write(format_table(rows))
    if csv_path:
        Path(csv_path).write_text(rows_to_csv(rows))


# ---------------------------------------------------------------------------
# CLI


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="vanlearn-bench", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_fetch = sub.add_parser("fetch", help="download the benchmark datasets")
    p_fetch.add_argument("--out", default="bench_data")
    p_fetch.add_argument("--offline", action="store_true",
                         help="copy the bundled dataset files instead of downloading")

    p_gen = sub.add_parser("generate", help="write a self-generated linear dataset")
    p_gen.add_argument("--out", default="bench_data/linear.csv")
    p_gen.add_argument("--n", type=int, default=1000)
    p_gen.add_argument("--noise-sd", type=float, default=0.5)
    p_gen.add_argument("--seed", type=int, default=7)

    p_run = sub.add_parser("run", help="run one algorithm over one dataset")
    p_run.add_argument("--dataset", required=True, help="name (seeds/haberman/iris) or CSV path")
    p_run.add_argument("--algo", required=True, choices=sorted(PARAMS))
    p_run.add_argument("--k", type=int, default=3)
    p_run.add_argument("--target", type=int, default=None)
    p_run.add_argument("--data-dir", default="bench_data")
    p_run.add_argument("--csv", default=None, help="also write the row as CSV")

    p_rep = sub.add_parser("report", help="run all four benchmark rows")
    p_rep.add_argument("--data-dir", default="bench_data")
    p_rep.add_argument("--seed", type=int, default=7)
    p_rep.add_argument("--csv", default=None)

    args = parser.parse_args(argv)
    try:
        if args.command == "fetch":
            for name, path in fetch_datasets(args.out, args.offline).items():
                print(f"{name}: {path}")
        elif args.command == "generate":
            d = generate_linear_data(args.n, args.noise_sd, args.seed)
            Path(args.out).parent.mkdir(parents=True, exist_ok=True)
            Path(args.out).write_bytes(export(d, "csv"))
            print(f"wrote {args.out}: {d.n_rows} rows")
        elif args.command == "run":
            name, d = _load_dataset(args.dataset, args.data_dir)
            row = run_benchmark(args.algo, name, d, k=args.k, target=args.target)
            _emit([row], args.csv)
        else:
            _emit(full_report(args.data_dir, args.seed), args.csv)
    except VanlearnError as exc:
        print(f"error [{exc.code}]: {exc.message}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
