"""Materialize the bundled benchmark datasets under src/vanlearn/data/.

Run from the repo root:  python3 scripts/make_bundled_datasets.py

iris.csv is the canonical 150-flower table (via scikit-learn's packaged
copy, so no network is needed). seeds.csv and haberman.csv are *seeded
facsimiles*: deterministic synthetic tables matching the published shape,
column meanings, and class balance of the UCI originals (210 rows, 7
features + 3 balanced varieties; 306 rows, 3 features + a 225/81 survival
split). `vanlearn-bench fetch` replaces them with the real files when the
network allows; the facsimiles keep the benchmark runnable offline and are
labelled as such in the README.
"""

import os
import sys

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from vanlearn.codec import dataset_of, export  # noqa: E402

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "vanlearn", "data")

SEEDS_COLUMNS = (
    "area",
    "perimeter",
    "compactness",
    "kernel_length",
    "kernel_width",
    "asymmetry",
    "groove_length",
    "variety",
)

# Per-variety feature means/sds shaped after the published wheat-kernel
# measurements (Kama, Rosa, Canadian -> variety codes 1, 2, 3).
SEEDS_PROFILE = [
    ([14.33, 14.29, 0.880, 5.51, 3.24, 2.67, 5.09], [1.21, 0.57, 0.016, 0.23, 0.18, 1.1, 0.26]),
    ([18.33, 16.14, 0.884, 6.15, 3.68, 3.64, 6.02], [1.44, 0.62, 0.016, 0.27, 0.19, 1.2, 0.25]),
    ([11.87, 13.25, 0.849, 5.23, 2.85, 4.79, 5.12], [0.72, 0.34, 0.022, 0.14, 0.15, 1.3, 0.16]),
]


def make_seeds(seed: int = 20260815) -> list[tuple]:
    rng = np.random.default_rng(seed)
    rows = []
    for variety, (means, sds) in enumerate(SEEDS_PROFILE, start=1):
        for _ in range(70):
            feats = rng.normal(means, sds)
            feats[2] = min(max(feats[2], 0.80), 0.92)  # compactness is a ratio
            rows.append(tuple(round(float(v), 4) for v in feats) + (float(variety),))
    return rows


def make_haberman(seed: int = 20260815) -> list[tuple]:
    """306 cases: age, year of operation (1958-69), positive axillary nodes,
    survival status (1 = survived 5+ years, 2 = died) with the published
    225/81 split; node count drives the outcome so a classifier has signal."""
    rng = np.random.default_rng(seed)
    n = 306
    age = np.clip(np.round(rng.normal(52.5, 10.8, n)), 30, 83)
    year = rng.integers(58, 70, n)
    nodes = np.clip(np.round(rng.exponential(4.0, n)), 0, 52)
    risk = 0.09 * nodes + 0.02 * (age - 52) + rng.normal(0, 0.35, n)
    died = np.argsort(-risk)[:81]
    survival = np.ones(n)
    survival[died] = 2.0
    return [
        (float(age[i]), float(year[i]), float(nodes[i]), float(survival[i]))
        for i in range(n)
    ]


def make_iris() -> list[tuple]:
    from sklearn.datasets import load_iris

    iris = load_iris()
    return [
        tuple(float(v) for v in x) + (str(iris.target_names[t]),)
        for x, t in zip(iris.data, iris.target)
    ]


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    tables = {
        "seeds.csv": dataset_of(SEEDS_COLUMNS, make_seeds()),
        "haberman.csv": dataset_of(("age", "op_year", "axillary_nodes", "survival"), make_haberman()),
        "iris.csv": dataset_of(
            ("sepal_length", "sepal_width", "petal_length", "petal_width", "species"),
            make_iris(),
        ),
    }
    for name, d in tables.items():
        path = os.path.join(OUT_DIR, name)
        with open(path, "wb") as fh:
            fh.write(export(d, "csv"))
        print(f"wrote {path}: {d.n_rows} rows x {d.n_cols} cols")


if __name__ == "__main__":
    main()
