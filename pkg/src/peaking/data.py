"""Synthetic two-Gaussian problems, seeded sampling and CSV ingestion."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .exceptions import DomainError, IngestionError

__all__ = [
    "GaussianProblem",
    "LabeledDataset",
    "UnlabeledDataset",
    "rng_stream",
    "sample_labeled",
    "sample_unlabeled",
    "load_csv_dataset",
    "bundled_dataset_path",
    "BUNDLED_DATASETS",
    "bootstrap_sample",
]

BUNDLED_DATASETS = {"spect": "spect.csv", "spectf": "spectf.csv"}


@dataclass(frozen=True)
class GaussianProblem:
    """Two unit-covariance Gaussian classes with equal priors.

    When the means are omitted they are placed symmetrically about the
    origin along the all-ones direction, ``mu1 = -delta / (2 sqrt(p)) * 1``
    and ``mu2 = -mu1``.
    """

    p: int
    delta: float
    mu1: np.ndarray = field(default=None, repr=False)
    mu2: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if self.p < 1:
            raise DomainError(f"p must be positive, got {self.p}")
        if not self.delta > 0:
            raise DomainError(f"delta must be positive, got {self.delta}")
        if (self.mu1 is None) != (self.mu2 is None):
            raise DomainError("give both means or neither")
        if self.mu1 is None:
            half = self.delta / (2.0 * math.sqrt(self.p)) * np.ones(self.p)
            object.__setattr__(self, "mu1", -half)
            object.__setattr__(self, "mu2", half.copy())
        else:
            mu1 = np.asarray(self.mu1, dtype=float)
            mu2 = np.asarray(self.mu2, dtype=float)
            if mu1.shape != (self.p,) or mu2.shape != (self.p,):
                raise DomainError("means must have length p")
            if abs(np.linalg.norm(mu1 - mu2) - self.delta) > 1e-9:
                raise DomainError("distance between means differs from delta")
            object.__setattr__(self, "mu1", mu1)
            object.__setattr__(self, "mu2", mu2)

    @property
    def is_symmetric_ones(self):
        """True for the default construction along the all-ones direction."""
        half = self.delta / (2.0 * math.sqrt(self.p))
        return bool(np.allclose(self.mu2, half) and np.allclose(self.mu1, -half))


@dataclass(frozen=True)
class LabeledDataset:
    """Design matrix ``X`` (L x p) with labels ``y`` in {1, 2}."""

    X: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        y = np.asarray(self.y, dtype=int)
        if X.ndim != 2:
            raise DomainError("X must be 2-D")
        if y.shape != (X.shape[0],):
            raise DomainError("y must have one label per row of X")
        if not np.all(np.isin(y, (1, 2))):
            raise DomainError("labels must be 1 or 2")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)

    @property
    def L(self):
        return self.X.shape[0]

    @property
    def p(self):
        return self.X.shape[1]

    def head(self, n):
        """First ``n`` rows; sampling keeps every even-length prefix balanced."""
        return LabeledDataset(self.X[:n], self.y[:n])

    def unlabel(self):
        return UnlabeledDataset(self.X)


@dataclass(frozen=True)
class UnlabeledDataset:
    Xu: np.ndarray

    def __post_init__(self):
        Xu = np.asarray(self.Xu, dtype=float)
        if Xu.ndim != 2:
            raise DomainError("Xu must be 2-D")
        object.__setattr__(self, "Xu", Xu)

    @property
    def U(self):
        return self.Xu.shape[0]


def rng_stream(master, *key):
    """Generator for the stream identified by ``(master, *key)``.

    Sub-seeds come from numpy's ``SeedSequence`` hash of the master seed
    and the spawn key, e.g. ``rng_stream(42, r)`` for repetition ``r``.
    Identical arguments give bit-identical draws.
    """
    if master < 0 or master >= 2**64:
        raise DomainError("master seed must be a 64-bit unsigned integer")
    seq = np.random.SeedSequence(entropy=int(master), spawn_key=tuple(int(k) for k in key))
    return np.random.default_rng(seq)


def sample_labeled(problem, n_per_class, rng):
    """Draw ``n_per_class`` objects from each class.

    Rows alternate between class 1 and class 2, so any even-length prefix
    is itself an exactly balanced sample. This is what lets experiments
    grow training sets by taking prefixes.
    """
    if n_per_class < 1:
        raise DomainError("n_per_class must be at least 1")
    p = problem.p
    noise = rng.standard_normal((2 * n_per_class, p))
    y = np.tile([1, 2], n_per_class)
    means = np.where((y == 1)[:, None], problem.mu1, problem.mu2)
    return LabeledDataset(means + noise, y)


def sample_unlabeled(problem, n, rng):
    """Draw ``n`` objects from the equal-prior mixture; classes discarded."""
    if n < 1:
        raise DomainError("n must be at least 1")
    first = rng.random(n) < 0.5
    noise = rng.standard_normal((n, problem.p))
    means = np.where(first[:, None], problem.mu1, problem.mu2)
    return UnlabeledDataset(means + noise)


def bundled_dataset_path(name):
    """Filesystem path of a dataset shipped with the package."""
    try:
        fname = BUNDLED_DATASETS[name.lower()]
    except KeyError:
        raise IngestionError(
            f"unknown bundled dataset {name!r}; choose from {sorted(BUNDLED_DATASETS)}"
        ) from None
    return Path(str(resources.files("peaking") / "datasets" / fname))


def load_csv_dataset(path, label_column=0):
    """Read a binary labeled dataset from a headed, comma-separated file.

    Parameters
    ----------
    path : str or Path
        CSV file with a header row. Every non-label cell must parse as a
        real number; empty cells are an error.
    label_column : str or int
        Header name or zero-based index of the label column.

    Returns
    -------
    LabeledDataset
        The two label values, compared as strings, are mapped to 1 and 2
        in ascending lexicographic order.
    """
    path = Path(path)
    if not path.is_file():
        raise IngestionError(f"no such file: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise IngestionError(f"{path} is empty")
    header = [h.strip() for h in rows[0]]
    body = [r for r in rows[1:] if any(cell.strip() for cell in r)]
    if not body:
        raise IngestionError(f"{path} has a header but no data rows")

    if isinstance(label_column, str) and label_column in header:
        col = header.index(label_column)
    else:
        try:
            col = int(label_column)
        except (TypeError, ValueError):
            raise IngestionError(f"label column {label_column!r} not in header") from None
        if not 0 <= col < len(header):
            raise IngestionError(f"label column index {col} out of range")

    labels = []
    features = []
    for lineno, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise IngestionError(
                f"{path}:{lineno}: expected {len(header)} cells, found {len(row)}"
            )
        labels.append(row[col].strip())
        values = []
        for j, cell in enumerate(row):
            if j == col:
                continue
            cell = cell.strip()
            if cell == "":
                raise IngestionError(f"{path}:{lineno}: missing value in column {header[j]!r}")
            try:
                values.append(float(cell))
            except ValueError:
                raise IngestionError(
                    f"{path}:{lineno}: non-numeric value {cell!r} in column {header[j]!r}"
                ) from None
        features.append(values)

    distinct = sorted(set(labels))
    if len(distinct) != 2:
        raise IngestionError(
            f"label column must hold exactly 2 distinct values, found {len(distinct)}: "
            f"{distinct[:5]}"
        )
    mapping = {distinct[0]: 1, distinct[1]: 2}
    X = np.array(features, dtype=float).reshape(len(body), len(header) - 1)
    if not np.all(np.isfinite(X)):
        raise IngestionError(f"{path}: non-finite feature values")
    return LabeledDataset(X, np.array([mapping[v] for v in labels]))


def bootstrap_sample(data, n, rng):
    """Draw ``n`` rows uniformly with replacement, labels carried along."""
    if data.L == 0:
        raise DomainError("cannot resample an empty dataset")
    if n < 1:
        raise DomainError("n must be at least 1")
    idx = rng.integers(0, data.L, size=n)
    return LabeledDataset(data.X[idx], data.y[idx])
