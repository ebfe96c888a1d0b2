"""Monte Carlo learning-curve experiments.

Every experiment draws one nested pool of objects per repetition and grows
the training set by taking prefixes of it, so curves within a repetition
never redraw data. Repetition ``r`` uses the random stream
``rng_stream(seed, r, ...)`` and repetitions are reduced in index order, so
results do not depend on ``n_jobs``.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from joblib import Parallel, delayed

from .approximation import GammaSpec, learning_curve_approx
from .classifiers import (
    fit_fixed_rank,
    fit_infinite_unlabeled,
    fit_ls_semisupervised,
    fit_ls_supervised,
)
from .data import (
    GaussianProblem,
    LabeledDataset,
    UnlabeledDataset,
    bootstrap_sample,
    rng_stream,
    sample_labeled,
)
from .evaluation import ErrorEstimate, analytic_error, empirical_error, summarize
from .exceptions import DegenerateLabelsError, DomainError
from .numerics import pca_fit, pca_transform

__all__ = [
    "CurvePoint",
    "LearningCurve",
    "config_digest",
    "run_synthetic_curves",
    "run_contributions",
    "run_infinite_unlabeled",
    "run_benchmark",
    "run_approximation",
    "benchmark_max_extra",
    "MAX_LABEL_REDRAWS",
]

logger = logging.getLogger(__name__)

MAX_LABEL_REDRAWS = 100


@dataclass(frozen=True)
class CurvePoint:
    curve_id: str
    n_labeled: int
    n_unlabeled: int
    error: ErrorEstimate
    regime: str = ""

    @property
    def n_total(self):
        return self.n_labeled + self.n_unlabeled


@dataclass(frozen=True)
class LearningCurve:
    """One curve; ``per_repetition[r, j]`` is the error of repetition ``r``
    at ``points[j]``."""

    curve_id: str
    points: tuple
    config_digest: str
    per_repetition: np.ndarray = field(repr=False, compare=False)

    @property
    def mean_errors(self):
        return np.array([pt.error.mean_error for pt in self.points])

    @property
    def sizes(self):
        return np.array([pt.n_total for pt in self.points])


def config_digest(experiment, **params):
    """Canonical one-line JSON of an experiment's parameters."""

    def _plain(v):
        if isinstance(v, np.generic):
            return v.item()
        if isinstance(v, (list, tuple, np.ndarray)):
            return [_plain(x) for x in v]
        return v

    payload = {"experiment": experiment}
    payload.update({k: _plain(v) for k, v in params.items()})
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _map_repetitions(func, repetitions, n_jobs):
    if n_jobs == 1:
        return [func(r) for r in range(repetitions)]
    return Parallel(n_jobs=n_jobs)(delayed(func)(r) for r in range(repetitions))


def _make_curve(curve_id, sizes, errors, digest):
    """``sizes`` is a list of (n_labeled, n_unlabeled); errors is R x len(sizes)."""
    errors = np.asarray(errors, dtype=float)
    points = tuple(
        CurvePoint(curve_id, int(nl), int(nu), summarize(errors[:, j]))
        for j, (nl, nu) in enumerate(sizes)
    )
    return LearningCurve(curve_id, points, digest, errors)


def _check_repetitions(repetitions):
    if repetitions < 1:
        raise DomainError("repetitions must be at least 1")


def _problem_params(problem):
    params = {"p": problem.p, "delta": float(problem.delta)}
    if not problem.is_symmetric_ones:
        params["mu1"] = problem.mu1.tolist()
        params["mu2"] = problem.mu2.tolist()
    return params


def run_synthetic_curves(
    problem,
    n_labeled_per_class=10,
    max_total=150,
    step=2,
    repetitions=500,
    seed=0,
    rel_tol=None,
    n_jobs=1,
):
    """Supervised, semi-supervised and base curves on a Gaussian problem.

    The grid runs over total training-set sizes ``n = 2 * n_labeled_per_class,
    ... , max_total`` in steps of ``step`` (even, so every supervised set is
    balanced). At each ``n``:

    * ``supervised`` fits least squares on the first ``n`` objects, all labeled;
    * ``semi-supervised`` keeps the first ``2 * n_labeled_per_class`` labels and
      passes the remaining ``n - 2 * n_labeled_per_class`` objects unlabeled;
    * ``base`` ignores the extra objects, giving a horizontal line. Its
      points record the extra objects as ``n_unlabeled`` purely as x-position.

    Errors are exact (:func:`analytic_error`).

    Returns
    -------
    list of LearningCurve
    """
    _check_repetitions(repetitions)
    if n_labeled_per_class < 1:
        raise DomainError("n_labeled_per_class must be at least 1")
    if step < 2 or step % 2:
        raise DomainError("step must be a positive even number")
    n0 = 2 * n_labeled_per_class
    if max_total < n0:
        raise DomainError("max_total must be at least 2 * n_labeled_per_class")
    grid = list(range(n0, max_total + 1, step))
    pool_per_class = math.ceil(grid[-1] / 2)
    digest = config_digest(
        "curve",
        **_problem_params(problem),
        n_labeled_per_class=n_labeled_per_class,
        max_total=max_total,
        step=step,
        repetitions=repetitions,
        seed=seed,
        rel_tol=rel_tol,
    )

    def one(r):
        pool = sample_labeled(problem, pool_per_class, rng_stream(seed, r))
        labeled = pool.head(n0)
        base = analytic_error(fit_ls_supervised(labeled, rel_tol), problem)
        sup = np.empty(len(grid))
        semi = np.empty(len(grid))
        for j, n in enumerate(grid):
            sup[j] = analytic_error(fit_ls_supervised(pool.head(n), rel_tol), problem)
            extra = UnlabeledDataset(pool.X[n0:n])
            semi[j] = analytic_error(fit_ls_semisupervised(labeled, extra, rel_tol), problem)
        return sup, semi, np.full(len(grid), base)

    results = _map_repetitions(one, repetitions, n_jobs)
    sup, semi, base = (np.array(x) for x in zip(*results))
    return [
        _make_curve("supervised", [(n, 0) for n in grid], sup, digest),
        _make_curve("semi-supervised", [(n0, n - n0) for n in grid], semi, digest),
        _make_curve("base", [(n0, n - n0) for n in grid], base, digest),
    ]


def run_contributions(problem, n_grid, repetitions=500, seed=0, rel_tol=None, n_jobs=1):
    """Decompose the effect of adding two objects (one per class) at each ``n``.

    With ``e_sup(k)`` the supervised error on the first ``k`` objects and
    ``e_semi`` the error when the two extra objects are used unlabeled:

    * ``covariance`` = ``e_semi - e_sup(n)``
    * ``labels``     = ``-(e_semi - e_sup(n + 2))``
    * ``total``      = ``e_sup(n + 2) - e_sup(n)``
    * ``fixed-rank`` = error of least squares on ``n + 2`` objects using only
      the leading ``min(n, p + 1)`` Gram eigendirections, minus ``e_sup(n)``

    ``covariance + labels == total`` for every repetition.
    """
    _check_repetitions(repetitions)
    grid = [int(n) for n in n_grid]
    if not grid:
        raise DomainError("n_grid is empty")
    for n in grid:
        if n < 2 or n % 2:
            raise DomainError(f"grid sizes must be even and at least 2, got {n}")
    if sorted(set(grid)) != grid:
        raise DomainError("n_grid must be strictly increasing")
    pool_per_class = grid[-1] // 2 + 1
    max_rank = problem.p + 1
    digest = config_digest(
        "contributions",
        **_problem_params(problem),
        n_grid=grid,
        repetitions=repetitions,
        seed=seed,
        rel_tol=rel_tol,
    )

    def err(clf):
        return analytic_error(clf, problem)

    def one(r):
        pool = sample_labeled(problem, pool_per_class, rng_stream(seed, r))
        out = np.empty((4, len(grid)))
        for j, n in enumerate(grid):
            small, big = pool.head(n), pool.head(n + 2)
            e_n = err(fit_ls_supervised(small, rel_tol))
            e_n2 = err(fit_ls_supervised(big, rel_tol))
            e_semi = err(fit_ls_semisupervised(small, UnlabeledDataset(pool.X[n : n + 2]), rel_tol))
            e_fixed = err(fit_fixed_rank(big, min(n, max_rank), rel_tol))
            out[:, j] = (e_semi - e_n, -(e_semi - e_n2), e_n2 - e_n, e_fixed - e_n)
        return out

    results = np.array(_map_repetitions(one, repetitions, n_jobs))
    sizes = [(n, 0) for n in grid]
    names = ("covariance", "labels", "total", "fixed-rank")
    return [_make_curve(name, sizes, results[:, i, :], digest) for i, name in enumerate(names)]


def run_infinite_unlabeled(p_list, delta_list, n_labeled_grid, repetitions=500, seed=0, rel_tol=None, n_jobs=1):
    """Supervised versus infinite-unlabeled curves for each ``(p, delta)``.

    ``n_labeled_grid`` holds total labeled counts (even, balanced classes).
    The same noise draws are reused across ``delta`` for a given ``p``.
    Curve ids are ``supervised[p=..,delta=..]`` and
    ``semi-supervised-infinite[p=..,delta=..]``.
    """
    _check_repetitions(repetitions)
    p_list = [int(p) for p in p_list]
    delta_list = [float(d) for d in delta_list]
    grid = [int(n) for n in n_labeled_grid]
    if not (p_list and delta_list and grid):
        raise DomainError("p_list, delta_list and n_labeled_grid must be non-empty")
    for n in grid:
        if n < 2 or n % 2:
            raise DomainError(f"labeled sizes must be even and at least 2, got {n}")
    if sorted(set(grid)) != grid:
        raise DomainError("n_labeled_grid must be strictly increasing")
    digest = config_digest(
        "infinite",
        p=p_list,
        delta=delta_list,
        n_labeled_grid=grid,
        repetitions=repetitions,
        seed=seed,
        rel_tol=rel_tol,
    )
    sizes = [(n, 0) for n in grid]
    curves = []
    for p in p_list:
        problems = [GaussianProblem(p, d) for d in delta_list]

        def one(r):
            out = np.empty((len(problems), 2, len(grid)))
            for k, problem in enumerate(problems):
                pool = sample_labeled(problem, grid[-1] // 2, rng_stream(seed, r, p))
                for j, n in enumerate(grid):
                    labeled = pool.head(n)
                    out[k, 0, j] = analytic_error(fit_ls_supervised(labeled, rel_tol), problem)
                    out[k, 1, j] = analytic_error(fit_infinite_unlabeled(labeled, problem), problem)
            return out

        results = np.array(_map_repetitions(one, repetitions, n_jobs))
        for k, delta in enumerate(delta_list):
            tag = f"[p={p},delta={delta:g}]"
            curves.append(_make_curve("supervised" + tag, sizes, results[:, k, 0, :], digest))
            curves.append(_make_curve("semi-supervised-infinite" + tag, sizes, results[:, k, 1, :], digest))
    return curves


def benchmark_max_extra(n_objects):
    """Default cap on additional objects: 100 for small datasets, else 1000."""
    return 1000 if n_objects >= 1000 else 100


def _draw_labeled(data, L, seed, r):
    for attempt in range(MAX_LABEL_REDRAWS):
        rng = rng_stream(seed, r, attempt)
        labeled = bootstrap_sample(data, L, rng)
        if np.unique(labeled.y).size == 2:
            return labeled, rng
    raise DegenerateLabelsError(
        f"repetition {r}: {MAX_LABEL_REDRAWS} labeled draws all contained a single class"
    )


def run_benchmark(
    dataset,
    repetitions=100,
    test_size=1000,
    max_extra=None,
    step=None,
    seed=0,
    variance_fraction=0.99,
    rel_tol=None,
    n_jobs=1,
    name="dataset",
):
    """Learning curves on a real binary dataset by resampling.

    PCA keeping ``variance_fraction`` of the variance is fitted once on all
    rows; ``p`` is the retained dimension and ``L = ceil(p / 2)``. Each
    repetition draws, with replacement, ``L`` labeled objects (redrawn from
    a fresh stream if only one class appears), ``max_extra`` additional
    objects and a test set of ``test_size``. The additional objects are
    labeled for ``supervised`` and unlabeled for ``semi-supervised``;
    ``base`` uses the initial ``L`` only. Errors are test-set error rates.
    """
    _check_repetitions(repetitions)
    if not isinstance(dataset, LabeledDataset) or dataset.L == 0:
        raise DomainError("dataset must be a non-empty LabeledDataset")
    if np.unique(dataset.y).size != 2:
        raise DegenerateLabelsError("benchmark dataset must contain both classes")
    if max_extra is None:
        max_extra = benchmark_max_extra(dataset.L)
    if step is None:
        step = max(1, max_extra // 50)
    if max_extra < 1 or step < 1 or test_size < 1:
        raise DomainError("max_extra, step and test_size must be positive")

    model = pca_fit(dataset.X, variance_fraction)
    projected = LabeledDataset(pca_transform(model, dataset.X), dataset.y)
    p = model.retained
    L = math.ceil(p / 2)
    logger.info("%s: PCA keeps %d of %d dimensions, L = %d", name, p, dataset.p, L)
    grid = list(range(0, max_extra + 1, step))
    digest = config_digest(
        "benchmark",
        dataset=name,
        rows=dataset.L,
        features=dataset.p,
        pca_dimensions=p,
        L=L,
        repetitions=repetitions,
        test_size=test_size,
        max_extra=max_extra,
        step=step,
        variance_fraction=variance_fraction,
        seed=seed,
        rel_tol=rel_tol,
    )

    def one(r):
        labeled, rng = _draw_labeled(projected, L, seed, r)
        extra = bootstrap_sample(projected, max_extra, rng)
        test = bootstrap_sample(projected, test_size, rng)
        base = empirical_error(fit_ls_supervised(labeled, rel_tol), test)
        sup = np.empty(len(grid))
        semi = np.empty(len(grid))
        for j, k in enumerate(grid):
            grown = LabeledDataset(
                np.vstack([labeled.X, extra.X[:k]]), np.concatenate([labeled.y, extra.y[:k]])
            )
            sup[j] = empirical_error(fit_ls_supervised(grown, rel_tol), test)
            unl = UnlabeledDataset(extra.X[:k])
            semi[j] = empirical_error(fit_ls_semisupervised(labeled, unl, rel_tol), test)
        return sup, semi, np.full(len(grid), base)

    results = _map_repetitions(one, repetitions, n_jobs)
    sup, semi, base = (np.array(x) for x in zip(*results))
    return [
        _make_curve("supervised", [(L + k, 0) for k in grid], sup, digest),
        _make_curve("semi-supervised", [(L, k) for k in grid], semi, digest),
        _make_curve("base", [(L, k) for k in grid], base, digest),
    ]


def run_approximation(p, delta, n_labeled_per_class=5, n_max_per_class=100, gamma=None):
    """Supervised and semi-supervised approximation curves.

    The supervised curve covers ``N = 1 .. n_max_per_class`` objects per
    class; the semi-supervised one keeps ``n_labeled_per_class`` labeled
    and grows the total up to ``n_max_per_class``. Each point carries the
    regime used. Points at ``2N = p`` are skipped with a warning.
    """
    if not isinstance(gamma, GammaSpec):
        gamma = GammaSpec(0.0 if gamma is None else gamma)
    if n_labeled_per_class < 2:
        raise DomainError("n_labeled_per_class must be at least 2")
    if n_max_per_class < n_labeled_per_class:
        raise DomainError("n_max_per_class must be at least n_labeled_per_class")
    digest = config_digest(
        "approx",
        p=p,
        delta=float(delta),
        n_labeled_per_class=n_labeled_per_class,
        n_max_per_class=n_max_per_class,
        gamma=gamma.describe(),
    )
    curves = []
    for curve_id, pts in (
        ("approx-supervised", learning_curve_approx(range(1, n_max_per_class + 1), p, delta, gamma)),
        (
            "approx-semi-supervised",
            learning_curve_approx(
                range(n_labeled_per_class, n_max_per_class + 1), p, delta, gamma, n_labeled=n_labeled_per_class
            ),
        ),
    ):
        points = tuple(
            CurvePoint(
                curve_id,
                int(2 * pt.n_labeled_per_class),
                int(2 * (pt.n_total_per_class - pt.n_labeled_per_class)),
                ErrorEstimate(pt.error, 0.0, 1),
                pt.regime,
            )
            for pt in pts
        )
        errors = np.array([[pt.error for pt in pts]])
        curves.append(LearningCurve(curve_id, points, digest, errors))
    return curves
