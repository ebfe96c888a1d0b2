"""Linear two-class fits: Fisher forms, least squares and its semi-supervised
update, the fixed-rank control and the infinite-unlabeled-data limit.

Every fit returns a :class:`LinearClassifier`; class 1 is predicted when
``w @ x + b > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import LabeledDataset, UnlabeledDataset
from .exceptions import DegenerateLabelsError, DomainError, NumericInputError
from .numerics import pseudo_inverse, truncated_pseudo_inverse

__all__ = [
    "ScatterStats",
    "LinearClassifier",
    "scatter_stats",
    "fit_fisher_within",
    "fit_fisher_total",
    "fit_ls_supervised",
    "fit_ls_semisupervised",
    "fit_fixed_rank",
    "fit_infinite_unlabeled",
    "limiting_total_scatter",
    "predict",
]


@dataclass(frozen=True)
class ScatterStats:
    """Sample means and scatter matrices, both scatters normalized by count.

    ``W`` uses the labeled objects only; ``T`` and ``m`` use labeled and
    unlabeled objects together.
    """

    m1: np.ndarray
    m2: np.ndarray
    m: np.ndarray
    W: np.ndarray
    T: np.ndarray
    n: int
    N1: int
    N2: int


@dataclass(frozen=True)
class LinearClassifier:
    w: np.ndarray
    b: float

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        if w.ndim != 1:
            raise DomainError("w must be a vector")
        if not (np.all(np.isfinite(w)) and np.isfinite(self.b)):
            raise NumericInputError("classifier has non-finite parameters")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "b", float(self.b))

    @property
    def p(self):
        return len(self.w)

    def decision_function(self, X):
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] != self.p:
            raise DomainError(f"X has {X.shape[1]} columns, classifier expects {self.p}")
        return X @ self.w + self.b

    def predict(self, X):
        return np.where(self.decision_function(X) > 0, 1, 2)

    def negated(self):
        return LinearClassifier(-self.w, -self.b)


def predict(clf, X):
    """Labels in {1, 2}; a score of exactly zero goes to class 2."""
    return clf.predict(X)


def _check_both_classes(labeled):
    counts = np.bincount(labeled.y, minlength=3)
    if counts[1] == 0 or counts[2] == 0:
        raise DegenerateLabelsError(
            f"need objects of both classes, got N1={counts[1]}, N2={counts[2]}"
        )
    return int(counts[1]), int(counts[2])


def _scatter(Xc, n):
    S = Xc.T @ Xc / n
    return 0.5 * (S + S.T)


def scatter_stats(labeled, unlabeled=None):
    """Class means, within-class scatter ``W`` and total scatter ``T``.

    Examples
    --------
    >>> s = scatter_stats(LabeledDataset([[0.0, 0.0], [2.0, 0.0]], [1, 2]))
    >>> s.T
    array([[1., 0.],
           [0., 0.]])
    """
    N1, N2 = _check_both_classes(labeled)
    X, y = labeled.X, labeled.y
    m1 = X[y == 1].mean(axis=0)
    m2 = X[y == 2].mean(axis=0)
    centered = np.where((y == 1)[:, None], X - m1, X - m2)
    W = _scatter(centered, labeled.L)

    if unlabeled is not None and unlabeled.U > 0:
        if unlabeled.Xu.shape[1] != labeled.p:
            raise DomainError("labeled and unlabeled data differ in dimension")
        Xe = np.vstack([X, unlabeled.Xu])
    else:
        Xe = X
    n = Xe.shape[0]
    if n < 2:
        raise DomainError("need at least 2 objects")
    m = Xe.mean(axis=0)
    T = _scatter(Xe - m, n)
    return ScatterStats(m1=m1, m2=m2, m=m, W=W, T=T, n=n, N1=N1, N2=N2)


def _midpoint_classifier(w, m1, m2):
    return LinearClassifier(w, -0.5 * float((m1 + m2) @ w))


def fit_fisher_within(stats, rel_tol=None):
    """``w = pinv(W) (m1 - m2)`` with the threshold midway between the means."""
    w = pseudo_inverse(stats.W, rel_tol) @ (stats.m1 - stats.m2)
    return _midpoint_classifier(w, stats.m1, stats.m2)


def fit_fisher_total(stats, rel_tol=None):
    """As :func:`fit_fisher_within` with the total scatter ``T``."""
    w = pseudo_inverse(stats.T, rel_tol) @ (stats.m1 - stats.m2)
    return _midpoint_classifier(w, stats.m1, stats.m2)


def _augment(X):
    return np.hstack([X, np.ones((X.shape[0], 1))])


def _targets(y):
    return np.where(y == 1, 1.0, -1.0)


def _unpack(v):
    return LinearClassifier(v[:-1], v[-1])


def _gram(Xa):
    G = Xa.T @ Xa
    return 0.5 * (G + G.T)


def fit_ls_supervised(labeled, rel_tol=None):
    """Least squares on targets +1 (class 1) / -1 (class 2).

    Rows get a constant 1 feature for the intercept and the normal
    equations are solved with the pseudo-inverse of the augmented Gram
    matrix, which gives the minimum-norm solution when ``L <= p``.
    """
    _check_both_classes(labeled)
    Xa = _augment(labeled.X)
    v = pseudo_inverse(_gram(Xa), rel_tol) @ (Xa.T @ _targets(labeled.y))
    return _unpack(v)


def fit_ls_semisupervised(labeled, unlabeled, rel_tol=None):
    """Least squares with the Gram matrix estimated from all objects.

    The Gram matrix of the ``L + U`` augmented rows is scaled by
    ``L / (L + U)`` so it is on the same footing as the moment vector,
    which only sums over the ``L`` labeled rows. With ``U = 0`` the result
    is identical to :func:`fit_ls_supervised`.
    """
    _check_both_classes(labeled)
    if unlabeled is None or unlabeled.U == 0:
        return fit_ls_supervised(labeled, rel_tol)
    if unlabeled.Xu.shape[1] != labeled.p:
        raise DomainError("labeled and unlabeled data differ in dimension")
    L, U = labeled.L, unlabeled.U
    Xa = _augment(labeled.X)
    Xe = _augment(np.vstack([labeled.X, unlabeled.Xu]))
    G = (L / (L + U)) * _gram(Xe)
    v = pseudo_inverse(G, rel_tol) @ (Xa.T @ _targets(labeled.y))
    return _unpack(v)


def fit_fixed_rank(labeled, rank, rel_tol=None):
    """Least squares keeping only the ``rank`` leading Gram eigendirections."""
    _check_both_classes(labeled)
    dim = labeled.p + 1
    if isinstance(rank, bool) or not isinstance(rank, (int, np.integer)):
        raise DomainError(f"rank must be an integer, got {rank!r}")
    if not 1 <= rank <= dim:
        raise DomainError(f"rank {rank} outside [1, {dim}]")
    Xa = _augment(labeled.X)
    v = truncated_pseudo_inverse(_gram(Xa), int(rank), rel_tol) @ (Xa.T @ _targets(labeled.y))
    return _unpack(v)


def limiting_total_scatter(problem):
    """Population total scatter ``I + 1/4 (mu1 - mu2)(mu1 - mu2)^T``.

    For the default means this is ``I + delta^2 / (4 p) * 1 1^T``.
    """
    d = problem.mu1 - problem.mu2
    return np.eye(problem.p) + 0.25 * np.outer(d, d)


def _limiting_total_scatter_inverse(problem):
    # Sherman-Morrison; for the default means this is
    # I - 1 1^T (delta^2 / (4p)) / (1 + delta^2 / 4).
    d = problem.mu1 - problem.mu2
    return np.eye(problem.p) - np.outer(d, d) * (0.25 / (1.0 + 0.25 * float(d @ d)))


def fit_infinite_unlabeled(labeled, problem, rel_tol=None):
    """Total-scatter classifier with ``T`` replaced by its population value.

    This is the semi-supervised fit in the limit of infinitely many
    unlabeled objects. The means still come from the labeled sample.
    ``rel_tol`` is accepted for signature symmetry; the population scatter
    is always invertible so no thresholding happens.
    """
    _check_both_classes(labeled)
    if labeled.p != problem.p:
        raise DomainError("dataset and problem differ in dimension")
    X, y = labeled.X, labeled.y
    m1 = X[y == 1].mean(axis=0)
    m2 = X[y == 2].mean(axis=0)
    w = _limiting_total_scatter_inverse(problem) @ (m1 - m2)
    return _midpoint_classifier(w, m1, m2)
