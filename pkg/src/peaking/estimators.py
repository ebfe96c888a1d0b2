"""scikit-learn compatible wrappers around the fits in :mod:`peaking.classifiers`.

The estimators accept any two distinct labels; ``classes_[0]`` plays the
role of class 1 (target +1) and ``classes_[1]`` of class 2.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.multiclass import check_classification_targets
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from . import classifiers as _clf
from .data import GaussianProblem, LabeledDataset, UnlabeledDataset
from .exceptions import DomainError
from .numerics import pca_fit, pca_inverse_transform, pca_transform

__all__ = [
    "LeastSquaresClassifier",
    "SemiSupervisedLeastSquaresClassifier",
    "FisherDiscriminant",
    "InfiniteUnlabeledClassifier",
    "VariancePCA",
]


class _LinearBinaryMixin(ClassifierMixin):
    def _encode(self, X, y):
        X, y = check_X_y(X, y)
        check_classification_targets(y)
        self.classes_, y_idx = np.unique(y, return_inverse=True)
        if len(self.classes_) != 2:
            raise ValueError(f"expected exactly 2 classes, got {len(self.classes_)}")
        self.n_features_in_ = X.shape[1]
        return LabeledDataset(X, y_idx + 1)

    def _store(self, clf):
        self.classifier_ = clf
        self.coef_ = clf.w
        self.intercept_ = clf.b
        return self

    def decision_function(self, X):
        """Score ``w @ x + b``; positive scores go to ``classes_[0]``."""
        check_is_fitted(self, "classifier_")
        X = check_array(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        return self.classifier_.decision_function(X)

    def predict(self, X):
        return np.where(self.decision_function(X) > 0, self.classes_[0], self.classes_[1])


class LeastSquaresClassifier(_LinearBinaryMixin, BaseEstimator):
    """Least squares classifier solved with a pseudo-inverse.

    Parameters
    ----------
    rank : int, optional
        Keep only this many leading eigendirections of the augmented Gram
        matrix. ``None`` uses all of them.
    rel_tol : float, optional
        Relative zero-eigenvalue threshold, default ``1e-10 * (p + 1)``.

    Attributes
    ----------
    classes_ : ndarray of shape (2,)
    coef_ : ndarray of shape (n_features,)
    intercept_ : float
    """

    def __init__(self, rank=None, rel_tol=None):
        self.rank = rank
        self.rel_tol = rel_tol

    def fit(self, X, y):
        data = self._encode(X, y)
        if self.rank is None:
            return self._store(_clf.fit_ls_supervised(data, self.rel_tol))
        return self._store(_clf.fit_fixed_rank(data, self.rank, self.rel_tol))


class SemiSupervisedLeastSquaresClassifier(_LinearBinaryMixin, BaseEstimator):
    """Least squares classifier whose Gram matrix also uses unlabeled rows.

    Follows the scikit-learn semi-supervised convention: rows of ``y``
    equal to ``unlabeled`` (default ``-1``) are unlabeled.
    """

    def __init__(self, unlabeled=-1, rel_tol=None):
        self.unlabeled = unlabeled
        self.rel_tol = rel_tol

    def fit(self, X, y):
        X, y = check_X_y(X, y, dtype=None)
        X = np.asarray(X, dtype=float)
        mask = y == self.unlabeled
        data = self._encode(X[~mask], y[~mask])
        self.n_unlabeled_ = int(mask.sum())
        extra = UnlabeledDataset(X[mask])
        return self._store(_clf.fit_ls_semisupervised(data, extra, self.rel_tol))


class FisherDiscriminant(_LinearBinaryMixin, BaseEstimator):
    """Fisher discriminant ``pinv(S) (m1 - m2)`` with S the within-class
    (``scatter="within"``) or total (``scatter="total"``) scatter."""

    def __init__(self, scatter="within", rel_tol=None):
        self.scatter = scatter
        self.rel_tol = rel_tol

    def fit(self, X, y):
        if self.scatter not in ("within", "total"):
            raise ValueError(f"scatter must be 'within' or 'total', got {self.scatter!r}")
        stats = _clf.scatter_stats(self._encode(X, y))
        fit = _clf.fit_fisher_within if self.scatter == "within" else _clf.fit_fisher_total
        return self._store(fit(stats, self.rel_tol))


class InfiniteUnlabeledClassifier(_LinearBinaryMixin, BaseEstimator):
    """Total-scatter classifier with the population scatter of the default
    two-Gaussian problem at mean distance ``delta``."""

    def __init__(self, delta=1.0):
        self.delta = delta

    def fit(self, X, y):
        data = self._encode(X, y)
        problem = GaussianProblem(data.p, self.delta)
        return self._store(_clf.fit_infinite_unlabeled(data, problem))


class VariancePCA(TransformerMixin, BaseEstimator):
    """PCA keeping the fewest components that explain ``variance_fraction``."""

    def __init__(self, variance_fraction=0.99):
        self.variance_fraction = variance_fraction

    def fit(self, X, y=None):
        X = check_array(X)
        self.model_ = pca_fit(X, self.variance_fraction)
        self.n_features_in_ = X.shape[1]
        self.n_components_ = self.model_.retained
        self.mean_ = self.model_.mean
        self.components_ = self.model_.components.T
        self.explained_variance_ = self.model_.explained_variance
        return self

    def transform(self, X):
        check_is_fitted(self, "model_")
        X = check_array(X)
        try:
            return pca_transform(self.model_, X)
        except DomainError as exc:
            raise ValueError(str(exc)) from exc

    def inverse_transform(self, X):
        check_is_fitted(self, "model_")
        return pca_inverse_transform(self.model_, check_array(X))
