"""Exact and held-out error rates of linear classifiers."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError
from .numerics import normal_cdf

__all__ = ["ErrorEstimate", "summarize", "analytic_error", "empirical_error"]


@dataclass(frozen=True)
class ErrorEstimate:
    """Mean error over repetitions with its standard error."""

    mean_error: float
    std_error: float
    repetitions: int


def summarize(errors):
    """Aggregate per-repetition errors; one repetition has std_error 0."""
    errors = np.asarray(errors, dtype=float)
    if errors.ndim != 1 or len(errors) == 0:
        raise DomainError("need a non-empty vector of errors")
    r = len(errors)
    std = float(np.std(errors, ddof=1)) / math.sqrt(r) if r > 1 else 0.0
    return ErrorEstimate(float(np.mean(errors)), std, r)


def analytic_error(clf, problem):
    """Exact expected error on the two-Gaussian problem with equal priors.

    With ``s = w @ x + b`` the score of class ``c`` is normal with mean
    ``w @ mu_c + b`` and standard deviation ``||w||``, so the error is
    ``1/2 Phi(-(w mu1 + b)/||w||) + 1/2 Phi((w mu2 + b)/||w||)``.
    A zero weight vector always predicts one class, giving 1/2.
    """
    if clf.p != problem.p:
        raise DomainError(f"classifier has dimension {clf.p}, problem {problem.p}")
    norm = float(np.linalg.norm(clf.w))
    if norm == 0.0:
        return 0.5
    z1 = (float(clf.w @ problem.mu1) + clf.b) / norm
    z2 = (float(clf.w @ problem.mu2) + clf.b) / norm
    return 0.5 * normal_cdf(-z1) + 0.5 * normal_cdf(z2)


def empirical_error(clf, test):
    """Fraction of test rows whose predicted label differs from the truth."""
    if test.L == 0:
        raise DomainError("empty test set")
    return float(np.mean(clf.predict(test.X) != test.y))
