"""Closed-form learning-curve approximations for the two-Gaussian problem.

Two regimes, with ``N`` objects per class and dimension ``p``:

* pseudo-inverse regime (``2N < p``)::

      e = Phi(-delta/2 * T_r / sqrt((1 + g^2) T_mu + g^2 * 3 delta^2 / (4p)))
      T_mu = 1 + 1/N + 2p^2 / (delta^2 (2N-2) N) + p^2 / (delta^2 (2N-2) N^2)
      T_r  = sqrt((2N - 2) / p)

* full-rank regime (``2N > p``)::

      e = Phi(-delta/2 / sqrt(T_mu T_Sigma))
      T_mu = 1 + 2p / (delta^2 N),   T_Sigma = 1 + p / (2N - p)

The eigenvalue term ``g`` (gamma) has no closed form here; it is supplied
by the caller through :class:`GammaSpec` and defaults to 0.

The semi-supervised variant keeps the mean-estimation term ``T_mu`` at the
labeled count while every other term sees the total count.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Union

from .exceptions import DomainError, RegimeError
from .numerics import normal_cdf

__all__ = [
    "GammaSpec",
    "ApproxTerms",
    "ApproxPoint",
    "regime",
    "approx_terms",
    "approx_error_pinv",
    "approx_error_fullrank",
    "approx_error",
    "approx_error_semisup",
    "learning_curve_approx",
]

PINV = "pinv"
FULLRANK = "fullrank"
UNDEFINED = "undefined"


@dataclass(frozen=True)
class GammaSpec:
    """Eigenvalue-estimation term: a constant or a function of ``(N, p)``."""

    value: Union[float, Callable[[float, int], float]] = 0.0
    label: str = ""

    def __call__(self, N, p):
        g = self.value(N, p) if callable(self.value) else self.value
        g = float(g)
        if not (math.isfinite(g) and g >= 0):
            raise DomainError(f"gamma must be finite and non-negative, got {g}")
        return g

    def describe(self):
        if self.label:
            return self.label
        if callable(self.value):
            return getattr(self.value, "__name__", "callable")
        if self.value == 0:
            return "0 (no eigenvalue-estimation penalty)"
        return repr(float(self.value))


def _as_gamma(gamma):
    if gamma is None:
        return GammaSpec()
    if isinstance(gamma, GammaSpec):
        return gamma
    return GammaSpec(gamma)


@dataclass(frozen=True)
class ApproxTerms:
    t_mu: float
    t_r: float = math.nan
    t_sigma: float = math.nan
    gamma: float = math.nan


@dataclass(frozen=True)
class ApproxPoint:
    n_labeled_per_class: float
    n_total_per_class: float
    error: float
    regime: str


def regime(N, p):
    """Which approximation applies with ``N`` objects per class."""
    if 2 * N < p:
        return PINV
    if 2 * N > p:
        return FULLRANK
    return UNDEFINED


def _check_common(p, delta):
    if p < 1:
        raise DomainError(f"p must be positive, got {p}")
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")


def _t_mu_pinv(N, p, delta):
    dof = 2 * N - 2
    d2 = delta * delta
    return 1 + 1 / N + 2 * p * p / (d2 * dof * N) + p * p / (d2 * dof * N * N)


def _t_mu_fullrank(N, p, delta):
    return 1 + 2 * p / (delta * delta * N)


def _pinv_error(terms, p, delta):
    g2 = terms.gamma**2
    denom = math.sqrt((1 + g2) * terms.t_mu + g2 * 3 * delta * delta / (4 * p))
    return normal_cdf(-0.5 * delta * terms.t_r / denom)


def _fullrank_error(terms, delta):
    return normal_cdf(-0.5 * delta / math.sqrt(terms.t_mu * terms.t_sigma))


def approx_terms(N_labeled, N_total, p, delta, gamma=None):
    """Individual terms for the regime selected by ``N_total``."""
    _check_common(p, delta)
    gamma = _as_gamma(gamma)
    if N_labeled < 2:
        raise DomainError("mean-estimation term needs at least 2 objects per class")
    if N_total < N_labeled:
        raise DomainError("N_total must be at least N_labeled")
    kind = regime(N_total, p)
    if kind == PINV:
        return ApproxTerms(
            t_mu=_t_mu_pinv(N_labeled, p, delta),
            t_r=math.sqrt((2 * N_total - 2) / p),
            gamma=gamma(N_total, p),
        )
    if kind == FULLRANK:
        return ApproxTerms(
            t_mu=_t_mu_fullrank(N_labeled, p, delta),
            t_sigma=1 + p / (2 * N_total - p),
        )
    raise RegimeError(f"no approximation at the boundary 2N = p (N={N_total}, p={p})")


def approx_error_pinv(N, p, delta, gamma=None):
    """Pseudo-inverse regime approximation of the expected error.

    ``N = 1`` leaves no within-class degrees of freedom, so ``T_r = 0`` and
    the error is 1/2. The formula itself is evaluated for any ``N >= 2``;
    it is meant for ``2N < p``.
    """
    _check_common(p, delta)
    if N <= 0:
        raise DomainError(f"N must be positive, got {N}")
    if N == 1:
        return 0.5
    if N < 2:
        raise DomainError(f"N must be 1 or at least 2, got {N}")
    gamma = _as_gamma(gamma)
    terms = ApproxTerms(
        t_mu=_t_mu_pinv(N, p, delta),
        t_r=math.sqrt((2 * N - 2) / p),
        gamma=gamma(N, p),
    )
    return _pinv_error(terms, p, delta)


def approx_error_fullrank(N, p, delta):
    """Full-rank regime approximation; requires ``2N > p``."""
    _check_common(p, delta)
    if not 2 * N > p:
        raise RegimeError(f"full-rank approximation needs 2N > p (N={N}, p={p})")
    terms = ApproxTerms(t_mu=_t_mu_fullrank(N, p, delta), t_sigma=1 + p / (2 * N - p))
    return _fullrank_error(terms, delta)


def approx_error_semisup(N_labeled, N_total, p, delta, gamma=None):
    """Approximation with ``N_labeled`` labeled and ``N_total`` objects per class.

    Uses the pseudo-inverse form when ``2 N_total < p`` and the full-rank
    form when ``2 N_total > p``. Equal counts give the supervised value.
    """
    terms = approx_terms(N_labeled, N_total, p, delta, gamma)
    if regime(N_total, p) == PINV:
        return _pinv_error(terms, p, delta)
    return _fullrank_error(terms, delta)


def approx_error(N, p, delta, gamma=None):
    """Supervised approximation in whichever regime ``N`` falls.

    Raises :class:`RegimeError` at ``2N = p``.
    """
    kind = regime(N, p)
    if kind == PINV:
        return approx_error_pinv(N, p, delta, gamma)
    if kind == FULLRANK:
        return approx_error_fullrank(N, p, delta)
    raise RegimeError(f"no approximation at the boundary 2N = p (N={N}, p={p})")


def learning_curve_approx(grid, p, delta, gamma=None, n_labeled=None):
    """Tabulate the approximation over per-class counts.

    Parameters
    ----------
    grid : iterable of int
        Objects per class. For the semi-supervised curve these are total
        (labeled plus unlabeled) counts per class.
    n_labeled : int, optional
        Fixed labeled objects per class. ``None`` tabulates the supervised
        curve.

    Returns
    -------
    list of ApproxPoint
        Points at the undefined boundary ``2N = p`` are skipped with a
        warning.
    """
    points = []
    for N in grid:
        kind = regime(N, p)
        if kind == UNDEFINED:
            warnings.warn(f"skipping N={N}: approximation undefined at 2N = p", stacklevel=2)
            continue
        if n_labeled is None:
            err = approx_error(N, p, delta, gamma)
            points.append(ApproxPoint(N, N, err, kind))
        else:
            if N < n_labeled:
                raise DomainError(f"grid value {N} below the labeled count {n_labeled}")
            err = approx_error_semisup(n_labeled, N, p, delta, gamma)
            points.append(ApproxPoint(n_labeled, N, err, kind))
    return points
