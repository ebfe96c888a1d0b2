"""Dense linear algebra primitives.

Everything here works on small dense symmetric matrices (scatter and Gram
matrices of at most a few hundred dimensions), so a full symmetric
eigendecomposition is used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .exceptions import DegenerateDataError, DomainError, NotPSDError, NumericInputError

__all__ = [
    "EigenDecomposition",
    "PcaModel",
    "default_rel_tol",
    "symmetric_eig",
    "pseudo_inverse",
    "truncated_pseudo_inverse",
    "pca_fit",
    "pca_transform",
    "pca_inverse_transform",
    "normal_cdf",
]

# Symmetry check is relative to the largest entry so that Gram matrices of
# unscaled features (entries ~1e5) are not rejected over rounding noise.
_SYMMETRY_TOL = 1e-10
# Eigenvalues below -_NEGATIVE_TOL * lambda_max are not rounding noise.
_NEGATIVE_TOL = 1e-8


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenpairs of a symmetric matrix, eigenvalues sorted descending.

    ``eigenvectors[:, i]`` belongs to ``eigenvalues[i]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self, rank=None):
        """Return ``V diag(lambda) V^T`` using the ``rank`` leading pairs."""
        k = len(self.eigenvalues) if rank is None else rank
        V = self.eigenvectors[:, :k]
        return (V * self.eigenvalues[:k]) @ V.T


@dataclass(frozen=True)
class PcaModel:
    mean: np.ndarray
    components: np.ndarray
    explained_variance: np.ndarray
    total_variance: float

    @property
    def retained(self):
        return self.components.shape[1]


def default_rel_tol(dim):
    """Zero-eigenvalue threshold used when the caller passes ``None``."""
    return 1e-10 * dim


def _as_symmetric(m):
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] == 0:
        raise DomainError("matrix has dimension 0")
    if not np.all(np.isfinite(m)):
        raise NumericInputError("matrix contains non-finite entries")
    scale = max(1.0, float(np.max(np.abs(m))))
    if np.max(np.abs(m - m.T)) > _SYMMETRY_TOL * scale:
        raise DomainError("matrix is not symmetric")
    return m


def symmetric_eig(m):
    """Eigendecomposition of a symmetric matrix with descending eigenvalues.

    Parameters
    ----------
    m : array-like of shape (d, d)
        Symmetric matrix.

    Returns
    -------
    EigenDecomposition
    """
    m = _as_symmetric(m)
    # eigh reads only one triangle; symmetrize so both halves count.
    values, vectors = np.linalg.eigh(0.5 * (m + m.T))
    return EigenDecomposition(values[::-1].copy(), vectors[:, ::-1].copy())


def _inverse_from_eig(eig, rank, rel_tol):
    values = eig.eigenvalues
    dim = len(values)
    if rel_tol is None:
        rel_tol = default_rel_tol(dim)
    if rel_tol <= 0:
        raise DomainError("rel_tol must be positive")
    lam_max = values[0]
    if lam_max <= 0:
        # Zero matrix (or numerically so): its pseudo-inverse is zero.
        if lam_max < 0:
            raise NotPSDError("matrix is negative definite")
        return np.zeros((dim, dim))
    if values[-1] < -_NEGATIVE_TOL * lam_max:
        raise NotPSDError(
            f"smallest eigenvalue {values[-1]:.3g} is too negative for a PSD matrix "
            f"(largest {lam_max:.3g})"
        )
    keep = values[:rank] > rel_tol * lam_max
    V = eig.eigenvectors[:, :rank][:, keep]
    P = (V / values[:rank][keep]) @ V.T
    return 0.5 * (P + P.T)


def pseudo_inverse(m, rel_tol=None):
    """Moore-Penrose pseudo-inverse of a symmetric PSD matrix.

    Eigenvalues at or below ``rel_tol * lambda_max`` are treated as zero and
    their directions dropped. ``rel_tol`` defaults to ``1e-10 * dim``.
    Negative eigenvalues down to ``-1e-8 * lambda_max`` are tolerated as
    rounding noise.
    """
    eig = symmetric_eig(m)
    return _inverse_from_eig(eig, len(eig.eigenvalues), rel_tol)


def truncated_pseudo_inverse(m, rank, rel_tol=None):
    """Pseudo-inverse restricted to the ``rank`` largest eigenvalues.

    The remaining directions are mapped to zero. With ``rank`` equal to the
    dimension this is exactly :func:`pseudo_inverse`.
    """
    eig = symmetric_eig(m)
    dim = len(eig.eigenvalues)
    if isinstance(rank, bool) or not isinstance(rank, (int, np.integer)):
        raise DomainError(f"rank must be an integer, got {rank!r}")
    if rank < 0 or rank > dim:
        raise DomainError(f"rank {rank} outside [0, {dim}]")
    return _inverse_from_eig(eig, int(rank), rel_tol)


def pca_fit(data, variance_fraction=0.99):
    """Fit a PCA model keeping the fewest directions that explain
    ``variance_fraction`` of the total variance.

    Variance uses the ``n - 1`` denominator. Eigenvalues that are rounding
    noise relative to the largest one count as zero variance.

    Parameters
    ----------
    data : array-like of shape (n, p)
    variance_fraction : float in (0, 1]

    Returns
    -------
    PcaModel
    """
    X = np.asarray(data, dtype=float)
    if X.ndim != 2:
        raise DomainError(f"expected a 2-D data matrix, got {X.ndim}-D")
    n, p = X.shape
    if n < 2:
        raise DomainError("PCA needs at least 2 rows")
    if p < 1:
        raise DomainError("PCA needs at least 1 column")
    if not np.all(np.isfinite(X)):
        raise NumericInputError("data contains non-finite entries")
    if not 0 < variance_fraction <= 1:
        raise DomainError(f"variance_fraction must lie in (0, 1], got {variance_fraction}")

    mean = X.mean(axis=0)
    Xc = X - mean
    cov = Xc.T @ Xc / (n - 1)
    eig = symmetric_eig(0.5 * (cov + cov.T))
    values = eig.eigenvalues.copy()
    if values[0] <= 0:
        raise DegenerateDataError("data has zero total variance")
    values[values <= default_rel_tol(p) * values[0]] = 0.0
    total = float(values.sum())
    cumulative = np.cumsum(values)
    # Slack of a few ulps so that variance_fraction=1 is reachable despite
    # rounding in the cumulative sum.
    target = variance_fraction * total * (1 - 1e-12)
    k = int(np.searchsorted(cumulative, target, side="left")) + 1
    k = min(k, int(np.count_nonzero(values)))
    return PcaModel(
        mean=mean,
        components=eig.eigenvectors[:, :k].copy(),
        explained_variance=values[:k].copy(),
        total_variance=total,
    )


def pca_transform(model, data):
    """Center ``data`` by the model mean and project onto its components."""
    X = np.asarray(data, dtype=float)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2 or X.shape[1] != len(model.mean):
        raise DomainError(
            f"data has {X.shape[-1]} columns, model expects {len(model.mean)}"
        )
    return (X - model.mean) @ model.components


def pca_inverse_transform(model, scores):
    """Map projected scores back to feature space."""
    Z = np.asarray(scores, dtype=float)
    if Z.ndim == 1:
        Z = Z[None, :]
    if Z.shape[1] != model.retained:
        raise DomainError(f"scores have {Z.shape[1]} columns, model retains {model.retained}")
    return Z @ model.components.T + model.mean


def normal_cdf(x):
    """Standard normal CDF; accepts scalars or arrays."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise NumericInputError("normal_cdf needs finite input")
    out = ndtr(x)
    return float(out) if out.ndim == 0 else out
