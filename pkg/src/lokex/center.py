"""Center and scatter estimation for the word-vector cloud.

Provides the sample mean, sample / maximum-likelihood covariance, an
SVD-based PCA reduction, and a robust center: the mean and covariance of the
h-point subset whose covariance determinant is (approximately) minimal,
found with the standard fast search (random small starts, concentration
steps, refinement of the best candidates).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np
from scipy.linalg import pinvh

from .errors import DimensionMismatch, InsufficientSamples, InvalidComponentCount
from .vectors import EmbeddingMatrix

__all__ = [
    "CenterEstimate",
    "PcaProjection",
    "sample_mean",
    "covariance",
    "pca_fit",
    "pca_transform",
    "concentration_step",
    "fast_mcd",
    "precision_matrix",
]

logger = logging.getLogger(__name__)

# condition number beyond which a covariance is treated as singular
COND_LIMIT = 1e12


def _as_matrix(data) -> np.ndarray:
    if isinstance(data, EmbeddingMatrix):
        return data.vectors
    return np.asarray(data, dtype=np.float64)


@dataclass
class CenterEstimate:
    """A distribution center, optionally with a covariance estimate."""

    mean: np.ndarray
    kind: str  # "sample_mean" | "robust_mcd"
    covariance: np.ndarray | None = None
    covariance_kind: str | None = None  # "sample" | "max_likelihood" | "robust"
    support_size: int | None = None
    support: np.ndarray | None = None  # row indices of the h-subset
    regularized: bool = False

    @property
    def dim(self) -> int:
        return self.mean.shape[0]

    def to_text(self) -> str:
        lines = [f"# kind={self.kind} covariance={self.covariance_kind or 'none'}"
                 + (f" h={self.support_size}" if self.support_size else "")]
        lines.append("mean " + " ".join(f"{x:.6f}" for x in self.mean))
        if self.covariance is not None:
            for row in self.covariance:
                lines.append("cov " + " ".join(f"{x:.6f}" for x in row))
        return "\n".join(lines) + "\n"


@dataclass
class PcaProjection:
    """Orthonormal basis of the top principal components."""

    m: int
    basis: np.ndarray  # (dim, m), orthonormal columns
    column_means: np.ndarray
    explained_variance: np.ndarray  # length m, non-increasing


def sample_mean(E) -> CenterEstimate:
    """Column-wise arithmetic mean; each word contributes one row."""
    X = _as_matrix(E)
    if X.shape[0] < 1:
        raise InsufficientSamples("need at least one row")
    return CenterEstimate(mean=X.mean(axis=0), kind="sample_mean")


def covariance(E, kind: str = "sample") -> np.ndarray:
    """Centered scatter over (n-1) for "sample", over n for "max_likelihood"."""
    X = _as_matrix(E)
    n = X.shape[0]
    if n < 2:
        raise InsufficientSamples("covariance needs at least two rows")
    if kind not in ("sample", "max_likelihood"):
        raise ValueError(f"unknown covariance kind {kind!r}")
    centered = X - X.mean(axis=0)
    denom = n - 1 if kind == "sample" else n
    return centered.T @ centered / denom


def pca_fit(E, m: int) -> PcaProjection:
    """Top-m right singular vectors of the column-centered matrix.

    Column signs are fixed so each component's largest-magnitude entry is
    positive.
    """
    X = _as_matrix(E)
    n, dim = X.shape
    if not (1 <= m <= min(n, dim)):
        raise InvalidComponentCount(f"m={m} not in [1, {min(n, dim)}]")
    means = X.mean(axis=0)
    _, svals, vt = np.linalg.svd(X - means, full_matrices=False)
    basis = vt[:m].T.copy()
    for col in range(m):
        j = int(np.argmax(np.abs(basis[:, col])))
        if basis[j, col] < 0:
            basis[:, col] = -basis[:, col]
    if n > 1:
        explained = svals[:m] ** 2 / (n - 1)
    else:
        explained = np.zeros(m)
    return PcaProjection(m=m, basis=basis, column_means=means, explained_variance=explained)


def pca_transform(E, projection: PcaProjection):
    """Project rows onto the retained components.

    Returns an :class:`EmbeddingMatrix` when given one, else a plain array.
    """
    X = _as_matrix(E)
    if X.shape[1] != projection.column_means.shape[0]:
        raise DimensionMismatch(
            f"vectors have dim {X.shape[1]}, projection expects "
            f"{projection.column_means.shape[0]}")
    reduced = (X - projection.column_means) @ projection.basis
    if isinstance(E, EmbeddingMatrix):
        return EmbeddingMatrix(stems=list(E.stems), vectors=reduced, kind="pca_reduced")
    return reduced


def precision_matrix(cov: np.ndarray) -> tuple[np.ndarray, bool]:
    """Inverse of a symmetric PSD matrix, pseudo-inverse when ill-conditioned.

    Returns (precision, used_pseudo_inverse).
    """
    cond = np.linalg.cond(cov)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        logger.warning("covariance condition number %.3g; using pseudo-inverse", cond)
        return pinvh(cov), True
    return np.linalg.inv(cov), False


def _ml_estimate(X: np.ndarray, idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    sub = X[idx]
    mean = sub.mean(axis=0)
    centered = sub - mean
    return mean, centered.T @ centered / sub.shape[0]


def _squared_mahalanobis(X: np.ndarray, mean: np.ndarray, cov: np.ndarray) -> np.ndarray:
    prec, _ = precision_matrix(cov)
    diff = X - mean
    d2 = np.einsum("ij,jk,ik->i", diff, prec, diff)
    return np.maximum(d2, 0.0)


def concentration_step(X: np.ndarray, mean: np.ndarray, cov: np.ndarray,
                       h: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One concentration step: refit on the h points nearest under (mean, cov).

    The determinant of the refitted covariance never exceeds det(cov).
    """
    d2 = _squared_mahalanobis(X, mean, cov)
    idx = np.argsort(d2, kind="stable")[:h]
    new_mean, new_cov = _ml_estimate(X, idx)
    return new_mean, new_cov, idx


def _logdet(cov: np.ndarray) -> float:
    sign, val = np.linalg.slogdet(cov)
    if sign <= 0 or not np.isfinite(val):
        return -np.inf
    return val


def _nonsingular_start(X: np.ndarray, seed_idx: np.ndarray,
                       rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Mean/cov of a small start subset, grown until the covariance is invertible."""
    n = X.shape[0]
    idx = list(seed_idx)
    chosen = set(idx)
    pool = None
    while True:
        mean, cov = _ml_estimate(X, np.asarray(idx))
        if _logdet(cov) > -np.inf or len(idx) == n:
            return mean, cov
        if pool is None:
            pool = [i for i in rng.permutation(n) if i not in chosen]
        idx.append(pool.pop(0))


def fast_mcd(E, h: int | None = None, seed: int = 0, n_starts: int = 500,
             n_best: int = 10, max_refine: int = 100, det_tol: float = 1e-12) -> CenterEstimate:
    """Robust center and covariance via the fast minimum-determinant search.

    Draws ``n_starts`` random (dim+1)-point starts (all of them when there
    are fewer), concentrates each for two steps, then iterates the
    ``n_best`` lowest-determinant candidates to convergence. Deterministic
    for a fixed seed. ``h`` defaults to floor((n + dim + 1) / 2).
    """
    X = _as_matrix(E)
    n, p = X.shape
    if n <= p:
        raise InsufficientSamples(f"need more rows ({n}) than dimensions ({p})")
    if h is None:
        h = (n + p + 1) // 2
    if not (n / 2 < h <= n):
        raise ValueError(f"h={h} must lie in (n/2, n] with n={n}")

    if h == n:
        mean, cov = _ml_estimate(X, np.arange(n))
        return _finalize(mean, cov, np.arange(n), h)

    rng = np.random.default_rng(seed)
    if comb(n, p + 1) <= n_starts:
        starts = [np.asarray(c) for c in combinations(range(n), p + 1)]
    else:
        starts = [rng.choice(n, size=p + 1, replace=False) for _ in range(n_starts)]

    candidates = []  # (logdet, insertion order, mean, cov)
    for order, start in enumerate(starts):
        mean, cov = _nonsingular_start(X, start, rng)
        for _ in range(2):
            mean, cov, _ = concentration_step(X, mean, cov, h)
            if _logdet(cov) == -np.inf:
                break
        candidates.append((_logdet(cov), order, mean, cov))

    candidates.sort(key=lambda c: (c[0], c[1]))
    best_logdet = np.inf
    best = None
    for logdet, _, mean, cov in candidates[:n_best]:
        prev = logdet
        for _ in range(max_refine):
            mean, cov, idx = concentration_step(X, mean, cov, h)
            cur = _logdet(cov)
            if cur == -np.inf or prev - cur < det_tol:
                prev = cur
                break
            prev = cur
        if prev < best_logdet:
            best_logdet = prev
            best = (mean, cov, idx)
    mean, cov, idx = best
    return _finalize(mean, cov, idx, h)


def _finalize(mean: np.ndarray, cov: np.ndarray, support: np.ndarray, h: int) -> CenterEstimate:
    regularized = False
    if _logdet(cov) == -np.inf:
        p = cov.shape[0]
        bump = 1e-8 * np.trace(cov) / p
        if bump <= 0:
            bump = 1e-8
        cov = cov + bump * np.eye(p)
        regularized = True
        logger.warning("singular robust covariance; diagonal regularized")
    return CenterEstimate(mean=mean, kind="robust_mcd", covariance=cov,
                          covariance_kind="robust", support_size=h,
                          support=np.sort(np.asarray(support)), regularized=regularized)
