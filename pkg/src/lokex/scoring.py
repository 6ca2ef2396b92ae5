"""Scoring and ranking of candidate words.

A word's score is its distance from the center of the word-vector
distribution, optionally divided by the index of the first sentence in which
the word appears (words that show up early and sit far from the center rank
highest).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .center import (
    CenterEstimate,
    covariance,
    fast_mcd,
    pca_fit,
    pca_transform,
    precision_matrix,
    sample_mean,
)
from .errors import DimensionMismatch
from .text import CandidateVocab, Document, FilterLists, build_candidate_index
from .vectors import (
    DEFAULT_WINDOW,
    EmbeddingMatrix,
    GloVeConfig,
    build_cooccurrence_matrix,
    rows_as_vectors,
    train_local_glove,
)

__all__ = [
    "ScoringConfig",
    "ScoredKeyword",
    "distance",
    "distances_from_center",
    "score_words",
    "rank",
    "extract_keywords",
]

logger = logging.getLogger(__name__)

REPRESENTATIONS = ("term_term", "glove")
METRICS = ("euclidean", "cosine", "mahalanobis")
CENTERS = ("sample_mean", "robust_mcd")
COVARIANCE_KINDS = ("sample", "max_likelihood", "robust")
DEFAULT_PCA_COMPONENTS = 10


@dataclass
class ScoringConfig:
    """Which representation, metric and center estimate to score with.

    The default configuration (term-term vectors, Euclidean distance,
    sample mean, position factor on) is the best-performing one.
    """

    representation: str = "term_term"
    metric: str = "euclidean"
    center: str = "sample_mean"
    covariance_kind: str | None = None
    use_position: bool = True
    pca_components: int | None = None
    window: int = DEFAULT_WINDOW
    glove: GloVeConfig = field(default_factory=GloVeConfig)
    seed: int = 0

    def __post_init__(self):
        if self.representation not in REPRESENTATIONS:
            raise ValueError(f"unknown representation {self.representation!r}")
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}")
        if self.center not in CENTERS:
            raise ValueError(f"unknown center {self.center!r}")
        if self.metric == "mahalanobis":
            if self.covariance_kind is None:
                self.covariance_kind = "sample"
            if self.covariance_kind not in COVARIANCE_KINDS:
                raise ValueError(f"unknown covariance kind {self.covariance_kind!r}")
        elif self.covariance_kind is not None:
            raise ValueError("covariance_kind is only meaningful with the mahalanobis metric")
        if self.needs_reduction and self.pca_components is None:
            self.pca_components = DEFAULT_PCA_COMPONENTS

    @property
    def needs_reduction(self) -> bool:
        return (
            self.center == "robust_mcd"
            or self.covariance_kind == "robust"
            or self.pca_components is not None
        )


@dataclass
class ScoredKeyword:
    stem: str
    distance: float
    z: int
    score: float
    position: int  # first occurrence in the filtered stream, for tie-breaking

    def __iter__(self):
        return iter((self.stem, self.score))


def distances_from_center(vectors: np.ndarray, center: CenterEstimate,
                          metric: str) -> np.ndarray:
    """Distance of every row from the center under the chosen metric."""
    vectors = np.atleast_2d(np.asarray(vectors, dtype=np.float64))
    mean = center.mean
    if vectors.shape[1] != mean.shape[0]:
        raise DimensionMismatch(
            f"vectors have dim {vectors.shape[1]}, center has dim {mean.shape[0]}")
    diffs = vectors - mean
    if metric == "euclidean":
        return np.sqrt(np.sum(diffs * diffs, axis=1))
    if metric == "cosine":
        vnorm = np.linalg.norm(vectors, axis=1)
        mnorm = np.linalg.norm(mean)
        out = np.ones(vectors.shape[0])
        if mnorm == 0.0:
            logger.warning("zero-length center under cosine; distances fixed at 1.0")
            return out
        ok = vnorm > 0.0
        if not np.all(ok):
            logger.warning("%d zero vectors under cosine; their distance is 1.0",
                           int(np.sum(~ok)))
        out[ok] = np.maximum(0.0, 1.0 - (vectors[ok] @ mean) / (vnorm[ok] * mnorm))
        return out
    if metric == "mahalanobis":
        if center.covariance is None:
            raise ValueError("mahalanobis distance needs a covariance on the center")
        prec, pseudo = precision_matrix(center.covariance)
        if pseudo:
            logger.warning("ill-conditioned covariance; mahalanobis uses pseudo-inverse")
        d2 = np.einsum("ij,jk,ik->i", diffs, prec, diffs)
        return np.sqrt(np.maximum(d2, 0.0))
    raise ValueError(f"unknown metric {metric!r}")


def distance(v: np.ndarray, center: CenterEstimate, metric: str) -> float:
    """Distance of a single vector from the center."""
    return float(distances_from_center(np.asarray(v, dtype=np.float64)[None, :],
                                       center, metric)[0])


def score_words(vocab: CandidateVocab, E: EmbeddingMatrix, center: CenterEstimate,
                cfg: ScoringConfig) -> list[ScoredKeyword]:
    """One scored entry per candidate stem, in vocabulary order."""
    dists = distances_from_center(E.vectors, center, cfg.metric)
    scored = []
    for stem in vocab.stems:
        d = float(dists[E.row_index[stem]])
        z = vocab.first_sentence_index[stem]
        score = d / z if cfg.use_position else d
        scored.append(ScoredKeyword(stem=stem, distance=d, z=z, score=score,
                                    position=vocab.first_word_position[stem]))
    return scored


def rank(scored: list[ScoredKeyword], k: int) -> list[ScoredKeyword]:
    """Top-k by descending score; ties broken by smaller z, then earlier
    first occurrence, then stem."""
    if k < 1:
        raise ValueError("k must be >= 1")
    ordered = sorted(scored, key=lambda s: (-s.score, s.z, s.position, s.stem))
    return ordered[:k]


def _reduced_components(cfg: ScoringConfig, n: int, dim: int) -> int:
    m = cfg.pca_components if cfg.pca_components is not None else DEFAULT_PCA_COMPONENTS
    limit = min(dim, n - 1) if cfg.center == "robust_mcd" or cfg.covariance_kind == "robust" \
        else min(dim, n)
    if m > limit:
        logger.warning("reducing pca components from %d to %d (n=%d, dim=%d)",
                       m, limit, n, dim)
        m = limit
    return max(m, 1)


def build_representation(vocab: CandidateVocab, cfg: ScoringConfig) -> EmbeddingMatrix:
    """The configured word vectors for a candidate vocabulary."""
    if cfg.representation == "glove":
        X = build_cooccurrence_matrix(vocab, window=cfg.window, weighting="inverse_offset")
        return train_local_glove(X, cfg.glove)
    C = build_cooccurrence_matrix(vocab, window=cfg.window, weighting="unit")
    return rows_as_vectors(C)


def estimate_center(E: EmbeddingMatrix, cfg: ScoringConfig) -> tuple[EmbeddingMatrix, CenterEstimate]:
    """Optionally PCA-reduce, then estimate the configured center.

    Returns the matrix the distances must be computed in (reduced when the
    robust estimator is involved) together with the center estimate, so
    that center and vectors always live in the same space.
    """
    E_used = E
    if cfg.needs_reduction:
        m = _reduced_components(cfg, E.n, E.dim)
        projection = pca_fit(E, m)
        E_used = pca_transform(E, projection)

    robust = None
    if cfg.center == "robust_mcd" or cfg.covariance_kind == "robust":
        robust = fast_mcd(E_used, seed=cfg.seed)

    if cfg.center == "robust_mcd":
        center = robust
    else:
        center = sample_mean(E_used)

    if cfg.metric == "mahalanobis":
        if cfg.covariance_kind == "robust":
            center = CenterEstimate(mean=center.mean, kind=center.kind,
                                    covariance=robust.covariance,
                                    covariance_kind="robust",
                                    support_size=robust.support_size,
                                    support=robust.support,
                                    regularized=robust.regularized)
        else:
            center = CenterEstimate(mean=center.mean, kind=center.kind,
                                    covariance=covariance(E_used, cfg.covariance_kind),
                                    covariance_kind=cfg.covariance_kind,
                                    support_size=center.support_size,
                                    support=center.support)
    return E_used, center


def extract_keywords(doc: Document, lists: FilterLists | None = None,
                     cfg: ScoringConfig | None = None, k: int = 10) -> list[ScoredKeyword]:
    """Full pipeline: preprocess, embed, estimate the center, score, rank."""
    if cfg is None:
        cfg = ScoringConfig()
    vocab = build_candidate_index(doc, lists)
    E = build_representation(vocab, cfg)
    E_used, center = estimate_center(E, cfg)
    scored = score_words(vocab, E_used, center, cfg)
    return rank(scored, k)
