"""Local word-vector representations.

Two representations are built from a single document's own statistics:
the term-term co-occurrence matrix (each word's vector is its row of
within-window counts) and locally trained embedding vectors fitted so that
vector dot products plus biases match log co-occurrence weights.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _accel
from .errors import DegenerateCooccurrence, DimensionMismatch
from .text import CandidateVocab

__all__ = [
    "CooccurrenceMatrix",
    "GloVeConfig",
    "GloVeModel",
    "EmbeddingMatrix",
    "build_cooccurrence_matrix",
    "rows_as_vectors",
    "fit_glove",
    "train_local_glove",
    "glove_objective",
]

DEFAULT_WINDOW = 10


@dataclass
class CooccurrenceMatrix:
    """Symmetric word-word co-occurrence weights over the filtered stream."""

    stems: list[str]
    counts: np.ndarray  # (n, n) float64, zero diagonal
    window: int
    weighting: str  # "unit" | "inverse_offset"

    @property
    def n(self) -> int:
        return len(self.stems)


@dataclass
class GloVeConfig:
    """Training settings; the weighting-function defaults are the standard ones."""

    q: int = 50
    x_max: float = 100.0
    alpha: float = 0.75
    window: int = DEFAULT_WINDOW
    epochs: int = 100
    learning_rate: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be >= 1")
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError("alpha must be in (0, 1]")
        if self.x_max <= 0:
            raise ValueError("x_max must be positive")


@dataclass
class EmbeddingMatrix:
    """Word vectors: one row per candidate stem."""

    stems: list[str]
    vectors: np.ndarray  # (n, dim) float64
    kind: str  # "glove" | "term_term" | "pca_reduced"
    row_index: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.row_index:
            self.row_index = {s: i for i, s in enumerate(self.stems)}
        if self.vectors.shape[0] != len(self.stems):
            raise DimensionMismatch(
                f"{self.vectors.shape[0]} rows for {len(self.stems)} stems")

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def vector(self, stem: str) -> np.ndarray:
        return self.vectors[self.row_index[stem]]

    def save_text(self, path: str | Path) -> None:
        """One line per word: ``stem v1 v2 ... vdim`` with 6 decimal places."""
        with open(path, "w", encoding="utf-8") as fh:
            for i, stem in enumerate(self.stems):
                coords = " ".join(f"{x:.6f}" for x in self.vectors[i])
                fh.write(f"{stem} {coords}\n")


def build_cooccurrence_matrix(vocab: CandidateVocab, window: int = DEFAULT_WINDOW,
                              weighting: str = "unit",
                              within_sentence: bool = False) -> CooccurrenceMatrix:
    """Accumulate co-occurrence weights over the filtered stem stream.

    For every stream position t and offset 1 <= o <= window, the (ordered)
    pair at (t, t+o) adds weight 1 (unit) or 1/o (inverse_offset) to both
    symmetric entries. Same-stem pairs are skipped, so the diagonal stays
    zero. Windows slide across sentence boundaries unless
    ``within_sentence`` is set.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    if weighting not in ("unit", "inverse_offset"):
        raise ValueError(f"unknown weighting {weighting!r}")
    if not vocab.stream:
        raise ValueError("empty stream")
    ids = np.asarray(vocab.stream_ids(), dtype=np.int64)
    sents = np.asarray(vocab.stream_sentences, dtype=np.int64)
    counts = _accel.cooccurrence_counts(
        ids, sents, vocab.n, window,
        inverse_offset=(weighting == "inverse_offset"),
        within_sentence=within_sentence,
    )
    return CooccurrenceMatrix(stems=list(vocab.stems), counts=counts,
                              window=window, weighting=weighting)


def rows_as_vectors(C: CooccurrenceMatrix) -> EmbeddingMatrix:
    """Each word expressed as its row of co-occurrences with all words."""
    return EmbeddingMatrix(stems=list(C.stems), vectors=C.counts.copy(), kind="term_term")


@dataclass
class GloVeModel:
    """Raw factors of a trained model; word vectors are ``W`` + ``Wc`` rows."""

    stems: list[str]
    W: np.ndarray
    Wc: np.ndarray
    b: np.ndarray
    bc: np.ndarray
    config: GloVeConfig
    loss_history: list[float]

    def embedding(self) -> EmbeddingMatrix:
        return EmbeddingMatrix(stems=list(self.stems), vectors=self.W + self.Wc, kind="glove")


def _nonzero_cells(X: CooccurrenceMatrix):
    rows, cols = np.nonzero(X.counts)
    if rows.size == 0:
        raise DegenerateCooccurrence("co-occurrence matrix has no nonzero entries")
    vals = X.counts[rows, cols]
    return rows.astype(np.int64), cols.astype(np.int64), vals


def _weighting(vals: np.ndarray, x_max: float, alpha: float) -> np.ndarray:
    return np.where(vals < x_max, (vals / x_max) ** alpha, 1.0)


def fit_glove(X: CooccurrenceMatrix, cfg: GloVeConfig | None = None) -> GloVeModel:
    """Fit word and context factors by adaptive-gradient descent.

    Nonzero cells are visited in a freshly shuffled order every epoch; the
    shuffle and the initialization both derive from ``cfg.seed``, so a fixed
    seed reproduces the run bit-for-bit on a given backend.
    """
    if cfg is None:
        cfg = GloVeConfig()
    rows, cols, vals = _nonzero_cells(X)
    logx = np.log(vals)
    fx = _weighting(vals, cfg.x_max, cfg.alpha)
    n = X.n
    q = cfg.q
    rng = np.random.default_rng(cfg.seed)
    scale = 0.5 / q
    W = rng.uniform(-scale, scale, size=(n, q))
    Wc = rng.uniform(-scale, scale, size=(n, q))
    b = rng.uniform(-scale, scale, size=n)
    bc = rng.uniform(-scale, scale, size=n)
    gW = np.ones_like(W)
    gWc = np.ones_like(Wc)
    gb = np.ones_like(b)
    gbc = np.ones_like(bc)
    history = [_objective(rows, cols, logx, fx, W, Wc, b, bc)]
    for _ in range(cfg.epochs):
        order = rng.permutation(rows.size)
        _accel.glove_epoch(rows, cols, logx, fx, W, Wc, b, bc,
                           gW, gWc, gb, gbc, order, cfg.learning_rate)
        history.append(_objective(rows, cols, logx, fx, W, Wc, b, bc))
    return GloVeModel(stems=list(X.stems), W=W, Wc=Wc, b=b, bc=bc,
                      config=cfg, loss_history=history)


def _objective(rows, cols, logx, fx, W, Wc, b, bc) -> float:
    residual = np.einsum("ij,ij->i", W[rows], Wc[cols]) + b[rows] + bc[cols] - logx
    return float(np.sum(fx * residual * residual))


def glove_objective(X: CooccurrenceMatrix, model: GloVeModel) -> float:
    """Weighted least-squares objective of ``model`` on the nonzero cells of ``X``."""
    rows, cols, vals = _nonzero_cells(X)
    fx = _weighting(vals, model.config.x_max, model.config.alpha)
    return _objective(rows, cols, np.log(vals), fx, model.W, model.Wc, model.b, model.bc)


def train_local_glove(X: CooccurrenceMatrix, cfg: GloVeConfig | None = None) -> EmbeddingMatrix:
    """Train on ``X`` and return word + context vector sums as the embedding."""
    return fit_glove(X, cfg).embedding()
