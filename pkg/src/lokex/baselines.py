"""Comparison systems: frequency, position and graph-of-words rankers.

All graph methods run on the undirected graph whose nodes are the candidate
stems and whose edge weights are within-window co-occurrence counts, built
from the same filtered stream as the vector representations.

The original descriptions of the walk-based and betweenness rankers restrict
candidates with a part-of-speech filter; to stay dependency-free every
method here runs on the same filtered stream. Externally produced candidate
streams can be evaluated by preparing documents accordingly.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from itertools import count
from pathlib import Path

import numpy as np

from .scoring import ScoringConfig, extract_keywords
from .text import CandidateVocab, Document, FilterLists, build_candidate_index
from .vectors import DEFAULT_WINDOW, build_cooccurrence_matrix

__all__ = [
    "GraphOfWords",
    "DfTable",
    "RankedWord",
    "build_graph",
    "pagerank",
    "position_bias",
    "betweenness",
    "k_core",
    "core_numbers",
    "tfidf_rank",
    "fnw_rank",
    "run_baseline",
    "BASELINE_METHODS",
]

BASELINE_METHODS = ("tfidf", "fnw", "pr", "sr", "posr", "bt", "lvb")


@dataclass
class RankedWord:
    stem: str
    score: float

    def __iter__(self):
        return iter((self.stem, self.score))


@dataclass
class GraphOfWords:
    """Undirected weighted graph over candidate stems."""

    stems: list[str]
    weights: np.ndarray  # (n, n) symmetric, zero diagonal

    @property
    def n(self) -> int:
        return len(self.stems)

    def edge_count(self) -> int:
        return int(np.count_nonzero(np.triu(self.weights)))


def build_graph(vocab: CandidateVocab, window: int = DEFAULT_WINDOW) -> GraphOfWords:
    """Graph with co-occurrence counts as edge weights (shared construction
    with the unit-weighted co-occurrence matrix)."""
    C = build_cooccurrence_matrix(vocab, window=window, weighting="unit")
    return GraphOfWords(stems=C.stems, weights=C.counts)


def pagerank(g: GraphOfWords, damping: float = 0.85, tol: float = 1e-6,
             max_iter: int = 100, bias: dict[str, float] | None = None) -> dict[str, float]:
    """Weighted PageRank by power iteration.

    Transitions from a node are proportional to edge weights; the teleport
    distribution is uniform, or ``bias`` normalized to sum one. Dangling
    nodes teleport with their whole mass. Iterates until the L1 change
    drops below ``tol``.
    """
    n = g.n
    if n == 0:
        raise ValueError("empty graph")
    W = g.weights
    out = W.sum(axis=1)
    dangling = out == 0.0
    T = np.zeros_like(W)
    nz = ~dangling
    T[nz] = W[nz] / out[nz, None]
    if bias is None:
        teleport = np.full(n, 1.0 / n)
    else:
        raw = np.array([bias.get(s, 0.0) for s in g.stems], dtype=np.float64)
        total = raw.sum()
        if total <= 0:
            raise ValueError("bias weights must have a positive sum")
        teleport = raw / total
    p = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        new = damping * (T.T @ p + p[dangling].sum() * teleport) + (1.0 - damping) * teleport
        if np.abs(new - p).sum() < tol:
            p = new
            break
        p = new
    return dict(zip(g.stems, p.tolist()))


def position_bias(vocab: CandidateVocab) -> dict[str, float]:
    """Sum of reciprocal 1-based stream positions per stem, normalized to 1."""
    raw = {s: 0.0 for s in vocab.stems}
    for pos, s in enumerate(vocab.stream, start=1):
        raw[s] += 1.0 / pos
    total = sum(raw.values())
    return {s: v / total for s, v in raw.items()}


def betweenness(g: GraphOfWords) -> dict[str, float]:
    """Brandes betweenness with edge length 1/weight, normalized so that a
    vertex lying on every shortest path between all other pairs scores 1."""
    n = g.n
    scores = np.zeros(n)
    if n > 2:
        adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        rows, cols = np.nonzero(np.triu(g.weights))
        for i, j in zip(rows.tolist(), cols.tolist()):
            length = 1.0 / g.weights[i, j]
            adj[i].append((j, length))
            adj[j].append((i, length))
        for s in range(n):
            order, preds, sigma = _dijkstra_paths(adj, n, s)
            delta = np.zeros(n)
            for w in reversed(order):
                coeff = (1.0 + delta[w]) / sigma[w]
                for v in preds[w]:
                    delta[v] += sigma[v] * coeff
                if w != s:
                    scores[w] += delta[w]
        # each unordered pair is accumulated twice on an undirected graph
        scores /= (n - 1) * (n - 2)
    return dict(zip(g.stems, scores.tolist()))


def _dijkstra_paths(adj, n: int, s: int):
    dist = np.full(n, np.inf)
    sigma = np.zeros(n)
    done = np.zeros(n, dtype=bool)
    preds: list[list[int]] = [[] for _ in range(n)]
    dist[s] = 0.0
    sigma[s] = 1.0
    heap = [(0.0, s)]
    order = []
    while heap:
        d, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        order.append(v)
        for w, length in adj[v]:
            nd = d + length
            if nd < dist[w]:
                dist[w] = nd
                sigma[w] = sigma[v]
                preds[w] = [v]
                heapq.heappush(heap, (nd, w))
            elif nd == dist[w] and not done[w]:
                sigma[w] += sigma[v]
                preds[w].append(v)
    return order, preds, sigma


def core_numbers(g: GraphOfWords, weighted: bool = True) -> np.ndarray:
    """Generalized core number per vertex.

    Vertices are peeled in order of current degree (unweighted) or current
    strength, the sum of incident edge weights (weighted); a vertex's core
    number is the largest peeling level reached when it is removed.
    """
    n = g.n
    core = np.zeros(n)
    if n == 0:
        return core
    if weighted:
        strength = g.weights.sum(axis=1).astype(np.float64)
        contrib = g.weights
    else:
        contrib = (g.weights > 0).astype(np.float64)
        strength = contrib.sum(axis=1)
    alive = np.ones(n, dtype=bool)
    heap = [(strength[v], v) for v in range(n)]
    heapq.heapify(heap)
    level = 0.0
    removed = 0
    while removed < n:
        s, v = heapq.heappop(heap)
        if not alive[v] or s != strength[v]:
            continue
        level = max(level, s)
        core[v] = level
        alive[v] = False
        removed += 1
        neighbors = np.nonzero(contrib[v])[0]
        for u in neighbors.tolist():
            if alive[u]:
                strength[u] -= contrib[v, u]
                heapq.heappush(heap, (strength[u], u))
    return core


def k_core(g: GraphOfWords, weighted: bool = True) -> set[str]:
    """The main core: vertices of the highest non-empty peeling level."""
    if g.n == 0:
        return set()
    core = core_numbers(g, weighted=weighted)
    top = core.max()
    return {g.stems[i] for i in np.nonzero(core == top)[0]}


@dataclass
class DfTable:
    """Per-collection document frequencies."""

    df: dict[str, int]
    total_documents: int
    collection_id: str = ""

    def get(self, stem: str) -> int:
        return self.df.get(stem, 0)

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"#docs={self.total_documents}\n")
            for stem in sorted(self.df):
                fh.write(f"{stem}\t{self.df[stem]}\n")

    @classmethod
    def load(cls, path: str | Path, collection_id: str = "") -> "DfTable":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        if not lines or not lines[0].startswith("#docs="):
            raise ValueError(f"{path}: missing '#docs=<N>' header")
        total = int(lines[0].split("=", 1)[1])
        df = {}
        for line in lines[1:]:
            if not line.strip():
                continue
            stem, value = line.split("\t")
            df[stem] = int(value)
        return cls(df=df, total_documents=total, collection_id=collection_id)


def df_from_vocabs(vocabs, collection_id: str = "") -> DfTable:
    """Document frequencies over an iterable of candidate vocabularies."""
    df: dict[str, int] = {}
    total = 0
    for vocab in vocabs:
        total += 1
        for stem in vocab.stems:
            df[stem] = df.get(stem, 0) + 1
    return DfTable(df=df, total_documents=total, collection_id=collection_id)


def _ranked(vocab: CandidateVocab, scores: dict[str, float], k: int,
            ascending: bool = False) -> list[RankedWord]:
    sign = 1.0 if ascending else -1.0
    ordered = sorted(
        vocab.stems,
        key=lambda s: (sign * scores[s], vocab.first_sentence_index[s],
                       vocab.first_word_position[s], s),
    )
    return [RankedWord(stem=s, score=scores[s]) for s in ordered[:k]]


def tfidf_rank(vocab: CandidateVocab, df: DfTable, k: int = 10) -> list[RankedWord]:
    """tf(w) * ln(N / (1 + df(w))); unknown stems count as df 0."""
    if df.total_documents < 1:
        raise ValueError("df table covers no documents")
    scores = {
        s: vocab.term_frequency[s] * math.log(df.total_documents / (1 + df.get(s)))
        for s in vocab.stems
    }
    return _ranked(vocab, scores, k)


def fnw_rank(vocab: CandidateVocab, k: int = 10) -> list[RankedWord]:
    """Words in order of first occurrence; the score is the stream position."""
    scores = {s: float(vocab.first_word_position[s]) for s in vocab.stems}
    return _ranked(vocab, scores, k, ascending=True)


def run_baseline(method: str, doc: Document, lists: FilterLists | None = None,
                 df: DfTable | None = None, k: int = 10,
                 window: int = DEFAULT_WINDOW, seed: int = 0) -> list[RankedWord]:
    """Dispatch a baseline by name (one of ``BASELINE_METHODS``)."""
    if method not in BASELINE_METHODS:
        raise ValueError(f"unknown baseline {method!r}")
    if method == "lvb":
        cfg = ScoringConfig(use_position=False, window=window, seed=seed)
        scored = extract_keywords(doc, lists, cfg, k)
        return [RankedWord(stem=s.stem, score=s.score) for s in scored]
    vocab = build_candidate_index(doc, lists)
    if method == "tfidf":
        if df is None:
            raise ValueError("tfidf needs a document-frequency table")
        return tfidf_rank(vocab, df, k)
    if method == "fnw":
        return fnw_rank(vocab, k)
    g = build_graph(vocab, window=window)
    if method in ("pr", "sr"):
        scores = pagerank(g)
    elif method == "posr":
        scores = pagerank(g, bias=position_bias(vocab))
    else:  # bt
        scores = betweenness(g)
    return _ranked(vocab, scores, k)
