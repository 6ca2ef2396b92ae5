"""Independent brute-force oracles used by the unit and acceptance tests.

Everything here is deliberately written without touching the production
code paths it checks: plain double loops, exhaustive enumeration, and
simulation.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np


def cooccurrence_pairs(stream: list[str], window: int, inverse_offset: bool = False):
    """All within-window weights by scanning every ordered pair."""
    totals: dict[tuple[str, str], float] = {}
    L = len(stream)
    for t in range(L):
        for u in range(t + 1, min(L, t + window + 1)):
            a, b = stream[t], stream[u]
            if a == b:
                continue
            w = 1.0 / (u - t) if inverse_offset else 1.0
            totals[(a, b)] = totals.get((a, b), 0.0) + w
            totals[(b, a)] = totals.get((b, a), 0.0) + w
    return totals


def exhaustive_mcd(X: np.ndarray, h: int) -> float:
    """Minimum determinant over every h-subset (ML covariance scaling)."""
    best = np.inf
    for idx in combinations(range(X.shape[0]), h):
        sub = X[list(idx)]
        centered = sub - sub.mean(axis=0)
        det = np.linalg.det(centered.T @ centered / h)
        if det < best:
            best = det
    return best


def walk_distribution(weights: np.ndarray, steps: int, damping: float = 0.85,
                      bias: np.ndarray | None = None) -> np.ndarray:
    """Distribution of a teleporting random walk after exactly ``steps`` steps.

    The per-step flow is spelled out node by node: with probability
    ``damping`` the walker follows an edge in proportion to its weight
    (teleporting instead when the node has no edges), otherwise it
    teleports. Teleports land uniformly, or on ``bias`` when given.
    """
    n = weights.shape[0]
    teleport = np.full(n, 1.0 / n) if bias is None else bias / bias.sum()
    p = np.full(n, 1.0 / n)
    row_sums = weights.sum(axis=1)
    for _ in range(steps):
        nxt = np.zeros(n)
        teleport_mass = 0.0
        for v in range(n):
            if row_sums[v] == 0.0:
                teleport_mass += p[v]
                continue
            teleport_mass += (1.0 - damping) * p[v]
            for u in range(n):
                if weights[v, u] > 0.0:
                    nxt[u] += damping * p[v] * weights[v, u] / row_sums[v]
        nxt += teleport_mass * teleport
        p = nxt
    return p


def walk_trajectory(weights: np.ndarray, steps: int, seed: int,
                    damping: float = 0.85) -> np.ndarray:
    """Visit frequencies of one sampled teleporting walk of ``steps`` steps."""
    rng = np.random.default_rng(seed)
    n = weights.shape[0]
    cumrows = []
    for v in range(n):
        total = weights[v].sum()
        cumrows.append(np.cumsum(weights[v]) / total if total > 0 else None)
    visits = np.zeros(n)
    v = int(rng.integers(n))
    moves = rng.random(steps)
    picks = rng.random(steps)
    for t in range(steps):
        visits[v] += 1.0
        if moves[t] < damping and cumrows[v] is not None:
            v = int(np.searchsorted(cumrows[v], picks[t]))
        else:
            v = int(rng.integers(n))
    return visits / steps


def _all_simple_paths(adj: dict[int, dict[int, float]], s: int, t: int):
    """Yield (length, path) for every simple s-t path."""
    stack = [(s, [s], 0.0)]
    while stack:
        node, path, length = stack.pop()
        if node == t:
            yield length, path
            continue
        for nxt, w in adj[node].items():
            if nxt not in path:
                stack.append((nxt, path + [nxt], length + w))


def betweenness_by_enumeration(weights: np.ndarray) -> np.ndarray:
    """Normalized betweenness via exhaustive shortest-path enumeration.

    Edge lengths are 1 / weight. Use only on graphs of <= ~8 nodes and with
    dyadic weights so path lengths compare exactly.
    """
    n = weights.shape[0]
    adj = {
        v: {u: 1.0 / weights[v, u] for u in range(n) if weights[v, u] > 0}
        for v in range(n)
    }
    scores = np.zeros(n)
    if n <= 2:
        return scores
    for s, t in combinations(range(n), 2):
        paths = list(_all_simple_paths(adj, s, t))
        if not paths:
            continue
        dmin = min(length for length, _ in paths)
        geodesics = [path for length, path in paths if length == dmin]
        for path in geodesics:
            for v in path[1:-1]:
                scores[v] += 1.0 / len(geodesics)
    return scores / ((n - 1) * (n - 2) / 2)
