"""Hot numeric kernels with numba and pure-numpy implementations.

The two inner loops that dominate runtime on full articles live here:
sliding-window co-occurrence accumulation and the per-epoch adaptive-gradient
update of the local embedding trainer. Each has a numba ``@njit`` version and
a pure-numpy fallback. The numba path is the default; set the environment
variable ``LOKEX_DISABLE_NUMBA=1`` to force the numpy path (useful for
debugging and for the backend benchmark). When numba is not importable the
numpy path is selected automatically.

Both co-occurrence implementations produce identical counts for unit weights
and agree to rounding for inverse-offset weights. The embedding-epoch
implementations run the same cell-by-cell update sequence; per backend the
result is bit-reproducible for a fixed seed, across backends results agree to
floating-point rounding (the numpy path uses vectorized dot products whose
summation order differs).
"""
from __future__ import annotations

import math
import os

import numpy as np

__all__ = [
    "backend",
    "available_backends",
    "cooccurrence_counts",
    "glove_epoch",
    "get_impl",
]


def _numba_disabled() -> bool:
    return os.environ.get("LOKEX_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}


# ---------------------------------------------------------------------------
# pure-numpy implementations
# ---------------------------------------------------------------------------

def _cooccurrence_numpy(ids: np.ndarray, sents: np.ndarray, n: int, window: int,
                        inverse_offset: bool, within_sentence: bool) -> np.ndarray:
    counts = np.zeros((n, n), dtype=np.float64)
    length = ids.shape[0]
    for offset in range(1, window + 1):
        if offset >= length:
            break
        left = ids[:-offset]
        right = ids[offset:]
        mask = left != right
        if within_sentence:
            mask &= sents[:-offset] == sents[offset:]
        weight = 1.0 / offset if inverse_offset else 1.0
        li, ri = left[mask], right[mask]
        np.add.at(counts, (li, ri), weight)
        np.add.at(counts, (ri, li), weight)
    return counts


def _glove_epoch_numpy(rows, cols, logx, fx, W, Wc, b, bc,
                       gW, gWc, gb, gbc, order, lr) -> float:
    cost = 0.0
    for idx in order:
        i = rows[idx]
        k = cols[idx]
        diff = float(W[i] @ Wc[k]) + b[i] + bc[k] - logx[idx]
        f = fx[idx]
        cost += f * diff * diff
        fd = f * diff * lr
        gw = fd * Wc[k]
        gc = fd * W[i]
        W[i] -= gw / np.sqrt(gW[i])
        Wc[k] -= gc / np.sqrt(gWc[k])
        gW[i] += gw * gw
        gWc[k] += gc * gc
        b[i] -= fd / math.sqrt(gb[i])
        bc[k] -= fd / math.sqrt(gbc[k])
        gb[i] += fd * fd
        gbc[k] += fd * fd
    return cost


_IMPLS: dict[str, dict] = {
    "numpy": {
        "cooccurrence": _cooccurrence_numpy,
        "glove_epoch": _glove_epoch_numpy,
    }
}

_BACKEND = "numpy"

if not _numba_disabled():
    try:
        from numba import njit
    except ImportError:
        pass
    else:
        @njit(cache=True)
        def _cooccurrence_numba(ids, sents, n, window, inverse_offset, within_sentence):  # pragma: no cover - compiled
            counts = np.zeros((n, n), dtype=np.float64)
            length = ids.shape[0]
            for t in range(length):
                i = ids[t]
                stop = min(length, t + window + 1)
                for u in range(t + 1, stop):
                    j = ids[u]
                    if i == j:
                        continue
                    if within_sentence and sents[t] != sents[u]:
                        continue
                    w = 1.0 / (u - t) if inverse_offset else 1.0
                    counts[i, j] += w
                    counts[j, i] += w
            return counts

        @njit(cache=True)
        def _glove_epoch_numba(rows, cols, logx, fx, W, Wc, b, bc,
                               gW, gWc, gb, gbc, order, lr):  # pragma: no cover - compiled
            q = W.shape[1]
            cost = 0.0
            for t in range(order.shape[0]):
                idx = order[t]
                i = rows[idx]
                k = cols[idx]
                diff = b[i] + bc[k] - logx[idx]
                for d in range(q):
                    diff += W[i, d] * Wc[k, d]
                f = fx[idx]
                cost += f * diff * diff
                fd = f * diff * lr
                for d in range(q):
                    gw = fd * Wc[k, d]
                    gc = fd * W[i, d]
                    W[i, d] -= gw / math.sqrt(gW[i, d])
                    Wc[k, d] -= gc / math.sqrt(gWc[k, d])
                    gW[i, d] += gw * gw
                    gWc[k, d] += gc * gc
                b[i] -= fd / math.sqrt(gb[i])
                bc[k] -= fd / math.sqrt(gbc[k])
                gb[i] += fd * fd
                gbc[k] += fd * fd
            return cost

        _IMPLS["numba"] = {
            "cooccurrence": _cooccurrence_numba,
            "glove_epoch": _glove_epoch_numba,
        }
        _BACKEND = "numba"


def backend() -> str:
    """Name of the active kernel backend ("numba" or "numpy")."""
    return _BACKEND


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_IMPLS))


def get_impl(name: str) -> dict:
    """Kernel table for an explicit backend (used by the benchmark)."""
    return _IMPLS[name]


def cooccurrence_counts(ids: np.ndarray, sents: np.ndarray, n: int, window: int,
                        inverse_offset: bool, within_sentence: bool = False) -> np.ndarray:
    ids = np.ascontiguousarray(ids, dtype=np.int64)
    sents = np.ascontiguousarray(sents, dtype=np.int64)
    return _IMPLS[_BACKEND]["cooccurrence"](ids, sents, int(n), int(window),
                                            bool(inverse_offset), bool(within_sentence))


def glove_epoch(rows, cols, logx, fx, W, Wc, b, bc, gW, gWc, gb, gbc, order, lr) -> float:
    """Run one in-place epoch over the nonzero cells in ``order``; returns the epoch cost."""
    return _IMPLS[_BACKEND]["glove_epoch"](rows, cols, logx, fx, W, Wc, b, bc,
                                           gW, gWc, gb, gbc, order, float(lr))
