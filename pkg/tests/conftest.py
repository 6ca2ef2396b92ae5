import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lokex.text import Document, FilterLists, make_document

WORD_POOL = [
    "alpha", "bravo", "charlie", "delta", "echo", "foxtrot", "golf", "hotel",
    "india", "juliet", "kilo", "lima", "mike", "november", "oscar", "papa",
    "quebec", "romeo", "sierra", "tango", "uniform", "victor", "whiskey",
    "xray", "yankee", "zulu", "anchor", "beacon", "copper", "dagger",
    "ember", "falcon", "glacier", "harbor", "ingot", "jigsaw", "kernel",
    "lantern", "meadow", "nickel", "orbit", "pylon", "quartz", "rudder",
    "saddle", "timber", "umbra", "vertex", "willow", "zephyr",
]


def synthetic_document(rng: np.random.Generator, doc_id: str = "synthetic",
                       n_sentences: int | None = None,
                       vocab_size: int | None = None) -> Document:
    """A random document over a pool of content words."""
    if n_sentences is None:
        n_sentences = int(rng.integers(3, 9))
    if vocab_size is None:
        vocab_size = int(rng.integers(8, len(WORD_POOL) + 1))
    pool = WORD_POOL[:vocab_size]
    sentences = []
    for _ in range(n_sentences):
        length = int(rng.integers(4, 12))
        words = [pool[int(rng.integers(len(pool)))] for _ in range(length)]
        sentences.append(" ".join(words).capitalize() + ".")
    return make_document(doc_id, " ".join(sentences))


@pytest.fixture
def filter_lists() -> FilterLists:
    return FilterLists.default()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
