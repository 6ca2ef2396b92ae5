"""Document preprocessing.

Turns raw text into the ordered stream of filtered stems and the candidate
vocabulary (with first-sentence and first-position metadata) that every
downstream stage consumes.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import EmptyDocument, NoCandidates
from .porter import stem

__all__ = [
    "Document",
    "FilterLists",
    "CandidateVocab",
    "split_sentences",
    "tokenize",
    "filter_token",
    "stem",
    "build_candidate_index",
    "make_document",
    "read_document",
]

# Words that commonly precede a period without ending a sentence.
_ABBREVIATIONS = frozenset({
    "fig", "figs", "eq", "eqs", "sec", "secs", "no", "nos", "vol", "vols",
    "et", "al", "etc", "vs", "cf", "ca", "resp", "ref", "refs", "approx",
    "dept", "univ", "ed", "eds", "pp", "eg", "ie", "inc", "ltd", "co",
    "corp", "dr", "mr", "mrs", "ms", "prof", "st", "jr",
})

# Maximal runs of letters/digits; underscores and hyphens act as separators.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)
_BOUNDARY_RE = re.compile(r"([.!?]+)\s+")
_PARAGRAPH_RE = re.compile(r"\n\s*\n")


@dataclass(frozen=True)
class Document:
    """A text document split into 1-based, contiguous sentences."""

    id: str
    raw_text: str
    sentences: tuple[str, ...]

    @property
    def sentence_count(self) -> int:
        return len(self.sentences)


@dataclass(frozen=True)
class FilterLists:
    """Word lists whose union is removed from the candidate stream."""

    stopwords: frozenset[str]
    common_adjectives: frozenset[str]
    reporting_verbs: frozenset[str]
    determiners: frozenset[str]
    functional_words: frozenset[str]

    @property
    def union(self) -> frozenset[str]:
        return (
            self.stopwords
            | self.common_adjectives
            | self.reporting_verbs
            | self.determiners
            | self.functional_words
        )

    @classmethod
    def from_dir(cls, directory: str | Path) -> "FilterLists":
        """Load the five lists from ``<name>.txt`` files in ``directory``.

        Missing files yield empty sets, so a directory can override only
        some of the lists when combined with :meth:`default`.
        """
        directory = Path(directory)
        parts = {}
        for name in ("stopwords", "common_adjectives", "reporting_verbs",
                     "determiners", "functional_words"):
            path = directory / f"{name}.txt"
            parts[name] = load_word_list(path) if path.exists() else frozenset()
        return cls(**parts)

    @classmethod
    def default(cls) -> "FilterLists":
        return _default_lists()


def load_word_list(path: str | Path) -> frozenset[str]:
    """Read a filter-list file: one lowercase token per line, ``#`` comments."""
    words = set()
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        entry = line.split("#", 1)[0].strip()
        if not entry:
            continue
        if any(ch.isspace() for ch in entry):
            raise ValueError(f"{path}:{lineno}: filter entries must be single tokens")
        words.add(entry.lower())
    return frozenset(words)


@lru_cache(maxsize=1)
def _default_lists() -> FilterLists:
    data = resources.files("lokex") / "data"
    return FilterLists(
        stopwords=load_word_list(data / "stopwords.txt"),
        common_adjectives=load_word_list(data / "common_adjectives.txt"),
        reporting_verbs=load_word_list(data / "reporting_verbs.txt"),
        determiners=load_word_list(data / "determiners.txt"),
        functional_words=load_word_list(data / "functional_words.txt"),
    )


def split_sentences(raw_text: str) -> list[str]:
    """Rule-based sentence splitting.

    A sentence ends at ``.``, ``!`` or ``?`` followed by whitespace and an
    uppercase letter or digit, unless the preceding word is a known
    abbreviation. Blank lines always separate sentences, which keeps
    headings without terminators from merging into the following paragraph.
    """
    if not raw_text or not raw_text.strip():
        raise EmptyDocument("document contains no text")
    sentences: list[str] = []
    for block in _PARAGRAPH_RE.split(raw_text):
        if block.strip():
            sentences.extend(_split_block(block))
    return sentences


def _split_block(block: str) -> list[str]:
    parts = []
    start = 0
    for match in _BOUNDARY_RE.finditer(block):
        nxt = match.end()
        if nxt >= len(block):
            break
        ch = block[nxt]
        if not (ch.isupper() or ch.isdigit()):
            continue
        if _is_abbreviation(block, match.start(1)):
            continue
        piece = block[start:match.end(1)].strip()
        if piece:
            parts.append(piece)
        start = nxt
    tail = block[start:].strip()
    if tail:
        parts.append(tail)
    return parts


def _is_abbreviation(text: str, punct_idx: int) -> bool:
    i = punct_idx
    while i > 0 and not text[i - 1].isspace():
        i -= 1
    word = text[i:punct_idx].strip("\"'()[]{}<>").lower()
    if not word:
        return False
    return word.rstrip(".") in _ABBREVIATIONS or word.replace(".", "") in _ABBREVIATIONS


def tokenize(sentence: str) -> list[str]:
    """Lowercased maximal alphanumeric runs; hyphenated words split apart."""
    return _TOKEN_RE.findall(sentence.lower())


def filter_token(token: str, lists: FilterLists) -> bool:
    """True when the token is kept as a candidate."""
    if len(token) < 2:
        return False
    if token.isdigit():
        return False
    return token not in lists.union


@dataclass
class CandidateVocab:
    """Vocabulary of candidate stems with positional metadata.

    ``stems`` is ordered by first appearance; ``stream`` is the full
    filtered, stemmed token stream with ``stream_sentences`` giving the
    1-based sentence index of every stream position.
    """

    stems: list[str]
    first_sentence_index: dict[str, int]
    first_word_position: dict[str, int]
    term_frequency: dict[str, int]
    stream: list[str]
    stream_sentences: list[int]

    @property
    def n(self) -> int:
        return len(self.stems)

    @property
    def row_index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.stems)}

    def stream_ids(self) -> list[int]:
        """Stream rewritten as row indices into ``stems``."""
        index = self.row_index
        return [index[s] for s in self.stream]

    def occurrence_positions(self) -> dict[str, list[int]]:
        """0-based stream positions of every occurrence, per stem."""
        positions: dict[str, list[int]] = {s: [] for s in self.stems}
        for pos, s in enumerate(self.stream):
            positions[s].append(pos)
        return positions


def build_candidate_index(doc: Document, lists: FilterLists | None = None) -> CandidateVocab:
    """Build the candidate vocabulary for a document.

    Both the surface token and its stem must pass :func:`filter_token`;
    the second check keeps degenerate stems (single letters, digit runs)
    out of the vocabulary.
    """
    if lists is None:
        lists = FilterLists.default()
    if not doc.sentences:
        raise EmptyDocument(f"document {doc.id!r} has no sentences")
    stems_order: list[str] = []
    first_sentence: dict[str, int] = {}
    first_position: dict[str, int] = {}
    frequency: Counter[str] = Counter()
    stream: list[str] = []
    stream_sentences: list[int] = []
    for s_idx, sentence in enumerate(doc.sentences, start=1):
        for token in tokenize(sentence):
            if not filter_token(token, lists):
                continue
            stemmed = stem(token)
            if not filter_token(stemmed, lists):
                continue
            if stemmed not in first_sentence:
                first_sentence[stemmed] = s_idx
                first_position[stemmed] = len(stream)
                stems_order.append(stemmed)
            frequency[stemmed] += 1
            stream.append(stemmed)
            stream_sentences.append(s_idx)
    if not stream:
        raise NoCandidates(f"document {doc.id!r} has no candidate words after filtering")
    return CandidateVocab(
        stems=stems_order,
        first_sentence_index=first_sentence,
        first_word_position=first_position,
        term_frequency=dict(frequency),
        stream=stream,
        stream_sentences=stream_sentences,
    )


def make_document(doc_id: str, raw_text: str) -> Document:
    return Document(id=doc_id, raw_text=raw_text, sentences=tuple(split_sentences(raw_text)))


def read_document(path: str | Path) -> Document:
    path = Path(path)
    return make_document(path.stem, path.read_text(encoding="utf-8"))
