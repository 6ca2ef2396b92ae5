"""Benchmark collection loading, train/test splits, and gold-standard stems.

A collection directory holds ``<id>.txt`` / ``<id>.key`` pairs: UTF-8 full
text plus one gold keyphrase per line. The semeval layout keeps its
published division in ``train/`` and ``test/`` subdirectories; document ids
then carry the subdirectory prefix.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

from .errors import EmptyCollection, InsufficientDocuments
from .porter import stem
from .text import Document, make_document, tokenize

__all__ = [
    "LabeledDocument",
    "Split",
    "DATASETS",
    "gold_stems_from_phrases",
    "load_collection",
    "make_split",
]

logger = logging.getLogger(__name__)

DATASETS = ("nus", "semeval", "krapivin", "custom")
_KRAPIVIN_TEST = 400
_NUS_TEST = 100


@dataclass
class LabeledDocument:
    document: Document
    gold_keyphrases: list[str]
    gold_stems: frozenset[str]

    @property
    def id(self) -> str:
        return self.document.id


@dataclass
class Split:
    train: list[LabeledDocument]
    test: list[LabeledDocument]
    dataset: str

    def part(self, name: str) -> list[LabeledDocument]:
        if name == "train":
            return self.train
        if name == "test":
            return self.test
        raise ValueError(f"unknown split part {name!r}")


def gold_stems_from_phrases(phrases) -> frozenset[str]:
    """Unigram stems of the gold keyphrases: tokenize, keep tokens of
    length >= 2, stem, deduplicate."""
    stems = set()
    for phrase in phrases:
        for token in tokenize(phrase):
            if len(token) >= 2:
                stems.add(stem(token))
    return frozenset(stems)


def _load_pairs(directory: Path, prefix: str = "") -> list[LabeledDocument]:
    docs = []
    for txt in sorted(directory.glob("*.txt")):
        key = txt.with_suffix(".key")
        if not key.exists():
            logger.warning("skipping %s: no matching .key file", txt.name)
            continue
        doc_id = f"{prefix}{txt.stem}"
        document = make_document(doc_id, txt.read_text(encoding="utf-8"))
        phrases = [line.strip() for line in key.read_text(encoding="utf-8").splitlines()
                   if line.strip()]
        docs.append(LabeledDocument(
            document=document,
            gold_keyphrases=phrases,
            gold_stems=gold_stems_from_phrases(phrases),
        ))
    return docs


def load_collection(path: str | Path, dataset: str = "custom") -> list[LabeledDocument]:
    """Load a collection, id-sorted regardless of filesystem order."""
    if dataset not in DATASETS:
        raise ValueError(f"unknown dataset {dataset!r}")
    root = Path(path)
    if not root.is_dir():
        raise EmptyCollection(f"{root} is not a directory")
    if dataset == "semeval":
        docs = []
        for part in ("train", "test"):
            sub = root / part
            if sub.is_dir():
                docs.extend(_load_pairs(sub, prefix=f"{part}/"))
        if not docs:  # flat fallback: split assignment then needs a manifest
            docs = _load_pairs(root)
    else:
        docs = _load_pairs(root)
    if not docs:
        raise EmptyCollection(f"no .txt/.key pairs under {root}")
    docs.sort(key=lambda d: d.id)
    return docs


def _read_manifest(path: str | Path) -> dict[str, set[str]]:
    sections: dict[str, set[str]] = {"train": set(), "test": set()}
    current = None
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        entry = line.strip()
        if not entry or entry.startswith("#"):
            continue
        if entry.lower() in ("[train]", "[test]"):
            current = entry[1:-1].lower()
            continue
        if current is None:
            raise ValueError(f"{path}: id {entry!r} appears before a [train]/[test] header")
        sections[current].add(entry)
    return sections


def make_split(docs: list[LabeledDocument], dataset: str,
               manifest: str | Path | None = None) -> Split:
    """Assign documents to train/test parts.

    krapivin: first 400 ids are the test set; nus: last 100 ids; semeval:
    by the ``train/`` / ``test/`` id prefix of its published layout;
    custom: ids listed in a manifest file with [train] / [test] sections.
    """
    if dataset == "krapivin":
        if len(docs) <= _KRAPIVIN_TEST:
            raise InsufficientDocuments(
                f"krapivin split needs more than {_KRAPIVIN_TEST} documents, got {len(docs)}")
        return Split(train=docs[_KRAPIVIN_TEST:], test=docs[:_KRAPIVIN_TEST], dataset=dataset)
    if dataset == "nus":
        if len(docs) <= _NUS_TEST:
            raise InsufficientDocuments(
                f"nus split needs more than {_NUS_TEST} documents, got {len(docs)}")
        return Split(train=docs[:-_NUS_TEST], test=docs[-_NUS_TEST:], dataset=dataset)
    if dataset == "semeval":
        train = [d for d in docs if d.id.startswith("train/")]
        test = [d for d in docs if d.id.startswith("test/")]
        if not train and not test:
            raise InsufficientDocuments(
                "semeval split expects ids prefixed train/ or test/ "
                "(published directory layout)")
        return Split(train=train, test=test, dataset=dataset)
    if dataset == "custom":
        if manifest is None:
            raise ValueError("custom split needs a manifest file")
        sections = _read_manifest(manifest)
        by_id = {d.id: d for d in docs}
        missing = (sections["train"] | sections["test"]) - set(by_id)
        if missing:
            raise InsufficientDocuments(
                f"manifest lists {len(missing)} unknown ids, e.g. {sorted(missing)[:3]}")
        return Split(
            train=[by_id[i] for i in sorted(sections["train"])],
            test=[by_id[i] for i in sorted(sections["test"])],
            dataset=dataset,
        )
    raise ValueError(f"unknown dataset {dataset!r}")
