"""Stemmed exact-match precision/recall/F1 at top-k, aggregated per corpus."""
from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .datasets import LabeledDocument
from .errors import EmptyGold, LokexError
from .text import Document

__all__ = [
    "DEFAULT_KS",
    "EvaluationReport",
    "match_at_k",
    "evaluate_corpus",
]

logger = logging.getLogger(__name__)

DEFAULT_KS = (5, 10, 15)

Extractor = Callable[[Document], Sequence[str]]


def match_at_k(predicted: Sequence[str], gold: Iterable[str], k: int) -> tuple[float, float, float]:
    """Precision, recall and F1 of the top-k predictions against the gold set.

    Precision divides by the number of returned items (min(k, len(predicted))),
    recall by the gold-set size.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    gold = set(gold)
    if not gold:
        raise EmptyGold("empty gold set")
    returned = list(predicted[:k])
    if not returned:
        return 0.0, 0.0, 0.0
    correct = len(set(returned) & gold)
    precision = correct / len(returned)
    recall = correct / len(gold)
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return precision, recall, f1


@dataclass
class EvaluationReport:
    method_label: str
    ks: tuple[int, ...]
    per_document: list[tuple[str, int, float, float, float]] = field(default_factory=list)
    macro: dict[int, tuple[float, float, float]] = field(default_factory=dict)
    evaluated: int = 0
    skipped_empty_gold: list[str] = field(default_factory=list)
    failures: list[tuple[str, str]] = field(default_factory=list)

    def f1_at(self, k: int) -> float:
        return self.macro[k][2]

    def write_csv(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["doc_id", "k", "precision", "recall", "f1"])
            for doc_id, k, p, r, f1 in self.per_document:
                writer.writerow([doc_id, k, f"{p:.6f}", f"{r:.6f}", f"{f1:.6f}"])

    def summary_lines(self) -> list[str]:
        header = f"{'method':<12}" + "".join(f"{'F1@' + str(k):>9}" for k in self.ks)
        row = f"{self.method_label:<12}" + "".join(f"{self.macro[k][2]:>9.3f}" for k in self.ks)
        lines = [header, row,
                 f"documents evaluated: {self.evaluated}"]
        if self.skipped_empty_gold:
            lines.append(f"skipped (empty gold): {len(self.skipped_empty_gold)}")
        if self.failures:
            lines.append(f"failed documents: {len(self.failures)}")
        return lines


def evaluate_corpus(split_part: list[LabeledDocument], method: Extractor,
                    ks: Sequence[int] = DEFAULT_KS,
                    method_label: str = "method") -> EvaluationReport:
    """Run an extractor over a corpus part and macro-average P/R/F1 at each k.

    The extractor maps a document to its full ordered stem ranking; it is
    truncated here at each k. Documents with empty gold sets are skipped;
    documents where the extractor raises are recorded as failures and
    excluded from the averages.
    """
    ks = tuple(ks)
    report = EvaluationReport(method_label=method_label, ks=ks)
    sums = {k: [0.0, 0.0, 0.0] for k in ks}
    for labeled in split_part:
        if not labeled.gold_stems:
            logger.warning("skipping %s: empty gold set", labeled.id)
            report.skipped_empty_gold.append(labeled.id)
            continue
        try:
            predicted = list(method(labeled.document))
        except LokexError as exc:
            logger.warning("extractor failed on %s: %s", labeled.id, exc)
            report.failures.append((labeled.id, str(exc)))
            continue
        report.evaluated += 1
        for k in ks:
            p, r, f1 = match_at_k(predicted, labeled.gold_stems, k)
            report.per_document.append((labeled.id, k, p, r, f1))
            sums[k][0] += p
            sums[k][1] += r
            sums[k][2] += f1
    for k in ks:
        if report.evaluated:
            report.macro[k] = tuple(v / report.evaluated for v in sums[k])
        else:
            report.macro[k] = (0.0, 0.0, 0.0)
    return report
