"""Span-based precision/recall/F0.5 over exact edit triples.

Matching is unclassified: a hypothesis edit counts as a true positive when an
annotator proposed the identical (start, end, replacement) span.  With
multiple annotators, each sentence scores against the annotator that
maximizes its F0.5 (ties to the lower annotator id), and corpus scores
micro-aggregate the per-sentence counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError
from .spans import EditSpan


def f_beta(p: float, r: float, beta: float) -> float:
    """F-beta on whatever scale ``p`` and ``r`` share (fractions or percent).

    Defined as 0 when both inputs are 0.
    """
    b2 = beta * beta
    denom = b2 * p + r
    if denom == 0.0:
        return 0.0
    return (1.0 + b2) * p * r / denom


@dataclass(frozen=True)
class ScoreReport:
    """Micro counts with derived precision, recall, and F0.5 (fractions)."""

    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f_half: float

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int) -> "ScoreReport":
        precision = tp / (tp + fp) if tp + fp else 1.0
        recall = tp / (tp + fn) if tp + fn else 1.0
        return cls(tp, fp, fn, precision, recall, f_beta(precision, recall, 0.5))

    def summary(self) -> str:
        """The one-line CLI rendering, percentages to two decimals."""
        return (
            f"TP {self.tp} FP {self.fp} FN {self.fn} "
            f"P {self.precision * 100:.2f} R {self.recall * 100:.2f} F0.5 {self.f_half * 100:.2f}"
        )


@dataclass(frozen=True)
class SentenceScore:
    tp: int
    fp: int
    fn: int
    annotator: int


def score_sentence(
    hyp_edits: Iterable[EditSpan],
    gold: Sequence[Sequence[EditSpan]],
) -> SentenceScore:
    """Counts for one sentence against its best-matching annotator.

    ``gold`` holds one edit list per annotator; a no-edit annotation is an
    empty list, and a sentence with no annotations at all counts as a single
    annotator with an empty edit set.
    """
    hyp = set(hyp_edits)
    annotators: Sequence[Sequence[EditSpan]] = gold if len(gold) > 0 else [[]]
    best: SentenceScore | None = None
    best_f = -1.0
    for ann_id, edits in enumerate(annotators):
        gold_set = set(edits)
        tp = len(hyp & gold_set)
        fp = len(hyp - gold_set)
        fn = len(gold_set - hyp)
        f = ScoreReport.from_counts(tp, fp, fn).f_half
        if f > best_f:
            best = SentenceScore(tp, fp, fn, ann_id)
            best_f = f
    assert best is not None
    return best


def score_corpus(
    hyp_corpus: Sequence[Iterable[EditSpan]],
    gold_corpus: Sequence[Sequence[Sequence[EditSpan]]],
) -> ScoreReport:
    """Micro-aggregated corpus score: sum sentence counts, then P/R/F0.5."""
    if len(hyp_corpus) != len(gold_corpus):
        raise InputError(
            f"hypothesis has {len(hyp_corpus)} sentences, gold has {len(gold_corpus)}"
        )
    tp = fp = fn = 0
    for hyp, gold in zip(hyp_corpus, gold_corpus):
        s = score_sentence(hyp, gold)
        tp += s.tp
        fp += s.fp
        fn += s.fn
    return ScoreReport.from_counts(tp, fp, fn)
