"""Exact binary-classification metrics.

The polarized class is the positive class throughout. All operations are
pure functions over immutable inputs; the same inputs always produce
bit-identical outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .errors import (
    MissingPredictionError,
    RangeError,
    UnknownIdError,
    ValidationError,
)

NEUTRAL = 0
POLARIZED = 1

SPLITS = ("dev", "test")


@dataclass(frozen=True)
class GoldLabels:
    """Gold labels keyed by opaque sample id; labels are 0 (neutral) or 1 (polarized)."""

    entries: Mapping[str, int]

    def __post_init__(self):
        if not self.entries:
            raise ValidationError("gold label set is empty")
        for sample_id, label in self.entries.items():
            if label not in (NEUTRAL, POLARIZED):
                raise ValidationError(
                    f"gold label for id {sample_id!r} must be 0 or 1, got {label!r}"
                )

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def positives(self) -> int:
        return sum(self.entries.values())

    @property
    def prevalence(self) -> float:
        return self.positives / len(self.entries)


@dataclass(frozen=True)
class PredictionRun:
    """Per-sample probabilities of the polarized class for one (track, model, split)."""

    track: str
    model_id: str
    split: str
    probs: Mapping[str, float]

    def __post_init__(self):
        if self.split not in SPLITS:
            raise ValidationError(f"split must be one of {SPLITS}, got {self.split!r}")
        if not self.probs:
            raise ValidationError("prediction run is empty")
        for sample_id, prob in self.probs.items():
            if not math.isfinite(prob) or not 0.0 <= prob <= 1.0:
                raise RangeError(sample_id, prob)

    def __len__(self) -> int:
        return len(self.probs)

    def ids(self) -> frozenset[str]:
        return frozenset(self.probs)


@dataclass(frozen=True)
class ConfusionCounts:
    """Polarized-vs-neutral confusion counts (polarized is positive)."""

    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def n(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    @property
    def predicted_positive(self) -> int:
        return self.tp + self.fp

    @property
    def gold_positive(self) -> int:
        return self.tp + self.fn


@dataclass(frozen=True)
class MetricReport:
    """Accuracy plus per-class precision/recall/F1, binary F1 and macro F1."""

    accuracy: float
    precision_pos: float
    recall_pos: float
    f1_binary: float
    precision_neg: float
    recall_neg: float
    f1_neg: float
    f1_macro: float
    counts: ConfusionCounts
    n: int

    def macro_precision(self) -> float:
        return (self.precision_pos + self.precision_neg) / 2.0

    def macro_recall(self) -> float:
        return (self.recall_pos + self.recall_neg) / 2.0

    def as_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "precision_pos": self.precision_pos,
            "recall_pos": self.recall_pos,
            "f1_binary": self.f1_binary,
            "precision_neg": self.precision_neg,
            "recall_neg": self.recall_neg,
            "f1_neg": self.f1_neg,
            "f1_macro": self.f1_macro,
            "counts": {
                "tp": self.counts.tp,
                "fp": self.counts.fp,
                "fn": self.counts.fn,
                "tn": self.counts.tn,
            },
            "n": self.n,
        }


def _safe_div(num: float, den: float) -> float:
    return num / den if den else 0.0


def binarize(run: PredictionRun, tau: float) -> dict[str, int]:
    """Threshold probabilities into labels; prob == tau classifies as polarized.

    The inclusive boundary makes the positive-prediction count a
    non-increasing step function of tau with breakpoints exactly at the
    observed probabilities.
    """
    if not 0.0 <= tau <= 1.0:
        raise ValidationError(f"threshold must be in [0, 1], got {tau!r}")
    return {
        sample_id: POLARIZED if prob >= tau else NEUTRAL
        for sample_id, prob in run.probs.items()
    }


def confusion(gold: GoldLabels, pred: Mapping[str, int]) -> ConfusionCounts:
    """Count the four confusion cells; pred must cover the gold ids exactly."""
    for sample_id in pred:
        if sample_id not in gold.entries:
            raise UnknownIdError(sample_id)
    tp = fp = fn = tn = 0
    for sample_id, label in gold.entries.items():
        if sample_id not in pred:
            raise MissingPredictionError(sample_id)
        predicted = pred[sample_id]
        if predicted not in (NEUTRAL, POLARIZED):
            raise ValidationError(
                f"predicted label for id {sample_id!r} must be 0 or 1, got {predicted!r}"
            )
        if predicted == POLARIZED:
            if label == POLARIZED:
                tp += 1
            else:
                fp += 1
        else:
            if label == POLARIZED:
                fn += 1
            else:
                tn += 1
    return ConfusionCounts(tp=tp, fp=fp, fn=fn, tn=tn)


def report_from_counts(counts: ConfusionCounts) -> MetricReport:
    """Derive every metric from confusion counts.

    Zero-division convention: a precision, recall, or F1 whose denominator
    is zero is 0.0, keeping macro F1 total. This is the single place where
    counts become floats, so every code path (including the sweep kernels)
    yields bit-identical metrics for equal counts.
    """
    tp, fp, fn, tn = counts.tp, counts.fp, counts.fn, counts.tn
    n = counts.n
    if n == 0:
        raise ValidationError("cannot compute metrics over zero samples")
    precision_pos = _safe_div(tp, tp + fp)
    recall_pos = _safe_div(tp, tp + fn)
    f1_binary = _safe_div(2.0 * precision_pos * recall_pos, precision_pos + recall_pos)
    precision_neg = _safe_div(tn, tn + fn)
    recall_neg = _safe_div(tn, tn + fp)
    f1_neg = _safe_div(2.0 * precision_neg * recall_neg, precision_neg + recall_neg)
    return MetricReport(
        accuracy=(tp + tn) / n,
        precision_pos=precision_pos,
        recall_pos=recall_pos,
        f1_binary=f1_binary,
        precision_neg=precision_neg,
        recall_neg=recall_neg,
        f1_neg=f1_neg,
        f1_macro=(f1_binary + f1_neg) / 2.0,
        counts=counts,
        n=n,
    )


def metric_report(gold: GoldLabels, pred: Mapping[str, int]) -> MetricReport:
    """Full metric report for a labeled prediction over the gold set."""
    return report_from_counts(confusion(gold, pred))
