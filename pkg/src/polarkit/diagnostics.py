"""Failure-mode analytics: prediction skew, collapse, and dev-test shift.

Shift groups are assigned on the percentage-point delta rounded to one
decimal (the reported precision), so a -2.0pp shift sits inside the
stability band regardless of float representation of the raw scores.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping, Sequence

from .errors import DegenerateGoldError
from .metrics import GoldLabels, confusion

COLLAPSE_POSITIVE_RATE_MIN = 0.90
COLLAPSE_NEUTRAL_RECALL_MAX = 0.25
STABILITY_BAND_PP = 2.0

GROUP_GAIN = "gain"
GROUP_STABLE = "stable"
GROUP_LOSS = "loss"
GROUP_ANOMALOUS_GAIN = "anomalous_gain"


@dataclass(frozen=True)
class SkewReport:
    """How heavily a predictor leans on the polarized class."""

    positive_rate: float
    neutral_recall: float
    collapsed: bool


def prediction_skew(
    pred: Mapping[str, int],
    gold: GoldLabels,
    *,
    rate_min: float = COLLAPSE_POSITIVE_RATE_MIN,
    recall_max: float = COLLAPSE_NEUTRAL_RECALL_MAX,
) -> SkewReport:
    """Positive-prediction rate and neutral recall, with the collapse flag."""
    counts = confusion(gold, pred)
    positive_rate = counts.predicted_positive / counts.n
    neutral_support = counts.tn + counts.fp
    neutral_recall = counts.tn / neutral_support if neutral_support else 0.0
    return SkewReport(
        positive_rate=positive_rate,
        neutral_recall=neutral_recall,
        collapsed=positive_rate >= rate_min and neutral_recall < recall_max,
    )


def majority_baseline(prevalence: float) -> float:
    """Macro F1 of the all-polarized predictor on gold with the given prevalence.

    Positive F1 is 2p/(1+p), negative F1 is 0, so the macro score is p/(1+p);
    strictly increasing in p and bounded by 0.5.
    """
    if not 0.0 < prevalence <= 1.0:
        raise DegenerateGoldError(
            f"prevalence must be in (0, 1], got {prevalence!r}"
        )
    return prevalence / (1.0 + prevalence)


def dev_test_shift(dev_f1: float, test_f1: float) -> float:
    """Raw test-minus-dev macro-F1 delta (fraction)."""
    for name, score in (("dev", dev_f1), ("test", test_f1)):
        if not 0.0 <= score <= 1.0:
            raise DegenerateGoldError(f"{name} score {score!r} outside [0, 1]")
    return test_f1 - dev_f1


@dataclass(frozen=True)
class ShiftRecord:
    """Dev-to-test macro-F1 movement for one track."""

    track: str
    dev_f1: float
    test_f1: float
    delta: float
    delta_pp: float
    group: str | None = None

    @classmethod
    def from_scores(cls, track: str, dev_f1: float, test_f1: float) -> "ShiftRecord":
        delta = dev_test_shift(dev_f1, test_f1)
        return cls(
            track=track,
            dev_f1=dev_f1,
            test_f1=test_f1,
            delta=delta,
            delta_pp=round(delta * 100, 1),
        )


def classify_shift(
    record: ShiftRecord,
    skew: SkewReport | None = None,
    *,
    stability_pp: float = STABILITY_BAND_PP,
) -> str:
    """Assign the shift group; collapsed gains become anomalous_gain."""
    if record.delta_pp > stability_pp:
        group = GROUP_GAIN
    elif record.delta_pp < -stability_pp:
        group = GROUP_LOSS
    else:
        group = GROUP_STABLE
    if group == GROUP_GAIN and skew is not None and skew.collapsed:
        group = GROUP_ANOMALOUS_GAIN
    return group


def classify_records(
    records: Sequence[ShiftRecord],
    skews: Mapping[str, SkewReport] | None = None,
    *,
    stability_pp: float = STABILITY_BAND_PP,
) -> list[ShiftRecord]:
    """Classify every record, using a per-track skew report where available."""
    skews = skews or {}
    return [
        replace(
            record,
            group=classify_shift(
                record, skews.get(record.track), stability_pp=stability_pp
            ),
        )
        for record in records
    ]


def shift_markdown(records: Sequence[ShiftRecord]) -> str:
    """Four-section shift table (anomalous gains, gains, stable, losses)."""
    sections = (
        (GROUP_ANOMALOUS_GAIN, "Special case: anomalous gain"),
        (GROUP_GAIN, "Top gains"),
        (GROUP_STABLE, "Stable performers"),
        (GROUP_LOSS, "Top losses"),
    )
    lines = ["| Track | Dev F1 | Test F1 | Delta |", "|---|---|---|---|"]
    for group, title in sections:
        members = sorted(
            (r for r in records if r.group == group), key=lambda r: -r.delta_pp
        )
        if not members:
            continue
        lines.append(f"| *{title}* | | | |")
        for r in members:
            lines.append(
                f"| {r.track} | {r.dev_f1:.3f} | {r.test_f1:.3f} | {r.delta_pp:+.1f}% |"
            )
    return "\n".join(lines) + "\n"


def shift_json(records: Sequence[ShiftRecord]) -> list[dict]:
    return [
        {
            "track": r.track,
            "dev_f1": r.dev_f1,
            "test_f1": r.test_f1,
            "delta": r.delta,
            "delta_pp": r.delta_pp,
            "group": r.group,
        }
        for r in records
    ]
