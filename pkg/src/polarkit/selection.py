"""Architecture selection: the 2pp development-gain rule plus balance fallback.

A non-baseline candidate is adopted only if it improves dev macro F1 by at
least 2 percentage points, or (failing that) keeps macro F1 within 1pp of
the baseline while shrinking the |macro P - macro R| gap by at least 2pp.
Deltas are rounded to 4 decimals before rule comparisons so the printed
2-decimal percentage-point value is the one the boundary applies to.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DuplicateModelIdError, NoBaselineError, ValidationError
from .metrics import MetricReport

ROLES = ("baseline", "specialist", "generalist", "ensemble")

DELTA_GAIN_MIN = 0.02
BALANCE_F1_SLACK = 0.01
BALANCE_GAP_SHRINK_MIN = 0.02

RULE_DELTA_GAIN = "delta_gain"
RULE_BALANCE = "balance"
RULE_BASELINE_RETAINED = "baseline_retained"


@dataclass(frozen=True)
class CandidateEvaluation:
    """One candidate's dev-split metric report."""

    model_id: str
    role: str
    dev_report: MetricReport

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValidationError(f"role must be one of {ROLES}, got {self.role!r}")

    @property
    def macro_f1(self) -> float:
        return self.dev_report.f1_macro

    @property
    def balance_gap(self) -> float:
        return abs(self.dev_report.macro_precision() - self.dev_report.macro_recall())


@dataclass(frozen=True)
class SelectionDecision:
    track: str
    chosen: str
    chosen_role: str
    rule_fired: str
    delta_dev: float
    balance_gap_baseline: float
    balance_gap_chosen: float

    def as_dict(self) -> dict:
        return {
            "track": self.track,
            "chosen": self.chosen,
            "chosen_role": self.chosen_role,
            "rule_fired": self.rule_fired,
            "delta_dev": self.delta_dev,
            "delta_pp": round(self.delta_dev * 100, 2),
            "balance_gap_baseline": self.balance_gap_baseline,
            "balance_gap_chosen": self.balance_gap_chosen,
        }


def _delta(candidate: CandidateEvaluation, baseline: CandidateEvaluation) -> float:
    return round(candidate.macro_f1 - baseline.macro_f1, 4)


def decide(
    track: str,
    baseline: CandidateEvaluation,
    candidates: Sequence[CandidateEvaluation],
    *,
    delta_min: float = DELTA_GAIN_MIN,
) -> SelectionDecision:
    """Apply the selection policy for one track.

    Among candidates clearing `delta_min`, the highest macro F1 wins (ties:
    smaller balance gap, then lexicographic model id). Otherwise the balance
    clause may fire; otherwise the baseline is retained.
    """
    if baseline.role != "baseline":
        raise NoBaselineError(f"baseline evaluation has role {baseline.role!r}")
    seen = {baseline.model_id}
    for candidate in candidates:
        if candidate.role == "baseline":
            raise NoBaselineError(
                f"candidate {candidate.model_id!r} also carries the baseline role"
            )
        if candidate.model_id in seen:
            raise DuplicateModelIdError(candidate.model_id)
        seen.add(candidate.model_id)

    def retained() -> SelectionDecision:
        return SelectionDecision(
            track=track,
            chosen=baseline.model_id,
            chosen_role=baseline.role,
            rule_fired=RULE_BASELINE_RETAINED,
            delta_dev=0.0,
            balance_gap_baseline=baseline.balance_gap,
            balance_gap_chosen=baseline.balance_gap,
        )

    if not candidates:
        return retained()

    gainers = [c for c in candidates if _delta(c, baseline) >= delta_min]
    if gainers:
        winner = min(gainers, key=lambda c: (-c.macro_f1, c.balance_gap, c.model_id))
        return SelectionDecision(
            track=track,
            chosen=winner.model_id,
            chosen_role=winner.role,
            rule_fired=RULE_DELTA_GAIN,
            delta_dev=_delta(winner, baseline),
            balance_gap_baseline=baseline.balance_gap,
            balance_gap_chosen=winner.balance_gap,
        )

    balanced = [
        c
        for c in candidates
        if _delta(c, baseline) >= -BALANCE_F1_SLACK
        and round(baseline.balance_gap - c.balance_gap, 4) >= BALANCE_GAP_SHRINK_MIN
    ]
    if balanced:
        winner = min(balanced, key=lambda c: (c.balance_gap, -c.macro_f1, c.model_id))
        return SelectionDecision(
            track=track,
            chosen=winner.model_id,
            chosen_role=winner.role,
            rule_fired=RULE_BALANCE,
            delta_dev=_delta(winner, baseline),
            balance_gap_baseline=baseline.balance_gap,
            balance_gap_chosen=winner.balance_gap,
        )

    return retained()


@dataclass(frozen=True)
class ReplayRow:
    """Recomputed delta for one historical (baseline, chosen) score pair."""

    track: str
    baseline_f1: float
    chosen_f1: float
    delta_dev: float
    delta_pp: float
    rule_satisfied: bool


def ledger_replay(
    entries: Iterable[tuple[str, float, float]],
    *,
    delta_min: float = DELTA_GAIN_MIN,
) -> list[ReplayRow]:
    """Recompute development deltas and flag rows that violate the gain rule.

    Only the delta clause can be checked from bare scores; rows below
    `delta_min` are flagged, not rejected.
    """
    rows = []
    for track, baseline_f1, chosen_f1 in entries:
        for name, score in (("baseline", baseline_f1), ("chosen", chosen_f1)):
            if not 0.0 <= score <= 1.0:
                raise ValidationError(
                    f"{name} score {score!r} for track {track!r} outside [0, 1]"
                )
        delta = round(chosen_f1 - baseline_f1, 4)
        rows.append(
            ReplayRow(
                track=track,
                baseline_f1=baseline_f1,
                chosen_f1=chosen_f1,
                delta_dev=delta,
                delta_pp=round(delta * 100, 2),
                rule_satisfied=delta >= delta_min,
            )
        )
    return rows


def decisions_markdown(decisions: Sequence[SelectionDecision]) -> str:
    """Markdown decision table, sectioned by the chosen architecture's role."""
    sections = (
        ("specialist", "Baseline to monolingual specialist"),
        ("generalist", "Baseline to high-capacity generalist"),
        ("ensemble", "Baseline to hybrid ensemble"),
        ("baseline", "Baseline retained"),
    )
    lines = ["| Track | Chosen | Rule | Delta (pp) | Balance gap (base / chosen) |"]
    lines.append("|---|---|---|---|---|")
    for role, title in sections:
        group = [d for d in decisions if d.chosen_role == role]
        if not group:
            continue
        lines.append(f"| *{title}* | | | | |")
        for d in sorted(group, key=lambda d: -d.delta_dev):
            flag = " (balance rule)" if d.rule_fired == RULE_BALANCE else ""
            lines.append(
                f"| {d.track} | {d.chosen}{flag} | {d.rule_fired} "
                f"| {d.delta_dev * 100:+.2f} "
                f"| {d.balance_gap_baseline:.4f} / {d.balance_gap_chosen:.4f} |"
            )
    return "\n".join(lines) + "\n"


def replay_markdown(rows: Sequence[ReplayRow]) -> str:
    lines = ["| Track | Baseline | Chosen | Delta (pp) | Gain rule |", "|---|---|---|---|---|"]
    for row in rows:
        verdict = "ok" if row.rule_satisfied else "VIOLATION"
        lines.append(
            f"| {row.track} | {row.baseline_f1:.4f} | {row.chosen_f1:.4f} "
            f"| {row.delta_pp:+.2f} | {verdict} |"
        )
    return "\n".join(lines) + "\n"
