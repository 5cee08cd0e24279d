"""Leaderboard-gap analytics: proximity window, challenge cutoff, ablation
comparisons, and baseline-context tables.

Gap figures are kept at 4 decimals throughout. The proximity boundary is
inclusive (delta >= floor) while the challenge boundary is strict
(delta < cutoff), so a floor of -0.04 and cutoff of -0.05 leave a mid band.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import TrackMismatchError, ValidationError

PROXIMITY_FLOOR = -0.04
CHALLENGE_CUTOFF = -0.05


def delta_sota(our: float, sota: float) -> float:
    """Raw our-minus-best score difference at 4 decimals."""
    for name, score in (("our", our), ("sota", sota)):
        if not 0.0 <= score <= 1.0:
            raise ValidationError(f"{name} score {score!r} outside [0, 1]")
    return round(our - sota, 4)


@dataclass(frozen=True)
class LeaderboardEntry:
    """One track's score against the public best; rank is display-only metadata."""

    track: str
    our_score: float
    sota_score: float
    rank: int | None = None

    def __post_init__(self):
        if self.rank is not None and self.rank < 1:
            raise ValidationError(f"rank must be positive, got {self.rank!r}")

    @property
    def delta_sota(self) -> float:
        return delta_sota(self.our_score, self.sota_score)


def proximity_window(
    entries: Sequence[LeaderboardEntry], floor: float = PROXIMITY_FLOOR
) -> list[LeaderboardEntry]:
    """Tracks with delta_sota >= floor, best gap first."""
    hits = [e for e in entries if e.delta_sota >= floor]
    return sorted(hits, key=lambda e: (-e.delta_sota, e.track))


def challenge_tracks(
    entries: Sequence[LeaderboardEntry], cutoff: float = CHALLENGE_CUTOFF
) -> list[LeaderboardEntry]:
    """Tracks underperforming by strictly more than the cutoff, worst first."""
    hits = [e for e in entries if e.delta_sota < cutoff]
    return sorted(hits, key=lambda e: (e.delta_sota, e.track))


def entries_markdown(title: str, entries: Sequence[LeaderboardEntry]) -> str:
    lines = [
        f"### {title}",
        "",
        "| Track | Rank | Our score | Best | Delta |",
        "|---|---|---|---|---|",
    ]
    for e in entries:
        rank = "-" if e.rank is None else str(e.rank)
        lines.append(
            f"| {e.track} | {rank} | {e.our_score:.4f} | {e.sota_score:.4f} "
            f"| {e.delta_sota:+.4f} |"
        )
    return "\n".join(lines) + "\n"


def entries_json(entries: Sequence[LeaderboardEntry]) -> list[dict]:
    return [
        {
            "track": e.track,
            "our_score": e.our_score,
            "sota_score": e.sota_score,
            "rank": e.rank,
            "delta_sota": e.delta_sota,
        }
        for e in entries
    ]


WINNER_BASELINE = "baseline"
WINNER_AUGMENTED = "augmented"
WINNER_FINAL = "final"

# Tie priority for the per-row winner.
_WINNER_PRIORITY = {WINNER_FINAL: 0, WINNER_AUGMENTED: 1, WINNER_BASELINE: 2}


@dataclass(frozen=True)
class AblationRow:
    """Baseline vs translation-augmented vs final score for one track."""

    track: str
    baseline_f1: float
    augmented_f1: float
    final_f1: float
    aug_model: str | None = None

    def __post_init__(self):
        for name, score in (
            ("baseline", self.baseline_f1),
            ("augmented", self.augmented_f1),
            ("final", self.final_f1),
        ):
            if not 0.0 <= score <= 1.0:
                raise ValidationError(
                    f"{name} score {score!r} for track {self.track!r} outside [0, 1]"
                )

    @property
    def winner(self) -> str:
        """Column holding the row's maximum (ties: final, augmented, baseline)."""
        scores = {
            WINNER_BASELINE: self.baseline_f1,
            WINNER_AUGMENTED: self.augmented_f1,
            WINNER_FINAL: self.final_f1,
        }
        return min(scores, key=lambda k: (-scores[k], _WINNER_PRIORITY[k]))

    @property
    def degraded(self) -> bool:
        """Augmentation scored strictly below the unaugmented baseline."""
        return self.augmented_f1 < self.baseline_f1


@dataclass(frozen=True)
class AblationReport:
    rows: tuple[AblationRow, ...]
    final_wins: int
    augmented_wins: int
    degradations: tuple[str, ...]


def ablation_report(rows: Sequence[AblationRow]) -> AblationReport:
    """Summarize the augmented-vs-final head-to-head and flag degradations.

    The summary counts compare the augmented and final columns directly
    (ties go to final); the per-row `winner` field still names the overall
    maximum column.
    """
    final_wins = sum(1 for r in rows if r.final_f1 >= r.augmented_f1)
    augmented_wins = sum(1 for r in rows if r.augmented_f1 > r.final_f1)
    return AblationReport(
        rows=tuple(rows),
        final_wins=final_wins,
        augmented_wins=augmented_wins,
        degradations=tuple(r.track for r in rows if r.degraded),
    )


def ablation_markdown(report: AblationReport) -> str:
    lines = [
        "| Track | Baseline | Augmented | Final | Winner | Degraded |",
        "|---|---|---|---|---|---|",
    ]
    for r in report.rows:
        lines.append(
            f"| {r.track} | {r.baseline_f1:.3f} | {r.augmented_f1:.3f} "
            f"| {r.final_f1:.3f} | {r.winner} | {'yes' if r.degraded else ''} |"
        )
    lines.append("")
    lines.append(
        f"Final beats augmented on {report.final_wins} of {len(report.rows)} tracks; "
        f"augmented wins {report.augmented_wins}."
    )
    if report.degradations:
        lines.append(
            "Augmentation degraded the baseline on: " + ", ".join(report.degradations) + "."
        )
    return "\n".join(lines) + "\n"


def ablation_json(report: AblationReport) -> dict:
    return {
        "rows": [
            {
                "track": r.track,
                "baseline_f1": r.baseline_f1,
                "augmented_f1": r.augmented_f1,
                "final_f1": r.final_f1,
                "aug_model": r.aug_model,
                "winner": r.winner,
                "degraded": r.degraded,
            }
            for r in report.rows
        ],
        "final_wins": report.final_wins,
        "augmented_wins": report.augmented_wins,
        "degradations": list(report.degradations),
    }


@dataclass(frozen=True)
class BaselineComparison:
    track: str
    organizer: float
    inhouse: float

    @property
    def difference(self) -> float:
        return round(self.organizer - self.inhouse, 4)

    @property
    def stronger(self) -> str:
        if self.difference > 0:
            return "organizer"
        if self.difference < 0:
            return "inhouse"
        return "tie"


def baseline_context(
    organizer: Mapping[str, float], inhouse: Mapping[str, float]
) -> list[BaselineComparison]:
    """Per-track organizer-vs-in-house baseline comparison; track sets must match."""
    if set(organizer) != set(inhouse):
        missing = set(organizer) ^ set(inhouse)
        raise TrackMismatchError(
            f"baseline tables cover different tracks: {sorted(missing)}"
        )
    return [
        BaselineComparison(track=track, organizer=organizer[track], inhouse=inhouse[track])
        for track in sorted(organizer)
    ]


def baseline_context_markdown(rows: Sequence[BaselineComparison]) -> str:
    lines = [
        "| Track | Organizer baseline | In-house baseline | Diff | Stronger |",
        "|---|---|---|---|---|",
    ]
    for r in rows:
        lines.append(
            f"| {r.track} | {r.organizer:.3f} | {r.inhouse:.3f} "
            f"| {r.difference:+.3f} | {r.stronger} |"
        )
    return "\n".join(lines) + "\n"
