"""Weighted soft-voting combination of member probability runs.

Probabilities are mixed per sample as sum(weight_i * prob_i), accumulated
in double precision in member order, so a fixed configuration is
deterministic to the last bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import IdMismatchError, TrackMismatchError, WeightError
from .metrics import PredictionRun

WEIGHT_SUM_TOL = 1e-9


def _check_members(members: Sequence[PredictionRun]) -> None:
    if not members:
        raise WeightError("ensemble needs at least one member")
    first = members[0]
    for member in members[1:]:
        if member.track != first.track or member.split != first.split:
            raise TrackMismatchError(
                f"member {member.model_id!r} is ({member.track}, {member.split}), "
                f"expected ({first.track}, {first.split})"
            )
        if member.ids() != first.ids():
            raise IdMismatchError(
                f"member {member.model_id!r} has a different sample-id set "
                f"than {first.model_id!r}"
            )


def _check_weights(weights: Sequence[float], arity: int) -> None:
    if len(weights) != arity:
        raise WeightError(f"{arity} members but {len(weights)} weights")
    if any(w < 0.0 for w in weights):
        raise WeightError(f"negative weight in {list(weights)!r}")
    total = 0.0
    for w in weights:
        total += w
    # Malformed sums are rejected, never silently renormalized.
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        raise WeightError(f"weights sum to {total!r}, expected 1 within {WEIGHT_SUM_TOL}")


def mixture_id(members: Sequence[PredictionRun], weights: Sequence[float]) -> str:
    """Synthetic model id for a mixture, e.g. 'bertweet(0.65)+deberta(0.35)'."""
    return "+".join(
        f"{member.model_id}({weight:g})" for member, weight in zip(members, weights)
    )


def soft_vote(
    members: Sequence[PredictionRun], weights: Sequence[float]
) -> PredictionRun:
    """Per-sample weighted average of member probabilities.

    Output ids follow the first member's order; the result is clamped to
    [0, 1] to absorb last-ulp drift when weights sum to 1 only within
    tolerance.
    """
    _check_members(members)
    _check_weights(weights, len(members))
    mixed: dict[str, float] = {}
    for sample_id in members[0].probs:
        acc = 0.0
        for member, weight in zip(members, weights):
            acc += weight * member.probs[sample_id]
        mixed[sample_id] = min(max(acc, 0.0), 1.0)
    return PredictionRun(
        track=members[0].track,
        model_id=mixture_id(members, weights),
        split=members[0].split,
        probs=mixed,
    )


def uniform_vote(members: Sequence[PredictionRun]) -> PredictionRun:
    """Unweighted mean of the members: soft_vote with weights 1/k."""
    if not members:
        raise WeightError("ensemble needs at least one member")
    k = len(members)
    return soft_vote(members, [1.0 / k] * k)


@dataclass(frozen=True)
class EnsembleConfig:
    """Member runs with convex weights plus the decision threshold."""

    members: tuple[tuple[PredictionRun, float], ...]
    tau: float

    def __post_init__(self):
        runs = [run for run, _ in self.members]
        weights = [weight for _, weight in self.members]
        _check_members(runs)
        _check_weights(weights, len(runs))
        if not 0.0 <= self.tau <= 1.0:
            raise WeightError(f"threshold must be in [0, 1], got {self.tau!r}")

    @property
    def runs(self) -> tuple[PredictionRun, ...]:
        return tuple(run for run, _ in self.members)

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(weight for _, weight in self.members)

    def combined(self) -> PredictionRun:
        return soft_vote(self.runs, self.weights)

    def summary(self) -> dict:
        return {
            "members": [[run.model_id, weight] for run, weight in self.members],
            "tau": self.tau,
        }
