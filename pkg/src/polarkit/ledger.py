"""File formats, validation, and the append-only development ledger.

Prediction and gold files are UTF-8 CSV with mandatory headers (`id,prob` /
`id,label`) and LF line endings; probabilities are emitted with 6 decimals
so golden files stay bit-stable. The ledger is JSONL, one record per line,
append-only. POLARKIT_LEDGER_DIR sets the root for relative ledger paths.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import (
    ConflictError,
    DuplicateIdError,
    DuplicateModelIdError,
    EmptyInputError,
    ParseError,
    RangeError,
    TrackMismatchError,
    ValidationError,
    WeightError,
)
from .metrics import GoldLabels, MetricReport, PredictionRun

LEDGER_DIR_ENV = "POLARKIT_LEDGER_DIR"

PRED_HEADER = ["id", "prob"]
GOLD_HEADER = ["id", "label"]

DEFAULT_TAU = 0.5


def _read_rows(path: str | Path, header: list[str]) -> list[tuple[int, list[str]]]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        first = next(reader, None)
        if first != header:
            raise ParseError(path, 1, f"expected header {','.join(header)}, got {first!r}")
        rows = [(line_no, row) for line_no, row in enumerate(reader, start=2)]
    if not rows:
        raise EmptyInputError(f"{path} has a header but no rows")
    return rows


def load_predictions(
    path: str | Path,
    *,
    track: str = "und",
    model_id: str | None = None,
    split: str = "dev",
) -> PredictionRun:
    """Parse and validate a predictions CSV; metadata comes from the caller."""
    probs: dict[str, float] = {}
    for line_no, row in _read_rows(path, PRED_HEADER):
        if len(row) != 2 or not row[0]:
            raise ParseError(path, line_no, f"malformed row {row!r}")
        sample_id, raw = row
        try:
            prob = float(raw)
        except ValueError:
            raise ParseError(path, line_no, f"probability {raw!r} is not a number")
        if not 0.0 <= prob <= 1.0:
            raise RangeError(sample_id, prob)
        if sample_id in probs:
            raise DuplicateIdError(sample_id)
        probs[sample_id] = prob
    return PredictionRun(
        track=track,
        model_id=model_id if model_id is not None else Path(path).stem,
        split=split,
        probs=probs,
    )


def emit_predictions(run: PredictionRun, path: str | Path) -> None:
    Path(path).write_bytes(predictions_csv(run).encode("utf-8"))


def predictions_csv(run: PredictionRun) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(PRED_HEADER)
    for sample_id, prob in run.probs.items():
        writer.writerow([sample_id, f"{prob:.6f}"])
    return buf.getvalue()


def load_gold(path: str | Path) -> GoldLabels:
    """Parse and validate a gold CSV; labels restricted to 0/1."""
    entries: dict[str, int] = {}
    for line_no, row in _read_rows(path, GOLD_HEADER):
        if len(row) != 2 or not row[0]:
            raise ParseError(path, line_no, f"malformed row {row!r}")
        sample_id, raw = row
        if raw not in ("0", "1"):
            raise ParseError(path, line_no, f"label {raw!r} must be 0 or 1")
        if sample_id in entries:
            raise DuplicateIdError(sample_id)
        entries[sample_id] = int(raw)
    return GoldLabels(entries=entries)


def emit_gold(gold: GoldLabels, path: str | Path) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(GOLD_HEADER)
    for sample_id, label in gold.entries.items():
        writer.writerow([sample_id, str(label)])
    Path(path).write_bytes(buf.getvalue().encode("utf-8"))


@dataclass(frozen=True)
class CandidateRef:
    model_id: str
    role: str


@dataclass(frozen=True)
class FinalConfig:
    """Final per-track system: strategy, weighted members, decision threshold."""

    strategy: str
    members: tuple[tuple[str, float], ...]
    tau: float = DEFAULT_TAU

    def __post_init__(self):
        if not self.members:
            raise ValidationError("final config needs at least one member")
        weights = [w for _, w in self.members]
        if any(w < 0 for w in weights):
            raise WeightError(f"negative member weight in {weights!r}")
        if abs(sum(weights) - 1.0) > 1e-9:
            raise WeightError(f"member weights sum to {sum(weights)!r}, expected 1")
        if not 0.0 <= self.tau <= 1.0:
            raise ValidationError(f"tau {self.tau!r} outside [0, 1]")


@dataclass(frozen=True)
class TrackEntry:
    track: str
    candidates: tuple[CandidateRef, ...]
    final: FinalConfig | None = None

    def __post_init__(self):
        baselines = [c for c in self.candidates if c.role == "baseline"]
        if len(baselines) != 1:
            raise ValidationError(
                f"track {self.track!r} must have exactly one baseline candidate, "
                f"found {len(baselines)}"
            )
        seen = set()
        for c in self.candidates:
            if c.model_id in seen:
                raise DuplicateModelIdError(c.model_id)
            seen.add(c.model_id)

    @property
    def baseline(self) -> CandidateRef:
        return next(c for c in self.candidates if c.role == "baseline")


@dataclass(frozen=True)
class TrackRegistry:
    tracks: tuple[TrackEntry, ...]

    def __post_init__(self):
        codes = [entry.track for entry in self.tracks]
        if len(codes) != len(set(codes)):
            raise TrackMismatchError("registry has duplicate track codes")

    def entry(self, track: str) -> TrackEntry:
        for candidate in self.tracks:
            if candidate.track == track:
                return candidate
        raise TrackMismatchError(f"track {track!r} not in registry")


def load_registry(path: str | Path) -> TrackRegistry:
    """Registry JSON mirroring the final-configuration table; tau defaults to 0.5."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(path, exc.lineno, f"invalid JSON: {exc.msg}")
    if not isinstance(doc, dict) or "tracks" not in doc:
        raise ParseError(path, 1, "registry document must be an object with 'tracks'")
    entries = []
    for raw in doc["tracks"]:
        final = None
        if raw.get("final") is not None:
            raw_final = raw["final"]
            final = FinalConfig(
                strategy=raw_final["strategy"],
                members=tuple((m[0], float(m[1])) for m in raw_final["members"]),
                tau=float(raw_final.get("tau", DEFAULT_TAU)),
            )
        entries.append(
            TrackEntry(
                track=raw["track"],
                candidates=tuple(
                    CandidateRef(model_id=c["model_id"], role=c["role"])
                    for c in raw.get("candidates", [])
                ),
                final=final,
            )
        )
    return TrackRegistry(tracks=tuple(entries))


def registry_json(registry: TrackRegistry) -> str:
    doc = {
        "tracks": [
            {
                "track": entry.track,
                "candidates": [
                    {"model_id": c.model_id, "role": c.role} for c in entry.candidates
                ],
                "final": None
                if entry.final is None
                else {
                    "strategy": entry.final.strategy,
                    "members": [[m, w] for m, w in entry.final.members],
                    "tau": entry.final.tau,
                },
            }
            for entry in registry.tracks
        ]
    }
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def emit_registry(registry: TrackRegistry, path: str | Path) -> None:
    Path(path).write_bytes(registry_json(registry).encode("utf-8"))


@dataclass(frozen=True)
class RunRecord:
    """One evaluated configuration; records are immutable once appended.

    `provenance` is carried verbatim (seeds, learning rates, epochs from a
    training pipeline) and never interpreted here.
    """

    timestamp: str
    track: str
    model_id: str
    split: str
    metrics: dict
    config: dict | None = None
    provenance: dict | None = None

    @property
    def key(self) -> tuple[str, str, str, str]:
        return (self.timestamp, self.track, self.model_id, self.split)

    @classmethod
    def from_report(
        cls,
        *,
        timestamp: str,
        track: str,
        model_id: str,
        split: str,
        report: MetricReport,
        config: dict | None = None,
        provenance: dict | None = None,
    ) -> "RunRecord":
        return cls(
            timestamp=timestamp,
            track=track,
            model_id=model_id,
            split=split,
            metrics=report.as_dict(),
            config=config,
            provenance=provenance,
        )

    def to_json(self) -> str:
        doc = {
            "timestamp": self.timestamp,
            "track": self.track,
            "model_id": self.model_id,
            "split": self.split,
            "metrics": self.metrics,
            "config": self.config,
            "provenance": self.provenance,
        }
        return json.dumps(doc, sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, line: str) -> "RunRecord":
        doc = json.loads(line)
        return cls(
            timestamp=doc["timestamp"],
            track=doc["track"],
            model_id=doc["model_id"],
            split=doc["split"],
            metrics=doc["metrics"],
            config=doc.get("config"),
            provenance=doc.get("provenance"),
        )


def ledger_root() -> Path:
    return Path(os.environ.get(LEDGER_DIR_ENV, "."))


def resolve_ledger_path(path: str | Path) -> Path:
    path = Path(path)
    return path if path.is_absolute() else ledger_root() / path


def read_ledger(path: str | Path) -> list[RunRecord]:
    """All records in append order; malformed lines are typed errors."""
    path = resolve_ledger_path(path)
    records = []
    if not path.exists():
        return records
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append(RunRecord.from_json(line))
            except (json.JSONDecodeError, KeyError) as exc:
                raise ParseError(path, line_no, f"bad ledger record: {exc}")
    return records


def append_ledger(record: RunRecord, path: str | Path) -> RunRecord:
    """Append one record; duplicate keys conflict and leave the file untouched."""
    path = resolve_ledger_path(path)
    existing = {r.key for r in read_ledger(path)}
    if record.key in existing:
        raise ConflictError(
            f"ledger already holds a record for {record.key!r}"
        )
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(record.to_json() + "\n")
    return record


def best_by_model(records: Iterable[RunRecord], *, split: str = "dev") -> dict[str, dict[str, RunRecord]]:
    """Per track, the best (macro F1) record for each model id on a split."""
    best: dict[str, dict[str, RunRecord]] = {}
    for record in records:
        if record.split != split:
            continue
        per_track = best.setdefault(record.track, {})
        current = per_track.get(record.model_id)
        if current is None or record.metrics["f1_macro"] > current.metrics["f1_macro"]:
            per_track[record.model_id] = record
    return best


def registry_markdown(registry: TrackRegistry) -> str:
    lines = [
        "| Track | Strategy | Members (weights) | tau |",
        "|---|---|---|---|",
    ]
    for entry in registry.tracks:
        if entry.final is None:
            lines.append(f"| {entry.track} | - | - | - |")
            continue
        members = " + ".join(f"{m} ({w:g})" for m, w in entry.final.members)
        lines.append(
            f"| {entry.track} | {entry.final.strategy} | {members} | {entry.final.tau:g} |"
        )
    return "\n".join(lines) + "\n"
