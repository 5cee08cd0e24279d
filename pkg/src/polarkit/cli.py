"""Command-line surface for the toolkit.

Subcommands map 1:1 onto the library operations: evaluate, ensemble, tune,
select, shift, leaderboard, frag, ablation, report. Exit codes: 0 success,
2 usage, 3 validation, 4 I/O.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import __version__, calibration, diagnostics, leaderboard, selection
from . import fragmentation as frag_mod
from . import ledger as ledger_io
from .ensemble import soft_vote, uniform_vote
from .errors import ParseError, ValidationError
from .metrics import binarize, metric_report

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_IO = 4


def _print(payload, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload["json"], indent=2, sort_keys=True))
    else:
        print(payload["md"], end="")


def _float_list(raw: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in raw.split(",") if part != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {raw!r}")


def _read_table(path: str, headers: list[list[str]]) -> tuple[list[str], list[list[str]]]:
    """Strict CSV reader accepting one of several exact headers."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header not in headers:
            expected = " or ".join(",".join(h) for h in headers)
            raise ParseError(path, 1, f"expected header {expected}, got {header!r}")
        rows = list(reader)
    if not rows:
        raise ParseError(path, 2, "no data rows")
    return header, rows


def _parse_score(path: str, line_no: int, raw: str, name: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ParseError(path, line_no, f"{name} {raw!r} is not a number")


# ---------------------------------------------------------------- evaluate


def _cmd_evaluate(args) -> int:
    gold = ledger_io.load_gold(args.gold)
    run = ledger_io.load_predictions(
        args.pred, track=args.track, model_id=args.model, split=args.split
    )
    report = metric_report(gold, binarize(run, args.tau))
    md = (
        f"Acc {report.accuracy:.4f}  F1(B) {report.f1_binary:.4f}  "
        f"F1(M) {report.f1_macro:.4f}\n"
        f"pos P/R {report.precision_pos:.4f}/{report.recall_pos:.4f}  "
        f"neg P/R {report.precision_neg:.4f}/{report.recall_neg:.4f}  "
        f"n {report.n}  tau {args.tau:g}\n"
    )
    _print({"md": md, "json": report.as_dict()}, args.format)
    return EXIT_OK


# ---------------------------------------------------------------- ensemble


def _cmd_ensemble(args) -> int:
    members = [
        ledger_io.load_predictions(path, track=args.track, split=args.split)
        for path in args.pred
    ]
    if args.weights is None:
        combined = uniform_vote(members)
    else:
        combined = soft_vote(members, list(args.weights))
    if args.out:
        ledger_io.emit_predictions(combined, args.out)
    payload = {
        "model_id": combined.model_id,
        "n": len(combined),
        "out": args.out,
    }
    md = f"{combined.model_id}  n={len(combined)}"
    if args.out:
        md += f"  wrote {args.out}"
    _print({"md": md + "\n", "json": payload}, args.format)
    return EXIT_OK


# ---------------------------------------------------------------- tune


def _cmd_tune(args) -> int:
    if args.pred is None and not (args.spec and args.gen):
        raise ValidationError("tune needs --pred or both --spec and --gen")
    gold = ledger_io.load_gold(args.gold)
    if args.pred is not None:
        run = ledger_io.load_predictions(args.pred, split="dev")
        result = calibration.tune_threshold(gold, run, args.taus)
        best_alpha = None
    else:
        spec = ledger_io.load_predictions(args.spec, split="dev")
        gen = ledger_io.load_predictions(args.gen, split="dev")
        grid = calibration.SearchGrid(alpha_values=args.alphas, tau_values=args.taus)
        result = calibration.tune_pair(gold, spec, gen, grid, workers=args.workers)
        best_alpha = result.best_config.members[0][1]
    if args.surface:
        Path(args.surface).write_text(
            calibration.surface_to_csv(result), encoding="utf-8"
        )
    best = {
        "alpha": best_alpha,
        "tau": result.best_config.tau,
        "macro_f1": result.best_dev_report.f1_macro,
        "cells": len(result.full_surface),
        "surface": args.surface,
    }
    alpha_txt = "-" if best_alpha is None else f"{best_alpha:g}"
    md = (
        f"best alpha {alpha_txt}  tau {result.best_config.tau:g}  "
        f"macro F1 {result.best_dev_report.f1_macro:.4f}  "
        f"({len(result.full_surface)} cells)\n"
    )
    _print({"md": md, "json": best}, args.format)
    return EXIT_OK


# ---------------------------------------------------------------- select


def _parse_member(raw: str, with_role: bool):
    if with_role:
        role, _, rest = raw.partition(":")
        if not rest:
            raise ValidationError(f"expected ROLE:MODEL=PATH, got {raw!r}")
    else:
        role, rest = "baseline", raw
    model_id, sep, path = rest.partition("=")
    if not sep or not model_id or not path:
        raise ValidationError(f"expected MODEL=PATH in {raw!r}")
    return role, model_id, path


def _cmd_select(args) -> int:
    if args.replay:
        _, rows = _read_table(args.replay, [["track", "baseline_f1", "chosen_f1"]])
        entries = []
        for line_no, row in enumerate(rows, start=2):
            if len(row) != 3:
                raise ParseError(args.replay, line_no, f"malformed row {row!r}")
            entries.append(
                (
                    row[0],
                    _parse_score(args.replay, line_no, row[1], "baseline_f1"),
                    _parse_score(args.replay, line_no, row[2], "chosen_f1"),
                )
            )
        replay = selection.ledger_replay(entries, delta_min=args.delta_min)
        payload = [row.__dict__ for row in replay]
        _print({"md": selection.replay_markdown(replay), "json": payload}, args.format)
        return EXIT_OK

    if not (args.gold and args.baseline and args.track):
        raise ValidationError("select needs --gold, --track and --baseline (or --replay)")
    gold = ledger_io.load_gold(args.gold)

    def evaluate(role: str, model_id: str, path: str) -> selection.CandidateEvaluation:
        run = ledger_io.load_predictions(path, track=args.track, model_id=model_id)
        return selection.CandidateEvaluation(
            model_id=model_id,
            role=role,
            dev_report=metric_report(gold, binarize(run, args.tau)),
        )

    baseline = evaluate(*_parse_member(args.baseline, with_role=False))
    candidates = [
        evaluate(*_parse_member(raw, with_role=True)) for raw in args.candidate or []
    ]
    decision = selection.decide(
        args.track, baseline, candidates, delta_min=args.delta_min
    )
    _print(
        {
            "md": selection.decisions_markdown([decision]),
            "json": decision.as_dict(),
        },
        args.format,
    )
    return EXIT_OK


# ---------------------------------------------------------------- shift


def _cmd_shift(args) -> int:
    _, rows = _read_table(args.scores, [["track", "dev_f1", "test_f1"]])
    records = []
    for line_no, row in enumerate(rows, start=2):
        if len(row) != 3:
            raise ParseError(args.scores, line_no, f"malformed row {row!r}")
        records.append(
            diagnostics.ShiftRecord.from_scores(
                row[0],
                _parse_score(args.scores, line_no, row[1], "dev_f1"),
                _parse_score(args.scores, line_no, row[2], "test_f1"),
            )
        )
    skews = {}
    for raw in args.skew or []:
        track, _, paths = raw.partition("=")
        pred_path, _, gold_path = paths.partition(":")
        if not track or not pred_path or not gold_path:
            raise ValidationError(f"expected TRACK=PRED:GOLD, got {raw!r}")
        gold = ledger_io.load_gold(gold_path)
        run = ledger_io.load_predictions(pred_path, track=track, split="test")
        skews[track] = diagnostics.prediction_skew(
            binarize(run, args.tau),
            gold,
            rate_min=args.collapse_rate,
            recall_max=args.collapse_recall,
        )
    classified = diagnostics.classify_records(
        records, skews, stability_pp=args.stability_pp
    )
    payload = {
        "records": diagnostics.shift_json(classified),
        "skews": {
            track: skew.__dict__ for track, skew in sorted(skews.items())
        },
    }
    _print({"md": diagnostics.shift_markdown(classified), "json": payload}, args.format)
    return EXIT_OK


# ---------------------------------------------------------------- leaderboard


def _load_entries(path: str) -> list[leaderboard.LeaderboardEntry]:
    header, rows = _read_table(
        path,
        [
            ["track", "our_score", "sota_score", "rank"],
            ["track", "our_score", "sota_score"],
        ],
    )
    entries = []
    for line_no, row in enumerate(rows, start=2):
        if len(row) != len(header) or not row[0]:
            raise ParseError(path, line_no, f"malformed row {row!r}")
        rank = None
        if len(row) == 4 and row[3] != "":
            try:
                rank = int(row[3])
            except ValueError:
                raise ParseError(path, line_no, f"rank {row[3]!r} is not an integer")
        entries.append(
            leaderboard.LeaderboardEntry(
                track=row[0],
                our_score=_parse_score(path, line_no, row[1], "our_score"),
                sota_score=_parse_score(path, line_no, row[2], "sota_score"),
                rank=rank,
            )
        )
    return entries


def _cmd_leaderboard(args) -> int:
    entries = _load_entries(args.scores)
    window = leaderboard.proximity_window(entries, floor=args.window)
    challenge = leaderboard.challenge_tracks(entries, cutoff=args.challenge)
    md = leaderboard.entries_markdown(
        f"Within {abs(args.window) * 100:g} points of the leaderboard best", window
    )
    md += "\n" + leaderboard.entries_markdown(
        f"Challenge tracks (gap worse than {abs(args.challenge) * 100:g} points)",
        challenge,
    )
    payload = {
        "window": leaderboard.entries_json(window),
        "challenge": leaderboard.entries_json(challenge),
    }
    if args.baselines:
        _, rows = _read_table(args.baselines, [["track", "organizer", "inhouse"]])
        organizer, inhouse = {}, {}
        for line_no, row in enumerate(rows, start=2):
            if len(row) != 3:
                raise ParseError(args.baselines, line_no, f"malformed row {row!r}")
            organizer[row[0]] = _parse_score(args.baselines, line_no, row[1], "organizer")
            inhouse[row[0]] = _parse_score(args.baselines, line_no, row[2], "inhouse")
        context = leaderboard.baseline_context(organizer, inhouse)
        md += "\n" + leaderboard.baseline_context_markdown(context)
        payload["baseline_context"] = [
            {
                "track": c.track,
                "organizer": c.organizer,
                "inhouse": c.inhouse,
                "difference": c.difference,
                "stronger": c.stronger,
            }
            for c in context
        ]
    _print({"md": md, "json": payload}, args.format)
    return EXIT_OK


# ---------------------------------------------------------------- frag


def _cmd_frag(args) -> int:
    reports = []
    if args.vocab:
        if not args.corpus:
            raise ValidationError("--vocab requires --corpus")
        vocab = frag_mod.SubwordVocabulary.from_file(args.vocab)
        words = frag_mod.load_corpus(args.corpus)
        reports.append(
            frag_mod.fragmentation_ratio(
                words,
                lambda word: frag_mod.tokenize_word(vocab, word),
                tokenizer_id=Path(args.vocab).stem,
                corpus_id=Path(args.corpus).stem,
            )
        )
    for path in args.counts or []:
        counts = frag_mod.load_word_counts(path)
        reports.append(
            frag_mod.ratio_from_counts(counts, tokenizer_id=Path(path).stem)
        )
    if not reports:
        raise ValidationError("frag needs --counts files or --vocab/--corpus")
    lines = [
        f"{r.tokenizer_id}: {r.subword_count}/{r.word_count} = {r.ratio:.4f}"
        for r in reports
    ]
    payload: dict = {"reports": [r.as_dict() for r in reports]}
    if len(reports) == 2:
        red = frag_mod.reduction(reports[0].ratio, reports[1].ratio)
        lines.append(f"reduction: {red:.1f}%")
        payload["reduction"] = red
    _print({"md": "\n".join(lines) + "\n", "json": payload}, args.format)
    return EXIT_OK


# ---------------------------------------------------------------- ablation


def _cmd_ablation(args) -> int:
    header, rows = _read_table(
        args.rows,
        [
            ["track", "baseline_f1", "augmented_f1", "final_f1", "aug_model"],
            ["track", "baseline_f1", "augmented_f1", "final_f1"],
        ],
    )
    parsed = []
    for line_no, row in enumerate(rows, start=2):
        if len(row) != len(header):
            raise ParseError(args.rows, line_no, f"malformed row {row!r}")
        parsed.append(
            leaderboard.AblationRow(
                track=row[0],
                baseline_f1=_parse_score(args.rows, line_no, row[1], "baseline_f1"),
                augmented_f1=_parse_score(args.rows, line_no, row[2], "augmented_f1"),
                final_f1=_parse_score(args.rows, line_no, row[3], "final_f1"),
                aug_model=row[4] if len(row) == 5 and row[4] else None,
            )
        )
    report = leaderboard.ablation_report(parsed)
    _print(
        {
            "md": leaderboard.ablation_markdown(report),
            "json": leaderboard.ablation_json(report),
        },
        args.format,
    )
    return EXIT_OK


# ---------------------------------------------------------------- report


def _cmd_report(args) -> int:
    registry = ledger_io.load_registry(args.registry)
    records = ledger_io.read_ledger(args.ledger)
    best = ledger_io.best_by_model(records, split="dev")

    md_parts = ["## Final configurations\n", ledger_io.registry_markdown(registry)]
    summary_lines = [
        "| Track | Model | Dev macro F1 | Timestamp |",
        "|---|---|---|---|",
    ]
    for track in sorted(best):
        for model_id, record in sorted(best[track].items()):
            summary_lines.append(
                f"| {track} | {model_id} | {record.metrics['f1_macro']:.4f} "
                f"| {record.timestamp} |"
            )
    md_parts.append("\n## Best development runs\n" + "\n".join(summary_lines) + "\n")

    replay_entries = []
    for entry in registry.tracks:
        per_track = best.get(entry.track)
        if not per_track:
            continue
        baseline_record = per_track.get(entry.baseline.model_id)
        if baseline_record is None:
            continue
        top = max(per_track.values(), key=lambda r: r.metrics["f1_macro"])
        replay_entries.append(
            (entry.track, baseline_record.metrics["f1_macro"], top.metrics["f1_macro"])
        )
    replay = selection.ledger_replay(replay_entries)
    if replay:
        md_parts.append("\n## Development deltas\n" + selection.replay_markdown(replay))

    md = "".join(md_parts)
    payload = {
        "tracks": [entry.track for entry in registry.tracks],
        "runs": len(records),
        "deltas": [row.__dict__ for row in replay],
    }
    if args.out_dir:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "report.md").write_text(md, encoding="utf-8")
        (out_dir / "report.json").write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        print(f"wrote {out_dir / 'report.md'} and {out_dir / 'report.json'}")
        return EXIT_OK
    _print({"md": md, "json": payload}, args.format)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polarkit",
        description="Model selection, soft-voting calibration, and evaluation "
        "analytics over prediction-probability files.",
    )
    parser.add_argument("--version", action="version", version=f"polarkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument(
            "--format", choices=("md", "json"), default="md", help="output format"
        )

    p = sub.add_parser("evaluate", help="score one predictions file against gold")
    p.add_argument("--gold", required=True, help="gold CSV (id,label)")
    p.add_argument("--pred", required=True, help="predictions CSV (id,prob)")
    p.add_argument("--tau", type=float, default=0.5, help="decision threshold")
    p.add_argument("--track", default="und")
    p.add_argument("--model", default=None, help="model id (default: file stem)")
    p.add_argument("--split", choices=("dev", "test"), default="dev")
    add_format(p)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("ensemble", help="soft-vote member probability files")
    p.add_argument("--pred", action="append", required=True, help="member CSV (repeat)")
    p.add_argument(
        "--weights",
        type=_float_list,
        default=None,
        help="comma-separated member weights (default: uniform mean)",
    )
    p.add_argument("--track", default="und")
    p.add_argument("--split", choices=("dev", "test"), default="dev")
    p.add_argument("--out", default=None, help="write combined predictions CSV here")
    add_format(p)
    p.set_defaults(func=_cmd_ensemble)

    p = sub.add_parser("tune", help="grid-search weights and thresholds on dev")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", default=None, help="single run: threshold-only search")
    p.add_argument("--spec", default=None, help="specialist run for pair search")
    p.add_argument("--gen", default=None, help="generalist run for pair search")
    p.add_argument(
        "--alphas",
        type=_float_list,
        default=calibration.DEFAULT_ALPHAS,
        help="ascending specialist weights (default 0,0.05,...,1)",
    )
    p.add_argument(
        "--taus",
        type=_float_list,
        default=calibration.DEFAULT_TAUS,
        help="ascending thresholds (default 0.30,0.35,...,0.70)",
    )
    p.add_argument("--workers", type=int, default=None, help="parallel grid rows")
    p.add_argument("--surface", default=None, help="write the full surface CSV here")
    add_format(p)
    p.set_defaults(func=_cmd_tune)

    p = sub.add_parser("select", help="apply the 2pp architecture-selection policy")
    p.add_argument("--gold", default=None)
    p.add_argument("--track", default=None)
    p.add_argument("--baseline", default=None, help="MODEL=PATH of the baseline run")
    p.add_argument(
        "--candidate", action="append", default=None, help="ROLE:MODEL=PATH (repeat)"
    )
    p.add_argument("--tau", type=float, default=0.5)
    p.add_argument("--delta-min", type=float, default=selection.DELTA_GAIN_MIN)
    p.add_argument(
        "--replay", default=None, help="replay CSV (track,baseline_f1,chosen_f1)"
    )
    add_format(p)
    p.set_defaults(func=_cmd_select)

    p = sub.add_parser("shift", help="classify dev-to-test macro-F1 shifts")
    p.add_argument("--scores", required=True, help="CSV track,dev_f1,test_f1")
    p.add_argument(
        "--skew", action="append", default=None, help="TRACK=PRED:GOLD (repeat)"
    )
    p.add_argument("--tau", type=float, default=0.5)
    p.add_argument("--stability-pp", type=float, default=diagnostics.STABILITY_BAND_PP)
    p.add_argument(
        "--collapse-rate", type=float, default=diagnostics.COLLAPSE_POSITIVE_RATE_MIN
    )
    p.add_argument(
        "--collapse-recall", type=float, default=diagnostics.COLLAPSE_NEUTRAL_RECALL_MAX
    )
    add_format(p)
    p.set_defaults(func=_cmd_shift)

    p = sub.add_parser("leaderboard", help="proximity window and challenge tracks")
    p.add_argument("--scores", required=True, help="CSV track,our_score,sota_score[,rank]")
    p.add_argument("--window", type=float, default=leaderboard.PROXIMITY_FLOOR)
    p.add_argument("--challenge", type=float, default=leaderboard.CHALLENGE_CUTOFF)
    p.add_argument(
        "--baselines", default=None, help="optional CSV track,organizer,inhouse"
    )
    add_format(p)
    p.set_defaults(func=_cmd_leaderboard)

    p = sub.add_parser("frag", help="fragmentation ratios and reductions")
    p.add_argument(
        "--counts", action="append", default=None, help="counts CSV word,subword_count"
    )
    p.add_argument("--vocab", default=None, help="vocabulary file, one token per line")
    p.add_argument("--corpus", default=None, help="whitespace-delimited corpus file")
    add_format(p)
    p.set_defaults(func=_cmd_frag)

    p = sub.add_parser("ablation", help="baseline vs augmented vs final comparison")
    p.add_argument(
        "--rows", required=True, help="CSV track,baseline_f1,augmented_f1,final_f1"
    )
    add_format(p)
    p.set_defaults(func=_cmd_ablation)

    p = sub.add_parser("report", help="regenerate tables from ledger and registry")
    p.add_argument("--ledger", required=True, help="JSONL development ledger")
    p.add_argument("--registry", required=True, help="registry JSON")
    p.add_argument("--out-dir", default=None, help="write report.md/report.json here")
    add_format(p)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
