"""CLI entrypoints: export-probs and export-subwords."""

from __future__ import annotations

import argparse
import sys

from .config import ExportJobConfig
from .errors import ExporterError
from .probs import export_probs
from .subwords import export_subword_counts


def _provenance_pairs(values: list[str] | None) -> dict:
    provenance = {}
    for raw in values or []:
        key, sep, value = raw.partition("=")
        if not sep or not key:
            raise ExporterError(f"expected KEY=VALUE provenance entry, got {raw!r}")
        provenance[key] = value
    return provenance


def probs_main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="export-probs",
        description="Run a 2-class sequence-classification checkpoint over "
        "id<TAB>text lines and write an id,prob CSV of polarized-class "
        "probabilities.",
    )
    parser.add_argument("--checkpoint", required=True, help="hub id or local path")
    parser.add_argument("--input", required=True, help="text file, id<TAB>text per line")
    parser.add_argument("--out", required=True, help="output predictions CSV")
    parser.add_argument(
        "--positive-index",
        type=int,
        required=True,
        help="logit column of the polarized class (0 or 1); varies by checkpoint",
    )
    parser.add_argument("--batch-size", type=int, default=16)
    parser.add_argument("--max-seq-len", type=int, default=128)
    parser.add_argument("--device", default="cpu")
    parser.add_argument(
        "--provenance",
        action="append",
        default=None,
        help="KEY=VALUE recorded in the output sidecar (repeat)",
    )
    args = parser.parse_args(argv)
    try:
        out = export_probs(
            ExportJobConfig(
                checkpoint=args.checkpoint,
                input_path=args.input,
                output_path=args.out,
                positive_index=args.positive_index,
                batch_size=args.batch_size,
                max_seq_len=args.max_seq_len,
                device=args.device,
                provenance=_provenance_pairs(args.provenance),
            )
        )
    except ExporterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(out)
    return 0


def subwords_main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="export-subwords",
        description="Tokenize every whitespace word of a corpus and write a "
        "word,subword_count CSV (special tokens excluded).",
    )
    parser.add_argument("--tokenizer", required=True, help="hub id or local path")
    parser.add_argument("--corpus", required=True, help="UTF-8 corpus file")
    parser.add_argument("--out", required=True, help="output counts CSV")
    args = parser.parse_args(argv)
    try:
        out = export_subword_counts(args.tokenizer, args.corpus, args.out)
    except ExporterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(out)
    return 0


def probs_entrypoint() -> None:
    sys.exit(probs_main())


def subwords_entrypoint() -> None:
    sys.exit(subwords_main())
