"""Per-word subword counts: tokenizer + corpus -> `word,subword_count` CSV.

One row per corpus word occurrence; special and boundary markers are
excluded (the tokenize() path never adds them). A word the tokenizer maps
to nothing counts as one unknown piece, mirroring the consumer's
convention.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

from ._io import read_corpus_words, write_atomic
from .errors import TokenizerError


def load_tokenizer(reference: str):
    from transformers import AutoTokenizer

    try:
        return AutoTokenizer.from_pretrained(reference)
    except Exception as exc:
        raise TokenizerError(f"cannot load tokenizer {reference!r}: {exc}") from exc


def export_subword_counts(
    tokenizer_ref: str, corpus_path: str | Path, output_path: str | Path
) -> Path:
    tokenizer = load_tokenizer(tokenizer_ref)
    words = read_corpus_words(corpus_path)

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["word", "subword_count"])
    for word in words:
        pieces = tokenizer.tokenize(word)
        writer.writerow([word, max(len(pieces), 1)])
    return write_atomic(output_path, buf.getvalue())
