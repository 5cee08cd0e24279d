"""Tokenizer-efficiency analysis: subwords-per-word ratios.

Ships a reference greedy longest-match subword tokenizer for self-contained
use; real tokenizers are consumed through precomputed per-word count files
(CSV `word,subword_count`). Words are whitespace-delimited; scripts without
whitespace boundaries must be supplied pre-segmented, one word per line.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .errors import (
    EmptyCorpusError,
    EmptyInputError,
    EmptyWordError,
    ParseError,
    ValidationError,
)


@dataclass(frozen=True)
class SubwordVocabulary:
    """Subword token set; continuation pieces carry the prefix (default '##')."""

    tokens: frozenset[str]
    continuation_prefix: str = "##"
    unknown_token_cost: int = 1

    def __post_init__(self):
        if not self.tokens:
            raise ValidationError("vocabulary is empty")
        if self.unknown_token_cost < 1:
            raise ValidationError(
                f"unknown_token_cost must be >= 1, got {self.unknown_token_cost!r}"
            )

    @classmethod
    def from_file(cls, path: str | Path, **kwargs) -> "SubwordVocabulary":
        """Load a vocabulary file: UTF-8, one token per line."""
        tokens = set()
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                token = line.rstrip("\n")
                if token:
                    tokens.add(token)
        if not tokens:
            raise EmptyInputError(f"vocabulary file {path} has no tokens")
        return cls(tokens=frozenset(tokens), **kwargs)


def tokenize_word(vocab: SubwordVocabulary, word: str) -> int:
    """Subword count under greedy longest-prefix matching.

    Matches the longest vocabulary token at the word start, then the longest
    continuation-prefixed token thereafter. A word that cannot be covered at
    some position costs `unknown_token_cost` as a whole.
    """
    if not word:
        raise EmptyWordError("cannot tokenize an empty word")
    if any(ch.isspace() for ch in word):
        raise ValidationError(f"word {word!r} contains whitespace")
    pos = 0
    count = 0
    while pos < len(word):
        prefix = "" if pos == 0 else vocab.continuation_prefix
        match_len = 0
        for end in range(len(word), pos, -1):
            if prefix + word[pos:end] in vocab.tokens:
                match_len = end - pos
                break
        if match_len == 0:
            return vocab.unknown_token_cost
        count += 1
        pos += match_len
    return count


@dataclass(frozen=True)
class FragmentationReport:
    """Micro-averaged subwords-per-word ratio for one (tokenizer, corpus) pair."""

    tokenizer_id: str
    corpus_id: str
    word_count: int
    subword_count: int

    @property
    def ratio(self) -> float:
        return self.subword_count / self.word_count

    def as_dict(self) -> dict:
        return {
            "tokenizer_id": self.tokenizer_id,
            "corpus_id": self.corpus_id,
            "word_count": self.word_count,
            "subword_count": self.subword_count,
            "ratio": self.ratio,
        }


def fragmentation_ratio(
    corpus: Iterable[str],
    tokenizer: Callable[[str], int],
    *,
    tokenizer_id: str = "tokenizer",
    corpus_id: str = "corpus",
) -> FragmentationReport:
    """Total subwords over total words (micro-average, not mean of ratios)."""
    word_count = 0
    subword_count = 0
    for word in corpus:
        word_count += 1
        subword_count += tokenizer(word)
    if word_count == 0:
        raise EmptyCorpusError("corpus has no words")
    return FragmentationReport(
        tokenizer_id=tokenizer_id,
        corpus_id=corpus_id,
        word_count=word_count,
        subword_count=subword_count,
    )


def ratio_from_counts(
    counts: Sequence[tuple[str, int]],
    *,
    tokenizer_id: str = "tokenizer",
    corpus_id: str = "corpus",
) -> FragmentationReport:
    """Report built from precomputed (word, subword_count) pairs."""
    if not counts:
        raise EmptyCorpusError("counts table has no rows")
    return FragmentationReport(
        tokenizer_id=tokenizer_id,
        corpus_id=corpus_id,
        word_count=len(counts),
        subword_count=sum(count for _, count in counts),
    )


def load_word_counts(path: str | Path) -> list[tuple[str, int]]:
    """Load a precomputed-counts CSV (`word,subword_count` with header)."""
    rows: list[tuple[str, int]] = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["word", "subword_count"]:
            raise ParseError(path, 1, f"expected header word,subword_count, got {header!r}")
        for line_no, row in enumerate(reader, start=2):
            if len(row) != 2 or not row[0]:
                raise ParseError(path, line_no, f"malformed row {row!r}")
            try:
                count = int(row[1])
            except ValueError:
                raise ParseError(path, line_no, f"subword_count {row[1]!r} is not an integer")
            if count < 0:
                raise ParseError(path, line_no, f"negative subword_count {count}")
            rows.append((row[0], count))
    if not rows:
        raise EmptyInputError(f"counts file {path} has no rows")
    return rows


def load_corpus(path: str | Path) -> list[str]:
    """Words from a UTF-8 text file, split on Unicode whitespace only."""
    text = Path(path).read_text(encoding="utf-8")
    words = text.split()
    if not words:
        raise EmptyCorpusError(f"corpus file {path} has no words")
    return words


def reduction(base_ratio: float, spec_ratio: float) -> float:
    """Percentage reduction of the specialist ratio vs the base, 1 decimal."""
    if base_ratio <= 0 or spec_ratio <= 0:
        raise ValidationError("fragmentation ratios must be positive")
    return round((base_ratio - spec_ratio) / base_ratio * 100, 1)


def fragmentation_markdown(
    rows: Sequence[tuple[str, FragmentationReport, FragmentationReport]]
) -> str:
    """Table of (label, base report, specialist report) with reductions."""
    lines = [
        "| Corpus | Base | Specialist | Reduction |",
        "|---|---|---|---|",
    ]
    for label, base, spec in rows:
        red = reduction(base.ratio, spec.ratio)
        lines.append(
            f"| {label} | {base.ratio:.2f} ({base.tokenizer_id}) "
            f"| {spec.ratio:.2f} ({spec.tokenizer_id}) | {red:.1f}% |"
        )
    return "\n".join(lines) + "\n"
