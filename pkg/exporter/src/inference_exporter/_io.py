"""Input parsing and atomic output writing."""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

from .errors import InputError


def read_samples(path: str | Path) -> list[tuple[str, str]]:
    """Parse an input text file: one sample per line, `id<TAB>text`."""
    samples: list[tuple[str, str]] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            sample_id, sep, text = line.partition("\t")
            if not sep or not sample_id:
                raise InputError(f"{path}:{line_no}: expected id<TAB>text")
            if sample_id in seen:
                raise InputError(f"{path}:{line_no}: duplicate id {sample_id!r}")
            seen.add(sample_id)
            samples.append((sample_id, text))
    if not samples:
        raise InputError(f"{path}: no samples")
    return samples


def read_corpus_words(path: str | Path) -> list[str]:
    """Whitespace-delimited words of a UTF-8 corpus file."""
    words = Path(path).read_text(encoding="utf-8").split()
    if not words:
        raise InputError(f"{path}: no words")
    return words


def write_atomic(path: str | Path, content: str) -> Path:
    """Write via a temp file in the target directory plus rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(content)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return path
