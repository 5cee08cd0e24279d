from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import InputError


@dataclass(frozen=True)
class ExportJobConfig:
    """One probability-export job.

    `positive_index` names the logit column holding the polarized class;
    it is mandatory because the class order varies by checkpoint.
    `provenance` is carried verbatim into the output sidecar (seed,
    learning rate, epochs from the training run) and never interpreted.
    """

    checkpoint: str
    input_path: str | Path
    output_path: str | Path
    positive_index: int
    batch_size: int = 16
    max_seq_len: int = 128
    device: str = "cpu"
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.positive_index not in (0, 1):
            raise InputError(f"positive index must be 0 or 1, got {self.positive_index!r}")
        if self.max_seq_len <= 0:
            raise InputError(f"max sequence length must be positive, got {self.max_seq_len!r}")
        if self.batch_size <= 0:
            raise InputError(f"batch size must be positive, got {self.batch_size!r}")
