"""Boundary adapter: runs transformer checkpoints and tokenizers and dumps
prediction-probability and per-word subword-count files in the analytics
toolkit's formats. All scoring lives in the consumer; this package only
produces files."""

__version__ = "0.1.0"

from .config import ExportJobConfig
from .errors import CheckpointError, ExporterError, InputError, ShapeError, TokenizerError
from .probs import export_probs
from .subwords import export_subword_counts

__all__ = [
    "CheckpointError",
    "ExportJobConfig",
    "ExporterError",
    "InputError",
    "ShapeError",
    "TokenizerError",
    "export_probs",
    "export_subword_counts",
]
