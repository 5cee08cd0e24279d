"""Typed errors raised across the toolkit.

Everything user-facing derives from ValidationError (CLI exit code 3) so
callers can distinguish bad inputs from genuine I/O failures (exit code 4,
plain OSError).
"""

from __future__ import annotations


class PolarkitError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(PolarkitError):
    """Invalid data or configuration supplied by the caller."""


class MissingPredictionError(ValidationError):
    def __init__(self, sample_id: str):
        self.sample_id = sample_id
        super().__init__(f"no prediction for gold sample id {sample_id!r}")


class UnknownIdError(ValidationError):
    def __init__(self, sample_id: str):
        self.sample_id = sample_id
        super().__init__(f"prediction for unknown sample id {sample_id!r}")


class IdMismatchError(ValidationError):
    """Member runs of an ensemble do not share the same sample-id set."""


class TrackMismatchError(ValidationError):
    """Inputs that must cover the same tracks (or track/split) do not."""


class WeightError(ValidationError):
    """Ensemble weights are negative, wrong arity, or do not sum to one."""


class GridError(ValidationError):
    """Search grid is empty, unsorted, or out of [0, 1]."""


class NoBaselineError(ValidationError):
    """Selection requires exactly one baseline evaluation."""


class DuplicateModelIdError(ValidationError):
    def __init__(self, model_id: str):
        self.model_id = model_id
        super().__init__(f"duplicate model id {model_id!r} in candidate set")


class DegenerateGoldError(ValidationError):
    """Gold prevalence outside (0, 1]; the majority baseline is undefined."""


class EmptyWordError(ValidationError):
    """tokenize_word got an empty string."""


class EmptyCorpusError(ValidationError):
    """fragmentation_ratio got an empty corpus."""


class ParseError(ValidationError):
    def __init__(self, path: str, line_no: int, message: str):
        self.path = str(path)
        self.line_no = line_no
        super().__init__(f"{path}:{line_no}: {message}")


class RangeError(ValidationError):
    def __init__(self, sample_id: str, value: float):
        self.sample_id = sample_id
        self.value = value
        super().__init__(f"value {value!r} for id {sample_id!r} outside [0, 1]")


class DuplicateIdError(ValidationError):
    def __init__(self, sample_id: str):
        self.sample_id = sample_id
        super().__init__(f"duplicate sample id {sample_id!r}")


class EmptyInputError(ValidationError):
    """A data file contained a header but no rows."""


class ConflictError(ValidationError):
    """Appending a ledger record whose key already exists."""
