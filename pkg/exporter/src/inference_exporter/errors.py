"""Typed exporter errors."""


class ExporterError(Exception):
    """Base class for exporter failures."""


class CheckpointError(ExporterError):
    """Checkpoint could not be loaded as a sequence classifier."""


class ShapeError(ExporterError):
    """Classification head is not 2-class."""


class TokenizerError(ExporterError):
    """Tokenizer could not be loaded."""


class InputError(ExporterError):
    """Malformed input text or corpus file."""
