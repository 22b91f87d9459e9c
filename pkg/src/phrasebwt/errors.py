class PhrasebwtError(Exception):
    """Base class for all errors raised by this package."""


class IngestionError(PhrasebwtError):
    """Malformed or empty input data."""


class FormatError(PhrasebwtError):
    """A binary artifact is corrupt or has an unexpected layout."""


class ParamsMismatchError(PhrasebwtError):
    """Artifacts built with different parsing parameters were combined."""


class MergeInvariantError(PhrasebwtError):
    """A merge-time invariant failed (non-exclusive suffixes, stream imbalance)."""


class OracleSizeError(PhrasebwtError):
    """Input exceeds the size bound the brute-force reference accepts."""
