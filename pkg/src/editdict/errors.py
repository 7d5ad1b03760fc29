"""Exception hierarchy for the editdict package."""


class EditDictError(Exception):
    """Base class for all editdict errors."""


class ValidationError(EditDictError, ValueError):
    """Bad input: malformed word, illegal configuration value, bad argument."""


class TableFullError(EditDictError):
    """An insert would push a table past its hard ceiling load (0.95).

    Tables are never rehashed; callers that need more room must rebuild.
    """


class CompactedError(EditDictError):
    """A mutating operation was attempted on a compacted (static) structure."""


class UnsupportedQueryError(EditDictError):
    """The requested error bound k exceeds what the index was built for."""


class IndexFormatError(EditDictError):
    """A serialized index could not be read."""


class BadMagicError(IndexFormatError):
    """The file does not start with the expected magic bytes."""


class VersionMismatchError(IndexFormatError):
    """The file carries an unsupported format version."""


class TruncatedError(IndexFormatError):
    """The file is shorter than its own declared layout."""


class ChecksumError(IndexFormatError):
    """The trailing checksum does not match the file body."""
