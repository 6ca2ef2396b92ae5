"""Exception types shared across the package."""


class LokexError(Exception):
    """Base class for all lokex errors."""


class EmptyDocument(LokexError):
    """Raised when a document contains no text."""


class NoCandidates(LokexError):
    """Raised when filtering leaves no candidate words."""


class DegenerateCooccurrence(LokexError):
    """Raised when a co-occurrence matrix has no nonzero entries."""


class InvalidComponentCount(LokexError):
    """Raised when a PCA component count is out of range."""


class DimensionMismatch(LokexError):
    """Raised when vector or matrix dimensions are incompatible."""


class InsufficientSamples(LokexError):
    """Raised when an estimator has too few rows to work with."""


class EmptyCollection(LokexError):
    """Raised when a dataset directory contains no usable documents."""


class InsufficientDocuments(LokexError):
    """Raised when a collection is too small for the requested split."""


class EmptyGold(LokexError):
    """Raised when a document has no gold keywords to evaluate against."""
