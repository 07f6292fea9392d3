"""Exception types shared across the lexsumm package."""


class LexsummError(Exception):
    """Base class for all lexsumm errors."""


class ValidationError(LexsummError):
    """Input data violates a documented constraint."""


class NotFoundError(LexsummError):
    """A requested case does not exist in the store."""


class ConfigurationError(LexsummError):
    """An operation was invoked without the configuration it requires."""


class StorageError(LexsummError):
    """The corpus store directory could not be read or written."""


class ModelDecodeError(ValidationError):
    """A model file could not be decoded into a ScoringModel."""
