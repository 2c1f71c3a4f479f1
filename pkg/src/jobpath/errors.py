"""Exception types shared across the package."""


class JobPathError(Exception):
    """Base class for package errors."""


class IngestError(JobPathError):
    """Raised when a trajectory file cannot be parsed at all (bad JSON)."""


class SchemaViolation(JobPathError):
    """Raised for a structurally readable record that violates the schema."""


class ConfigError(JobPathError):
    """Raised for out-of-range or malformed configuration values."""


class MissingArtifactError(JobPathError):
    """Raised when a required on-disk artifact does not exist."""
