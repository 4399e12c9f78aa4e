"""Exception types shared across the package."""


class ShearCascadeError(Exception):
    """Base class for all package errors."""


class ProfileRangeError(ShearCascadeError):
    """Profile evaluated outside the vertical extent of the box."""


class ProfileConfigError(ShearCascadeError):
    """Profile constructed from invalid parameters or insufficient samples."""


class GridResolutionError(ShearCascadeError):
    """Collocation grid too coarse to resolve the spectral basis exactly."""


class ConfigError(ShearCascadeError):
    """Run configuration failed schema validation.

    The message carries the dotted path of the offending field.
    """


class BlowUpError(ShearCascadeError):
    """Time integration produced non-finite or runaway coefficients."""

    def __init__(self, message, last_good_time=None):
        super().__init__(message)
        self.last_good_time = last_good_time


class SchemaVersionError(ShearCascadeError):
    """Persisted artifact carries an incompatible schema version."""


class SnapshotError(ShearCascadeError):
    """Snapshot file pair is inconsistent or does not match the basis."""
