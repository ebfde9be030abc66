"""Exception types shared across the package."""


class AOKRError(Exception):
    """Base class for all package errors."""


class DomainError(AOKRError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigurationError(AOKRError, ValueError):
    """A configuration value is invalid or unsafe for the numerical grid.

    ``field`` names the offending setting when known, so front ends can
    report field-level messages.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field

    def __str__(self):
        msg = super().__str__()
        return f"{self.field}: {msg}" if self.field else msg


class GridMismatchError(AOKRError, ValueError):
    """A wave packet and a propagation plan live on different grids."""


class NyquistOverflowError(AOKRError, RuntimeError):
    """Probability has spread too close to the momentum cutoff of the grid."""
