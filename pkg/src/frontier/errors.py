"""Exception classes shared across the package.

Exit-code mapping used by the CLI: ConfigError -> 2, NumericalError -> 3,
PropertyViolation -> 4.
"""


class FrontierError(Exception):
    """Base class for all package errors."""


class ConfigError(FrontierError):
    """Invalid or malformed run configuration."""


class NumericalError(FrontierError):
    """Quadrature non-convergence, instability, NaN/Inf, bracket failure."""


class PropertyViolation(FrontierError):
    """A structural property (ordering, monotonicity) failed at runtime."""
