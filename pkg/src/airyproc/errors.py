"""Exception types shared across the package.

The CLI maps these onto exit codes: argument/range problems exit with 2,
numerical failures (lost factorization, lost separatrix) exit with 3.
"""


class AiryprocError(Exception):
    """Base class for all package errors."""


class DomainError(AiryprocError, ValueError):
    """An argument is outside the mathematical domain (non-finite, out of table range)."""


class ConfigurationError(AiryprocError, ValueError):
    """A configuration value is outside the supported range (rule size, cutoff, s-range)."""


class UnsupportedParameterError(AiryprocError, ValueError):
    """A parameter is in a regime the implementation does not chase (e.g. too-small t)."""


class SingularityError(AiryprocError, RuntimeError):
    """A linear solve or determinant failed; names the responsible module."""


class InstabilityError(AiryprocError, RuntimeError):
    """The ODE integration left the Hastings-McLeod separatrix; names the s where."""
