"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: configuration-flavoured errors exit
with 2, data-flavoured errors with 3.
"""


class TaScopeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidSpecError(TaScopeError):
    """A dataset or experiment specification violates its preconditions."""


class ConfigurationError(TaScopeError):
    """Mismatched dimensions, bad grids, or otherwise unusable settings."""


class DomainError(TaScopeError):
    """Inputs outside the mathematical domain of an operation."""


class DegenerateKernelError(DomainError):
    """Kernel matrix with vanishing Frobenius norm; alignment is undefined."""


class DataError(TaScopeError):
    """Problems with ingested data content."""


class ParseError(DataError):
    """Malformed row or field in a delimited sample table."""


class DegenerateDataError(DataError):
    """Data without enough variation to support the requested operation."""
