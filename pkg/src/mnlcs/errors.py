"""Exception hierarchy shared across the package."""


class MnlcsError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(MnlcsError):
    """A raw input value or row failed validation."""


class NegativeCitations(ValidationError):
    """Citation count below zero."""


class UnparseableYear(ValidationError):
    """Year field could not be parsed or lies outside the configured range."""


class MalformedCountry(ValidationError):
    """Country token is neither an ISO alpha-2 code nor a known country name."""


class InsufficientData(MnlcsError):
    """Not enough observations to perform the requested computation."""


class DegenerateField(MnlcsError):
    """Field mean of ln(1+c) is zero (every article uncited), so the ratio is undefined."""


class NoValidReplicates(MnlcsError):
    """Every resampling replicate was excluded; no coverage estimate possible."""


class DomainError(MnlcsError, ValueError):
    """Numeric argument outside the mathematical domain of the operation."""


class IngestError(MnlcsError):
    """CSV ingestion aborted: bad header or too many malformed rows."""

    def __init__(self, message: str, row_errors: list[tuple[int, str]] | None = None):
        super().__init__(message)
        self.row_errors = row_errors or []
