"""Core domain types.

A ``CitationRecord`` is one article; a ``Cohort`` is every article of one
journal in one year and acts as the normalisation universe; a
``GroupSelection`` picks the national subset under one counting scheme;
``LogStats`` summarises ln(1+c) for a set of articles; ``MnlcsEstimate``
carries the indicator value with its confidence interval and validity flag.

All types are immutable after construction and safe to share across
parallel tasks.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

import numpy as np

from .countries import normalize_country_token
from .errors import (
    MalformedCountry,
    NegativeCitations,
    UnparseableYear,
    ValidationError,
)

# Sanity bounds on plausible publication years; ingestion-time filters narrow
# these further per run.
YEAR_MIN_DEFAULT = 1000
YEAR_MAX_DEFAULT = 2999

# The CSV schema is unquoted, so identifiers must not collide with delimiters.
_JOURNAL_ID_RE = re.compile(r"^[^,;\r\n]+$")
_COUNTRY_CODE_RE = re.compile(r"^[A-Z]{2}$")


class Scheme(str, enum.Enum):
    """Whole-counting scheme for assigning articles to a country."""

    INCLUSIVE = "inclusive"
    EXCLUSIVE = "exclusive"


class EstimateStatus(str, enum.Enum):
    OK = "ok"
    UNBOUNDED_FIELLER = "unbounded_fieller"
    INSUFFICIENT_DATA = "insufficient_data"


@dataclass(frozen=True)
class CitationRecord:
    """One article: journal, year, citation count and author-country set."""

    journal_id: str
    year: int
    citations: int
    countries: frozenset[str]

    def __post_init__(self):
        if not self.journal_id or not _JOURNAL_ID_RE.match(self.journal_id):
            raise ValidationError(f"bad journal_id: {self.journal_id!r}")
        if self.citations < 0:
            raise NegativeCitations(f"citations must be >= 0, got {self.citations}")
        for code in self.countries:
            if not _COUNTRY_CODE_RE.match(code):
                raise MalformedCountry(f"country code must be ISO alpha-2: {code!r}")


def validate_record(
    raw: Mapping[str, object],
    *,
    year_min: int = YEAR_MIN_DEFAULT,
    year_max: int = YEAR_MAX_DEFAULT,
) -> CitationRecord:
    """Build a normalised CitationRecord from a parsed row.

    ``raw`` must provide journal_id, year, citations and countries fields.
    Country tokens are semicolon separated, mapped to uppercase ISO alpha-2
    codes (free-text names go through the bundled lookup table) and
    deduplicated. An empty countries field yields an empty set; such records
    stay in the cohort denominator but can never join a national group.
    """
    for field in ("journal_id", "year", "citations", "countries"):
        if field not in raw:
            raise ValidationError(f"missing field: {field}")

    journal_id = str(raw["journal_id"]).strip()

    try:
        year = int(str(raw["year"]).strip())
    except ValueError:
        raise UnparseableYear(f"unparseable year: {raw['year']!r}") from None
    if not year_min <= year <= year_max:
        raise UnparseableYear(f"year {year} outside [{year_min}, {year_max}]")

    try:
        citations = int(str(raw["citations"]).strip())
    except ValueError:
        raise ValidationError(f"unparseable citations: {raw['citations']!r}") from None

    countries_field = str(raw["countries"])
    codes = set()
    for token in countries_field.split(";"):
        if not token.strip():
            continue
        codes.add(normalize_country_token(token))

    return CitationRecord(
        journal_id=journal_id,
        year=year,
        citations=citations,
        countries=frozenset(codes),
    )


@dataclass(frozen=True)
class Cohort:
    """All articles of one journal-year: the field for normalisation."""

    journal_id: str
    year: int
    records: tuple[CitationRecord, ...]

    def __post_init__(self):
        if not self.records:
            raise ValidationError("cohort must be non-empty")
        for rec in self.records:
            if rec.journal_id != self.journal_id or rec.year != self.year:
                raise ValidationError(
                    f"record ({rec.journal_id}, {rec.year}) does not belong to "
                    f"cohort ({self.journal_id}, {self.year})"
                )

    @property
    def size(self) -> int:
        return len(self.records)

    @cached_property
    def log_citations(self) -> np.ndarray:
        """ln(1+c) per record, in record order. Cached; treat as read-only."""
        counts = np.fromiter(
            (rec.citations for rec in self.records), dtype=np.float64, count=self.size
        )
        return np.log1p(counts)


@dataclass(frozen=True)
class GroupSelection:
    """Indices of the cohort records belonging to one country under one scheme."""

    country: str
    scheme: Scheme
    member_indices: tuple[int, ...]

    def __post_init__(self):
        if list(self.member_indices) != sorted(set(self.member_indices)):
            raise ValidationError("member_indices must be sorted and unique")

    @property
    def size(self) -> int:
        return len(self.member_indices)


@dataclass(frozen=True)
class LogStats:
    """Sample size, mean and standard error of ln(1+c) over a set of articles.

    The standard error is undefined for a single observation, so ``se`` is
    None exactly when n == 1 (never zero-filled).
    """

    n: int
    mean: float
    se: float | None

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"LogStats needs n >= 1, got {self.n}")
        if self.n == 1:
            if self.se is not None:
                raise ValidationError("se is undefined for n == 1; pass None")
        else:
            if self.se is None or self.se < 0:
                raise ValidationError(f"se must be >= 0 for n >= 2, got {self.se}")


@dataclass(frozen=True)
class MnlcsEstimate:
    """Indicator point value plus Fieller interval and validity flag.

    ``ci_low`` is the raw (unclamped) lower bound; coverage arithmetic uses
    it directly, while reports clamp at zero via ``ci_low_reported`` since
    the indicator itself cannot be negative. Bounds are None unless
    ``status`` is OK.
    """

    value: float
    ci_low: float | None
    ci_high: float | None
    h: float | None
    se_mnlcs: float | None
    n_group: int
    n_field: int
    status: EstimateStatus

    @property
    def ci_low_reported(self) -> float | None:
        if self.ci_low is None:
            return None
        return max(0.0, self.ci_low)

    @property
    def centre(self) -> float | None:
        """Interval midpoint value/(1-h); defined only for bounded intervals."""
        if self.status is not EstimateStatus.OK:
            return None
        return self.value / (1.0 - self.h)

    def contains(self, x: float) -> bool:
        """Closed-interval membership test against the unclamped bounds."""
        if self.status is not EstimateStatus.OK:
            raise ValidationError(f"no usable interval: status={self.status.value}")
        return self.ci_low <= x <= self.ci_high
