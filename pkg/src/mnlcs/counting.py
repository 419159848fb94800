"""National group assignment under the two whole-counting schemes.

Inclusive counting takes every article with any author from the country;
exclusive counting takes only articles whose author countries are exactly
that one country, dropping internationally co-authored work. Both are pure
functions over immutable cohorts.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections import Counter
from typing import Iterable

from .model import CitationRecord, Cohort, GroupSelection, Scheme


def record_in_group(record: CitationRecord, country: str, scheme: Scheme) -> bool:
    if scheme is Scheme.INCLUSIVE:
        return country in record.countries
    return record.countries == frozenset((country,))


def select_group(cohort: Cohort, country: str, scheme: Scheme) -> GroupSelection:
    """Select the cohort records belonging to ``country`` under ``scheme``.

    An empty selection is a valid result; records with an empty country set
    are never selected.
    """
    indices = tuple(
        i for i, rec in enumerate(cohort.records) if record_in_group(rec, country, scheme)
    )
    return GroupSelection(country=country, scheme=scheme, member_indices=indices)


@dataclass(frozen=True)
class RankedCountries:
    """Countries ranked by inclusive article count; ``complete`` is False when
    fewer distinct countries exist than were requested."""

    countries: tuple[str, ...]
    requested: int

    @property
    def complete(self) -> bool:
        return len(self.countries) >= self.requested


def inclusive_counts(cohorts: Iterable[Cohort]) -> Counter[str]:
    counts: Counter[str] = Counter()
    for cohort in cohorts:
        for rec in cohort.records:
            counts.update(rec.countries)
    return counts


def top_countries(cohorts: Iterable[Cohort], k: int) -> RankedCountries:
    """Rank countries by inclusive article count, ties broken lexicographically."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    counts = inclusive_counts(cohorts)
    ranked = sorted(counts, key=lambda c: (-counts[c], c))
    return RankedCountries(countries=tuple(ranked[:k]), requested=k)
