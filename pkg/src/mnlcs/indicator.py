"""MNLCS point estimate.

The indicator is the ratio of the group mean to the whole-field mean of the
log-transformed citation counts ln(1+c), so 1.0 means the group sits exactly
at the field average. The field denominator always includes the group's own
articles. Means use compensated summation (math.fsum); journal-year cohorts
reach 10^4 articles and naive accumulation loses digits there.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from .errors import DegenerateField, InsufficientData
from .model import LogStats


def log_stats_from_logs(logs: np.ndarray) -> LogStats:
    """LogStats from precomputed ln(1+c) values (fast path for resampling)."""
    n = len(logs)
    if n == 0:
        raise InsufficientData("cannot summarise an empty sample")
    mean = math.fsum(logs) / n
    if n == 1:
        return LogStats(n=1, mean=mean, se=None)
    centred = logs - mean
    var = math.fsum(centred * centred) / (n - 1)
    return LogStats(n=n, mean=mean, se=math.sqrt(var / n))


def log_stats(citations: Iterable[int]) -> LogStats:
    """Mean and standard error of ln(1+c) over raw citation counts."""
    counts = np.asarray(list(citations), dtype=np.float64)
    if counts.size and counts.min() < 0:
        raise ValueError("citation counts must be non-negative")
    return log_stats_from_logs(np.log1p(counts))


def mnlcs(group: LogStats, field: LogStats) -> float:
    """Ratio of group to field mean of ln(1+c).

    Raises DegenerateField when the field mean is zero (every article in the
    journal-year uncited), which leaves the ratio undefined.
    """
    if field.mean <= 0.0:
        raise DegenerateField("field mean of ln(1+c) is zero")
    return group.mean / field.mean
