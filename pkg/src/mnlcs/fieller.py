"""Fieller-type 95% confidence intervals for the indicator ratio.

For a ratio of means R = m_s / m_j with standard errors SE_s, SE_j, the
interval is built from the curvature term

    h = t^2 * (SE_j / m_j)^2

and, when h < 1,

    SE_R   = (R / (1-h)) * sqrt((1-h) * SE_s^2/m_s^2 + SE_j^2/m_j^2)
    bounds = R/(1-h) -/+ t * SE_R

with t the upper critical value of Student's t on n_s + n_j - 2 degrees of
freedom. This is algebraically identical to solving Fieller's quadratic for
the ratio, and collapses to the symmetric delta-method interval
R -/+ t*R*SE_s/m_s as SE_j -> 0. When h >= 1 the denominator is too noisy
for a bounded interval and the estimate is flagged instead of fabricated.

A "printed" variant, h = t * (SE_j / m_s)^2, is exposed for side-by-side
comparison; it is dimensionally inconsistent with the SE expression above
and fails the SE_j -> 0 limit, so "standard" is the default everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from scipy import special

from .errors import DegenerateField, DomainError
from .indicator import mnlcs
from .model import EstimateStatus, LogStats, MnlcsEstimate

FIELLER_FORMS = ("standard", "printed")


@dataclass(frozen=True)
class TQuantileSpec:
    """Degrees of freedom and per-tail alpha for a Student-t critical value."""

    df: float
    alpha: float

    def __post_init__(self):
        if self.df <= 0:
            raise DomainError(f"degrees of freedom must be > 0, got {self.df}")
        if not 0.0 < self.alpha <= 0.5:
            raise DomainError(f"alpha must be in (0, 0.5], got {self.alpha}")


@lru_cache(maxsize=4096)
def _t_quantile_cached(df: float, alpha: float) -> float:
    return float(special.stdtrit(df, 1.0 - alpha))


def t_quantile(df: float, alpha: float = 0.025) -> float:
    """Upper critical value t with P(T > t) = alpha for Student-t on df."""
    spec = TQuantileSpec(df=float(df), alpha=float(alpha))
    return _t_quantile_cached(spec.df, spec.alpha)


def _relative_se_sq(stats: LogStats) -> float:
    # (SE/mean)^2 with the zero-variance limit pinned to 0; mean == 0 forces
    # SE == 0 (all-zero sample), so the 0/0 case resolves to 0 as well.
    if stats.se is None or stats.se == 0.0:
        return 0.0
    return (stats.se / stats.mean) ** 2


def fieller_h(
    t: float,
    field: LogStats,
    *,
    group: LogStats | None = None,
    form: str = "standard",
) -> float:
    """Curvature term of the ratio interval.

    The standard form needs only the field statistics. The printed
    comparison form divides by the group mean instead and scales by t rather
    than t^2; it requires ``group`` and returns inf when the group mean is
    zero (no bounded interval exists there).
    """
    if form not in FIELLER_FORMS:
        raise ValueError(f"unknown form {form!r}, expected one of {FIELLER_FORMS}")
    if field.mean <= 0.0:
        raise DegenerateField("field mean of ln(1+c) is zero")
    if field.se is None:
        raise DomainError("field standard error undefined (n == 1)")
    if form == "standard":
        return t * t * (field.se / field.mean) ** 2
    if group is None:
        raise ValueError("printed form requires group statistics")
    if group.mean == 0.0:
        return math.inf
    return t * (field.se / group.mean) ** 2


def fieller_ci(
    value: float,
    group: LogStats,
    field: LogStats,
    t: float,
    *,
    form: str = "standard",
) -> MnlcsEstimate:
    """Interval for the ratio ``value`` given group and field statistics.

    Returns an estimate flagged INSUFFICIENT_DATA when either sample is too
    small for a standard error, and UNBOUNDED_FIELLER when h >= 1. The
    stored lower bound is unclamped; reporting clamps at zero.
    """
    if field.mean <= 0.0:
        raise DegenerateField("field mean of ln(1+c) is zero")
    if group.n < 2 or field.n < 2:
        return MnlcsEstimate(
            value=value,
            ci_low=None,
            ci_high=None,
            h=None,
            se_mnlcs=None,
            n_group=group.n,
            n_field=field.n,
            status=EstimateStatus.INSUFFICIENT_DATA,
        )

    h = fieller_h(t, field, group=group, form=form)
    if h >= 1.0:
        return MnlcsEstimate(
            value=value,
            ci_low=None,
            ci_high=None,
            h=h if math.isfinite(h) else None,
            se_mnlcs=None,
            n_group=group.n,
            n_field=field.n,
            status=EstimateStatus.UNBOUNDED_FIELLER,
        )

    centre = value / (1.0 - h)
    se = centre * math.sqrt((1.0 - h) * _relative_se_sq(group) + _relative_se_sq(field))
    return MnlcsEstimate(
        value=value,
        ci_low=centre - t * se,
        ci_high=centre + t * se,
        h=h,
        se_mnlcs=se,
        n_group=group.n,
        n_field=field.n,
        status=EstimateStatus.OK,
    )


@dataclass(frozen=True)
class CiSettings:
    """Knobs for interval construction.

    alpha is per tail (0.025 gives two-sided 95%). min_group_n is the
    smallest group for which an interval is attempted; smaller groups keep
    their point value but are flagged INSUFFICIENT_DATA.
    """

    alpha: float = 0.025
    form: str = "standard"
    min_group_n: int = 5

    def __post_init__(self):
        if not 0.0 < self.alpha <= 0.5:
            raise DomainError(f"alpha must be in (0, 0.5], got {self.alpha}")
        if self.form not in FIELLER_FORMS:
            raise ValueError(f"unknown form {self.form!r}")
        if self.min_group_n < 2:
            raise ValueError("min_group_n must be >= 2 (standard error needs n >= 2)")


def estimate(
    group: LogStats, field: LogStats, settings: CiSettings = CiSettings()
) -> MnlcsEstimate:
    """Full chain: ratio value, t on n_s + n_j - 2 df, Fieller interval.

    The degrees of freedom treat the whole journal (group included) as the
    second sample.
    """
    value = mnlcs(group, field)
    if group.n < settings.min_group_n or field.n < 2:
        return MnlcsEstimate(
            value=value,
            ci_low=None,
            ci_high=None,
            h=None,
            se_mnlcs=None,
            n_group=group.n,
            n_field=field.n,
            status=EstimateStatus.INSUFFICIENT_DATA,
        )
    t = t_quantile(group.n + field.n - 2, settings.alpha)
    return fieller_ci(value, group, field, t, form=settings.form)
