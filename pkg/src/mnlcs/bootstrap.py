"""Split-half resampling: the no-change coverage baseline.

Splitting one journal-year at random into two halves and asking how often
the second half's indicator lands inside the first half's 95% interval
estimates coverage under genuinely unchanged conditions. The halving shrinks
every sample, so this baseline sits below what full-size samples would give;
it is the offset-0 anchor for the stability curves.

One split is made per (seed, journal, year, replicate) and shared by every
country and scheme, mirroring how the journal and its national subsets must
be halved together. Records are canonically sorted before the seeded
shuffle so results do not depend on input row order. Replicates draw their
own streams and are reduced with plain counting, so they could run in any
order or in parallel; here they are batched through numpy (sums are
pairwise, not compensated, which is ample at half-cohort sizes).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy import special

from .counting import record_in_group
from .errors import InsufficientData, NoValidReplicates
from .fieller import CiSettings, t_quantile
from .model import Cohort, Scheme
from .rngtools import stream


def _canonical_order(cohort: Cohort) -> list[int]:
    def key(i: int):
        rec = cohort.records[i]
        return (rec.citations, tuple(sorted(rec.countries)))

    return sorted(range(cohort.size), key=key)


def _split_permutation(
    cohort: Cohort, rng_seed: int, replicate: int, order: np.ndarray | None = None
) -> np.ndarray:
    if order is None:
        order = np.asarray(_canonical_order(cohort), dtype=np.intp)
    rng = stream(rng_seed, "lag0-split", cohort.journal_id, cohort.year, replicate)
    return order[rng.permutation(cohort.size)]


def split_half(cohort: Cohort, rng_seed: int) -> tuple[Cohort, Cohort]:
    """Random disjoint partition into halves whose sizes differ by at most 1.

    Deterministic given the seed (and the cohort's journal/year identity),
    regardless of record order in the input.
    """
    if cohort.size < 2:
        raise InsufficientData("cannot split a cohort of size < 2")
    perm = _split_permutation(cohort, rng_seed, replicate=0)
    n_a = cohort.size // 2
    recs = cohort.records
    half_a = Cohort(cohort.journal_id, cohort.year, tuple(recs[i] for i in perm[:n_a]))
    half_b = Cohort(cohort.journal_id, cohort.year, tuple(recs[i] for i in perm[n_a:]))
    return half_a, half_b


@dataclass(frozen=True)
class Lag0Result:
    """Coverage over valid replicates plus the exclusion tally."""

    fraction: float
    n_inside: int
    n_valid: int
    n_excluded: int


def _half_stats(values: np.ndarray, squares: np.ndarray, counts: np.ndarray):
    """Per-replicate mean and standard error of the mean from half sums."""
    with np.errstate(divide="ignore", invalid="ignore"):
        mean = values / counts
        var = (squares - values * values / counts) / (counts - 1)
        var = np.maximum(var, 0.0)  # guards tiny negative residue from cancellation
        se = np.sqrt(var / counts)
    return mean, se


def lag0_batch(
    cohort: Cohort,
    targets: Iterable[tuple[str, Scheme]],
    replicates: int = 1000,
    rng_seed: int = 0,
    settings: CiSettings = CiSettings(),
) -> dict[tuple[str, Scheme], Lag0Result]:
    """Split-half coverage for several (country, scheme) targets at once.

    Replicates are excluded per target when half A cannot produce a bounded
    interval (group under the size threshold, or curvature h >= 1) or half B
    has no group members; a degenerate field mean in either half excludes
    the replicate for every target. Targets that never produce a valid
    replicate come back with n_valid == 0 rather than raising.
    """
    if cohort.size < 2:
        raise InsufficientData("cannot split a cohort of size < 2")
    if replicates < 1:
        raise ValueError("replicates must be >= 1")

    targets = list(targets)
    logs = cohort.log_citations
    n = cohort.size
    n_a = n // 2

    order = np.asarray(_canonical_order(cohort), dtype=np.intp)
    perms = np.stack(
        [_split_permutation(cohort, rng_seed, rep, order) for rep in range(replicates)]
    )
    gathered = logs[perms]  # (replicates, n)
    gathered_sq = gathered * gathered

    field_a_mean, field_a_se = _half_stats(
        gathered[:, :n_a].sum(axis=1),
        gathered_sq[:, :n_a].sum(axis=1),
        np.full(replicates, n_a, dtype=np.float64),
    )
    field_b_mean = gathered[:, n_a:].sum(axis=1) / (n - n_a)
    fields_usable = (field_a_mean > 0.0) & (field_b_mean > 0.0)

    with np.errstate(divide="ignore", invalid="ignore"):
        rel_j2 = np.where(field_a_se > 0.0, (field_a_se / field_a_mean) ** 2, 0.0)

    results = {}
    for country, scheme in targets:
        member = np.fromiter(
            (record_in_group(rec, country, scheme) for rec in cohort.records),
            dtype=bool,
            count=n,
        )
        member_perm = member[perms]
        ga_mask = member_perm[:, :n_a]
        gb_mask = member_perm[:, n_a:]
        counts_a = ga_mask.sum(axis=1).astype(np.float64)
        counts_b = gb_mask.sum(axis=1).astype(np.float64)

        group_a_mean, group_a_se = _half_stats(
            (gathered[:, :n_a] * ga_mask).sum(axis=1),
            (gathered_sq[:, :n_a] * ga_mask).sum(axis=1),
            counts_a,
        )
        with np.errstate(divide="ignore", invalid="ignore"):
            group_b_mean = (gathered[:, n_a:] * gb_mask).sum(axis=1) / counts_b

            sized = counts_a >= settings.min_group_n
            df = counts_a + n_a - 2.0
            t = special.stdtrit(np.where(sized, df, 2.0), 1.0 - settings.alpha)
            if settings.form == "standard":
                h = t * t * rel_j2
            else:
                h = np.where(
                    group_a_mean > 0.0,
                    t * (field_a_se / np.where(group_a_mean > 0.0, group_a_mean, 1.0)) ** 2,
                    np.inf,
                )
            value = group_a_mean / field_a_mean
            centre = value / (1.0 - h)
            rel_s2 = np.where(
                group_a_se > 0.0,
                (group_a_se / np.where(group_a_mean > 0.0, group_a_mean, 1.0)) ** 2,
                0.0,
            )
            se = centre * np.sqrt((1.0 - h) * rel_s2 + rel_j2)
            value_b = group_b_mean / field_b_mean

            valid = fields_usable & sized & (counts_b >= 1.0) & (h < 1.0)
            inside = valid & (centre - t * se <= value_b) & (value_b <= centre + t * se)

        n_valid = int(valid.sum())
        n_inside = int(inside.sum())
        results[(country, scheme)] = Lag0Result(
            fraction=n_inside / n_valid if n_valid else float("nan"),
            n_inside=n_inside,
            n_valid=n_valid,
            n_excluded=replicates - n_valid,
        )
    return results


def lag0_coverage(
    cohort: Cohort,
    country: str,
    scheme: Scheme,
    replicates: int = 1000,
    rng_seed: int = 0,
    settings: CiSettings = CiSettings(),
) -> Lag0Result:
    """Fraction of splits where half B's value lies in half A's interval.

    Raises NoValidReplicates when every replicate was excluded; see
    lag0_batch for the exclusion rules.
    """
    table = lag0_batch(cohort, [(country, scheme)], replicates, rng_seed, settings)
    result = table[(country, scheme)]
    if result.n_valid == 0:
        raise NoValidReplicates(
            f"all {replicates} replicates excluded for {country}/{scheme.value} "
            f"in ({cohort.journal_id}, {cohort.year})"
        )
    return result


@dataclass(frozen=True)
class CoverageSimSpec:
    """Two-sample mean-coverage simulation under Normal(mu0, sigma0^2)."""

    n_first: int
    n_second: int
    mu0: float = 0.0
    sigma0: float = 1.0
    replicates: int = 10000
    rng_seed: int = 0

    def __post_init__(self):
        if self.n_first < 2:
            raise ValueError("n_first must be >= 2")
        if self.n_second < 1:
            raise ValueError("n_second must be >= 1")
        if self.sigma0 <= 0:
            raise ValueError("sigma0 must be > 0")
        if self.replicates < 100:
            raise ValueError("replicates must be >= 100")

    def run(self) -> float:
        return coverage_probability_sim(
            self.n_first,
            self.n_second,
            mu0=self.mu0,
            sigma0=self.sigma0,
            replicates=self.replicates,
            rng_seed=self.rng_seed,
        )


def coverage_probability_sim(
    n_first: int,
    n_second: int,
    mu0: float = 0.0,
    sigma0: float = 1.0,
    replicates: int = 10000,
    rng_seed: int = 0,
) -> float:
    """P(second-sample mean falls in the first sample's 95% CI for the mean).

    Both samples are drawn from Normal(mu0, sigma0^2); the interval is the
    usual t interval, mean -/+ t * s / sqrt(n). Depending on the two sample
    sizes the result ranges from near 0 (huge first sample, single-draw
    second sample) up to about 0.95 (small first sample, huge second one).
    """
    spec = CoverageSimSpec(n_first, n_second, mu0, sigma0, replicates, rng_seed)
    t = t_quantile(spec.n_first - 1, 0.025)
    inside = 0
    for rep in range(spec.replicates):
        rng = stream(spec.rng_seed, "coverage-sim", rep)
        first = rng.normal(spec.mu0, spec.sigma0, size=spec.n_first)
        second = rng.normal(spec.mu0, spec.sigma0, size=spec.n_second)
        m = first.mean()
        half = t * first.std(ddof=1) / np.sqrt(spec.n_first)
        m2 = second.mean()
        if m - half <= m2 <= m + half:
            inside += 1
    return inside / spec.replicates
