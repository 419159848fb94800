from collections import Counter

import numpy as np
import pytest

from conftest import cohort, rec
from mnlcs.bootstrap import (
    CoverageSimSpec,
    coverage_probability_sim,
    lag0_batch,
    lag0_coverage,
    split_half,
)
from mnlcs.errors import InsufficientData, NoValidReplicates
from mnlcs.fieller import CiSettings
from mnlcs.model import Cohort, Scheme
from mnlcs.rngtools import stream
from mnlcs.synth import sample_citations


def big_cohort(n_field=2000, n_group=400, mu=1.0, sigma=1.0, seed=42, journal="J1", year=2000):
    counts = sample_citations(mu, sigma, n_field, stream(seed, "big", journal, year))
    records = tuple(
        rec(journal, year, int(c), ("US",) if i < n_group else ())
        for i, c in enumerate(counts)
    )
    return Cohort(journal, year, records)


def test_split_even_sizes():
    c = big_cohort(n_field=10, n_group=4)
    a, b = split_half(c, rng_seed=1)
    assert (a.size, b.size) == (5, 5)


def test_split_odd_sizes():
    c = big_cohort(n_field=11, n_group=4)
    a, b = split_half(c, rng_seed=1)
    assert sorted((a.size, b.size)) == [5, 6]


def test_split_partitions_the_cohort():
    c = big_cohort(n_field=31, n_group=10)
    a, b = split_half(c, rng_seed=3)
    assert Counter(a.records) + Counter(b.records) == Counter(c.records)


def test_split_deterministic_given_seed():
    c = big_cohort(n_field=20, n_group=5)
    first = split_half(c, rng_seed=9)
    second = split_half(c, rng_seed=9)
    assert first == second
    assert split_half(c, rng_seed=10) != first


def test_split_invariant_under_record_order():
    c = big_cohort(n_field=40, n_group=10)
    rng = np.random.default_rng(0)
    shuffled = Cohort(
        c.journal_id, c.year, tuple(c.records[i] for i in rng.permutation(c.size))
    )
    a1, b1 = split_half(c, rng_seed=5)
    a2, b2 = split_half(shuffled, rng_seed=5)
    assert Counter(a1.records) == Counter(a2.records)
    assert Counter(b1.records) == Counter(b2.records)


def test_split_requires_two_records():
    with pytest.raises(InsufficientData):
        split_half(cohort([(1, ())]), rng_seed=0)


def test_lag0_fraction_bounds_and_bookkeeping():
    c = big_cohort(n_field=200, n_group=50, seed=7)
    res = lag0_coverage(c, "US", Scheme.INCLUSIVE, replicates=100, rng_seed=1)
    assert 0.0 <= res.fraction <= 1.0
    assert res.n_valid + res.n_excluded == 100
    assert res.n_inside <= res.n_valid


def test_lag0_invariant_under_record_order():
    c = big_cohort(n_field=120, n_group=30, seed=13)
    rng = np.random.default_rng(2)
    shuffled = Cohort(
        c.journal_id, c.year, tuple(c.records[i] for i in rng.permutation(c.size))
    )
    r1 = lag0_coverage(c, "US", Scheme.INCLUSIVE, replicates=60, rng_seed=4)
    r2 = lag0_coverage(shuffled, "US", Scheme.INCLUSIVE, replicates=60, rng_seed=4)
    assert r1 == r2


def test_lag0_batch_matches_individual_calls():
    c = big_cohort(n_field=150, n_group=40, seed=3)
    targets = [("US", Scheme.INCLUSIVE), ("US", Scheme.EXCLUSIVE)]
    table = lag0_batch(c, targets, replicates=50, rng_seed=8)
    for country, scheme in targets:
        single = lag0_coverage(c, country, scheme, replicates=50, rng_seed=8)
        assert table[(country, scheme)] == single


def test_lag0_engine_matches_scalar_interval_path():
    # dual route: rebuild each replicate with split_half + the scalar
    # estimate() chain and compare decisions with the batched engine
    from mnlcs.bootstrap import _split_permutation
    from mnlcs.fieller import estimate
    from mnlcs.indicator import log_stats_from_logs
    from mnlcs.model import EstimateStatus
    import numpy as np

    c = big_cohort(n_field=81, n_group=24, seed=19)
    settings = CiSettings()
    replicates = 60
    inside = valid = 0
    logs = c.log_citations
    member = np.array([("US" in r.countries) for r in c.records])
    n_a = c.size // 2
    for rep in range(replicates):
        perm = _split_permutation(c, 23, rep)
        idx_a, idx_b = perm[:n_a], perm[n_a:]
        field_a = log_stats_from_logs(logs[idx_a])
        field_b = log_stats_from_logs(logs[idx_b])
        if field_a.mean <= 0 or field_b.mean <= 0:
            continue
        ga = logs[idx_a[member[idx_a]]]
        gb = logs[idx_b[member[idx_b]]]
        if len(ga) < settings.min_group_n or len(gb) == 0:
            continue
        est = estimate(log_stats_from_logs(ga), field_a, settings)
        if est.status is not EstimateStatus.OK:
            continue
        valid += 1
        if est.contains(log_stats_from_logs(gb).mean / field_b.mean):
            inside += 1

    engine = lag0_batch(c, [("US", Scheme.INCLUSIVE)], replicates, rng_seed=23,
                        settings=settings)[("US", Scheme.INCLUSIVE)]
    assert engine.n_valid == valid
    assert engine.n_inside == inside


def test_lag0_large_synthetic_band():
    # halved samples compared against each other land below nominal 95%;
    # the full-size 10k-replicate version is an acceptance criterion
    c = big_cohort(n_field=2000, n_group=400, seed=42)
    res = lag0_coverage(c, "US", Scheme.INCLUSIVE, replicates=400, rng_seed=17)
    assert res.n_excluded == 0
    assert 0.84 <= res.fraction <= 0.96


def test_lag0_minimum_size_group_flagged():
    # a group at exactly the interval threshold cannot survive halving
    c = big_cohort(n_field=60, n_group=5, seed=5)
    with pytest.raises(NoValidReplicates):
        lag0_coverage(c, "US", Scheme.INCLUSIVE, replicates=40, rng_seed=2,
                      settings=CiSettings(min_group_n=5))
    table = lag0_batch(c, [("US", Scheme.INCLUSIVE)], replicates=40, rng_seed=2,
                       settings=CiSettings(min_group_n=5))
    res = table[("US", Scheme.INCLUSIVE)]
    assert res.n_valid == 0
    assert res.n_excluded == 40


def test_coverage_sim_extreme_large_first_sample():
    assert coverage_probability_sim(10_000, 1, replicates=1500, rng_seed=1) < 0.10


def test_coverage_sim_extreme_large_second_sample():
    frac = coverage_probability_sim(10, 10_000, replicates=1500, rng_seed=2)
    assert 0.90 <= frac <= 0.96


def test_coverage_sim_middle_case_sits_between_extremes():
    frac = coverage_probability_sim(100, 100, replicates=1500, rng_seed=3)
    assert 0.2 < frac < 0.93


def test_coverage_sim_monotone_toward_zero():
    # growing the first sample with a single-draw second sample shrinks the
    # interval and drives coverage down
    fracs = [
        coverage_probability_sim(n, 1, replicates=1500, rng_seed=4)
        for n in (50, 500, 5000)
    ]
    assert fracs[1] <= fracs[0] + 0.02
    assert fracs[2] <= fracs[1] + 0.02


def test_coverage_sim_spec_validation():
    with pytest.raises(ValueError):
        CoverageSimSpec(1, 1)
    with pytest.raises(ValueError):
        CoverageSimSpec(10, 0)
    with pytest.raises(ValueError):
        CoverageSimSpec(10, 1, sigma0=0.0)
    with pytest.raises(ValueError):
        CoverageSimSpec(10, 1, replicates=50)
    spec = CoverageSimSpec(40, 40, mu0=2.0, sigma0=3.0, replicates=200, rng_seed=5)
    assert 0.0 <= spec.run() <= 1.0
