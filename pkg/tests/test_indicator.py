import math

import pytest
from hypothesis import given, strategies as st

from mnlcs.errors import DegenerateField, InsufficientData
from mnlcs.indicator import log_stats, log_stats_from_logs, mnlcs


def test_single_uncited_article():
    stats = log_stats([0])
    assert stats.n == 1
    assert stats.mean == 0.0
    assert stats.se is None


def test_two_article_mean_against_direct_evaluation():
    stats = log_stats([1, 7])
    # independent evaluation: (ln 2 + ln 8) / 2
    expected = (math.log(2) + math.log(8)) / 2
    assert stats.mean == pytest.approx(expected, abs=1e-15)
    assert stats.mean == pytest.approx(1.386294361119891, abs=1e-12)


def test_constant_sample_has_zero_se():
    stats = log_stats([3, 3, 3])
    assert stats.mean == pytest.approx(math.log(4), abs=1e-15)
    assert stats.se == 0.0


def test_se_matches_direct_formula():
    values = [0, 1, 3, 7, 2]
    logs = [math.log1p(v) for v in values]
    mean = sum(logs) / len(logs)
    var = sum((x - mean) ** 2 for x in logs) / (len(logs) - 1)
    stats = log_stats(values)
    assert stats.se == pytest.approx(math.sqrt(var / len(logs)), rel=1e-12)


def test_empty_sample_rejected():
    with pytest.raises(InsufficientData):
        log_stats([])


def test_negative_counts_rejected():
    with pytest.raises(ValueError):
        log_stats([1, -2])


def test_group_equal_to_field_gives_exactly_one():
    field = log_stats([0, 1, 3, 7, 12, 4])
    assert abs(mnlcs(field, field) - 1.0) <= 1e-12


def test_golden_ratio_four_thirds():
    value = mnlcs(log_stats([1, 7]), log_stats([0, 1, 3, 7]))
    assert abs(value - 4.0 / 3.0) <= 1e-12


def test_all_zero_group_gives_zero():
    assert mnlcs(log_stats([0, 0]), log_stats([0, 1, 3])) == 0.0


def test_all_zero_field_is_degenerate():
    with pytest.raises(DegenerateField):
        mnlcs(log_stats([1]), log_stats([0, 0, 0]))


counts = st.lists(st.integers(min_value=0, max_value=10**5), min_size=1, max_size=50)


@given(counts.filter(lambda c: any(c)))
def test_identity_ratio_property(field_counts):
    stats = log_stats(field_counts)
    assert abs(mnlcs(stats, stats) - 1.0) <= 1e-12


@given(
    counts.filter(lambda c: any(c)),
    st.lists(st.integers(min_value=0, max_value=10**5), min_size=1, max_size=20),
)
def test_duplicating_every_record_leaves_ratio_unchanged(field_counts, group_counts):
    base = mnlcs(log_stats(group_counts), log_stats(field_counts))
    doubled = mnlcs(log_stats(group_counts * 2), log_stats(field_counts * 2))
    assert doubled == pytest.approx(base, rel=1e-12)


@given(
    st.lists(st.integers(min_value=0, max_value=1000), min_size=1, max_size=20),
    st.integers(min_value=0, max_value=19),
)
def test_adding_a_citation_never_decreases_group_mean(group_counts, idx):
    before = log_stats(group_counts).mean
    bumped = list(group_counts)
    bumped[idx % len(bumped)] += 1
    after = log_stats(bumped).mean
    assert after >= before


def test_fast_path_agrees_with_raw_counts_path():
    import numpy as np

    counts_list = [0, 1, 3, 7, 2, 9]
    a = log_stats(counts_list)
    b = log_stats_from_logs(np.log1p(np.asarray(counts_list, dtype=float)))
    assert a == b
