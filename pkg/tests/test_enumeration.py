import pytest

from partlab import enumeration, qseries
from partlab.enumeration import ALL, DISTINCT, generate, count_where, multiplicity_at_most, sum_statistic
from partlab.errors import DomainError, ResourceLimitError
from partlab.partition import Partition, format_partition


def test_all_partitions_of_4_in_order():
    got = [format_partition(p) for p in generate(4, ALL)]
    assert got == ["4", "3,1", "2^2", "2,1^2", "1^4"]


def test_n0_yields_exactly_empty():
    assert list(generate(0, DISTINCT)) == [Partition()]
    assert list(generate(0, ALL)) == [Partition()]


def test_multiplicity_bound_matches_no_multiples_filter():
    # Bound t-1 on multiplicities against the no-part-divisible-by-t filter.
    for t in (2, 3, 4, 5):
        for n in range(0, 41):
            bounded = sum(1 for _ in generate(n, multiplicity_at_most(t - 1)))
            filtered = count_where(
                n, ALL, lambda p, t=t: all(part % t for part, _ in p.pairs)
            )
            assert bounded == filtered, (t, n)


def test_count_where_examples():
    assert count_where(3, ALL, lambda p: sum(1 for part, _ in p.pairs if part % 2 == 0) == 1) == 1
    assert count_where(5, ALL) == 7
    assert count_where(2, DISTINCT, lambda p: False) == 0


def test_sum_statistic_even_parts_over_distinct():
    even_parts = lambda p: sum(m for part, m in p.pairs if part % 2 == 0)
    assert sum_statistic(2, DISTINCT, even_parts) == 1
    assert sum_statistic(3, DISTINCT, even_parts) == 1
    assert sum_statistic(1, DISTINCT, even_parts) == 0


def test_counts_match_series_engines():
    euler = qseries.inverse(qseries.pochhammer(1, 1, 40))
    distinct = qseries.pochhammer_plus(1, 1, 40)
    for n in range(41):
        assert sum(1 for _ in generate(n, ALL)) == euler.coeffs[n]
        assert sum(1 for _ in generate(n, DISTINCT)) == distinct.coeffs[n]


def test_streams_have_no_duplicates():
    for kind in (ALL, DISTINCT, multiplicity_at_most(3)):
        for n in range(26):
            seen = set()
            for p in generate(n, kind):
                text = format_partition(p)
                assert text not in seen
                seen.add(text)


def test_generation_is_deterministic():
    first = [format_partition(p) for p in generate(12, ALL)]
    second = [format_partition(p) for p in generate(12, ALL)]
    assert first == second


def test_cap_enforced_and_overridable(monkeypatch):
    monkeypatch.delenv(enumeration.CAP_ENV_VAR, raising=False)
    with pytest.raises(ResourceLimitError):
        list(generate(enumeration.DEFAULT_CAP + 1, ALL))
    assert count_where(enumeration.DEFAULT_CAP + 1, DISTINCT, lambda p: False,
                       cap=enumeration.DEFAULT_CAP + 1) == 0

    monkeypatch.setenv(enumeration.CAP_ENV_VAR, "10")
    with pytest.raises(ResourceLimitError):
        list(generate(11, ALL))
    assert sum(1 for _ in generate(10, ALL)) == 42

    monkeypatch.setenv(enumeration.CAP_ENV_VAR, "not-a-number")
    with pytest.raises(DomainError):
        list(generate(1, ALL))


def test_negative_weight_rejected():
    with pytest.raises(DomainError):
        list(generate(-1, ALL))


def test_bad_bound_rejected():
    with pytest.raises(DomainError):
        multiplicity_at_most(0)


def test_streaming_path_beyond_cache_limit():
    n = enumeration._CACHE_LIMIT + 2
    stream_count = sum(1 for _ in generate(n, DISTINCT))
    series = qseries.pochhammer_plus(1, 1, n)
    assert stream_count == series.coeffs[n]
