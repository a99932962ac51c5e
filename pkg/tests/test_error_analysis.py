import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from saalab.adders import ALL_KINDS, approx_sum, validate_config
from saalab.error_analysis import (
    BoundExceededError,
    ErrorStats,
    compare_table,
    compute_stats,
    exhaustive_full_stats,
    exhaustive_low_stats,
    histogram_percentages,
    merge_all,
    monte_carlo_stats,
    stats_from_errors,
)
from saalab.rng import RngSpec


def brute_histogram(cfg):
    """Plain-Python enumeration over all full-width pairs."""
    h = {}
    for x in range(1 << cfg.n):
        for y in range(1 << cfg.n):
            e = approx_sum(cfg, x, y).value - (x + y)
            h[e] = h.get(e, 0) + 1
    return h


def test_lzta_worked_example():
    s = exhaustive_low_stats(validate_config("lzta", 4, 2))
    assert s.total == 16
    assert s.mae == 1.0
    assert s.rmse == pytest.approx(math.sqrt(1.5), abs=0)


def test_loawa_worked_example():
    s = exhaustive_low_stats(validate_config("loawa", 4, 2))
    assert s.mae == 0.75
    assert histogram_percentages(s) == [(-3, 6.25), (-2, 18.75), (-1, 18.75), (0, 56.25)]


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_full_matches_python_enumeration(kind):
    cfg = validate_config(kind, 5, 4 if kind.value == "m_herloa" else 3)
    assert exhaustive_full_stats(cfg).histogram == brute_histogram(cfg)


@pytest.mark.parametrize("kind", ALL_KINDS)
@pytest.mark.parametrize("n,p", [(8, 4), (9, 5)])
def test_low_equals_full_scaled(kind, n, p):
    cfg = validate_config(kind, n, p)
    full = exhaustive_full_stats(cfg)
    # each low pair appears once per high-bit combination
    assert full.scaled_down(1 << 2 * (n - p)) == exhaustive_low_stats(cfg)


def test_accurate_is_error_free():
    s = exhaustive_low_stats(validate_config("accurate", 16, 6))
    assert s.histogram == {0: 1 << 12}
    assert s.mae == 0 and s.error_rate == 0 and s.max_abs == 0


def test_summary_fields():
    s = ErrorStats({-2: 1, 0: 2, 3: 1})
    assert s.summary() == {"total": 4, "mae": 1.25, "rmse": math.sqrt(13 / 4),
                           "mean_signed": 0.25, "max_abs": 3, "error_rate": 0.5}


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.integers(-50, 50), min_size=1, max_size=30), min_size=3, max_size=3))
def test_merge_associative_and_commutative(groups):
    a, b, c = (stats_from_errors(g) for g in groups)
    assert a.merge(b).merge(c) == a.merge(b.merge(c))
    assert a.merge(b) == b.merge(a)
    assert merge_all([a, b, c]) == stats_from_errors(sum(groups, []))


def test_scaled_down_rejects_indivisible():
    with pytest.raises(ValueError):
        ErrorStats({0: 3}).scaled_down(2)


def test_worker_count_independence(monkeypatch):
    cfg = validate_config("herloa", 32, 10)
    one = monte_carlo_stats(cfg, 3_000_000, RngSpec(11), workers=1)
    four = monte_carlo_stats(cfg, 3_000_000, RngSpec(11), workers=4)
    assert one == four
    monkeypatch.setenv("SAA_THREADS", "3")
    assert exhaustive_low_stats(validate_config("loa", 16, 8)) == \
        exhaustive_low_stats(validate_config("loa", 16, 8), workers=1)


def test_monte_carlo_seeded():
    cfg = validate_config("loa", 16, 8)
    a = monte_carlo_stats(cfg, 10_000, RngSpec(1))
    assert a == monte_carlo_stats(cfg, 10_000, RngSpec(1))
    assert a != monte_carlo_stats(cfg, 10_000, RngSpec(2))
    assert a.total == 10_000


def test_monte_carlo_wide_operands():
    # n = 62 keeps sums inside int64
    s = monte_carlo_stats(validate_config("loa", 62, 10), 1000, RngSpec(3))
    assert s.total == 1000 and s.max_abs < 2048


def test_bounds():
    with pytest.raises(BoundExceededError):
        exhaustive_low_stats(validate_config("loa", 32, 17))
    with pytest.raises(BoundExceededError):
        exhaustive_full_stats(validate_config("loa", 13, 4))
    with pytest.raises(ValueError):
        monte_carlo_stats(validate_config("loa", 8, 4), 0)
    with pytest.raises(ValueError):
        compute_stats(validate_config("loa", 8, 4), "sideways")


def test_compare_table():
    cfgs = [validate_config(k, 12, 4) for k in ALL_KINDS]
    rows = compare_table(cfgs)
    assert [r.kind for r in rows] == list(ALL_KINDS)
    with pytest.raises(ValueError):
        compare_table([validate_config("loa", 12, 4), validate_config("loa", 16, 4)])
    with pytest.raises(ValueError):
        compare_table([])
