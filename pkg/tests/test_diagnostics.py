import numpy as np
import pytest

from lpb.bias import fit_pool_lpb
from lpb.diagnostics import (combined_pool_fit, shuffle_baseline, sweep_to_csv,
                             threshold_sweep)
from lpb.errors import InsufficientDataError
from lpb.pools import PartitionResult, PoolLabel, WinPool, partition_pools

from conftest import make_pool, make_record, random_pool


def test_shuffle_deterministic_and_seed_sensitive(rng):
    pool = random_pool(rng, n=40)
    one = shuffle_baseline(pool, n_seeds=10, rng_seed=7)
    two = shuffle_baseline(pool, n_seeds=10, rng_seed=7)
    other = shuffle_baseline(pool, n_seeds=10, rng_seed=8)
    assert one.slopes == two.slopes
    assert one.seeds == list(range(7, 17))
    assert one.slopes != other.slopes
    assert one.rng_algorithm == "numpy-pcg64"


def test_shuffle_constant_fractions_all_slopes_zero():
    pool = make_pool([(60, 40), (120, 80), (300, 200), (600, 400)])
    baseline = shuffle_baseline(pool, n_seeds=20, rng_seed=0)
    assert baseline.slopes == [0.0] * 20
    assert baseline.fraction_within_2se == 1.0


def test_shuffle_requires_three_precincts():
    with pytest.raises(InsufficientDataError):
        shuffle_baseline(make_pool([(6, 4), (8, 2)]), n_seeds=5, rng_seed=0)


def test_shuffle_kills_planted_size_trend(rng):
    # fractions strictly increasing in size; size-x slope is large but
    # rank-x slopes after shuffling center on zero
    counts = []
    for i in range(300):
        total = 500 + 10 * i
        red_frac = 0.20 + 0.25 * i / 299
        red = int(round(total * red_frac))
        counts.append((total - red, red))
    pool = make_pool(counts)
    size_fit = fit_pool_lpb(pool, 500, scope_total_votes=10**6)
    assert size_fit.fit.slope > 5e-5

    baseline = shuffle_baseline(pool, n_seeds=200, rng_seed=11)
    slopes = np.array(baseline.slopes)
    assert abs(slopes.mean()) < 2e-5
    assert baseline.fraction_within_2se >= 0.93


def test_combined_fit_mirrored_pools_slope_zero():
    blue_counts = [(600, 400), (700, 500), (900, 600), (1200, 700)]
    blue = make_pool(blue_counts)
    red = make_pool([(r, d) for d, r in blue_counts], label=PoolLabel.RED_WIN)
    part = partition_pools(blue.records + red.records)
    fit, result = combined_pool_fit(part, threshold=800)
    assert abs(fit.slope) <= 1e-12
    assert result.pool_label is PoolLabel.COMBINED


def test_combined_fit_with_empty_pool_equals_single_pool_fit(rng):
    pool = random_pool(rng, n=25)
    part = PartitionResult(blue_pool=pool,
                           red_pool=WinPool(PoolLabel.RED_WIN, []),
                           ties=[], zero_vote_count=0,
                           scope_total_votes=pool.total_votes)
    combined_fit, _ = combined_pool_fit(part, threshold=800)
    direct = fit_pool_lpb(pool, 800, pool.total_votes)
    assert combined_fit.slope == direct.fit.slope
    assert combined_fit.intercept == direct.fit.intercept


def test_combined_fit_insufficient_data():
    part = partition_pools([make_record(60, 40)])
    with pytest.raises(InsufficientDataError):
        combined_pool_fit(part, threshold=800)


def test_sweep_single_threshold_reproduces_compute_lpb(rng):
    pool = random_pool(rng, n=30)
    part = PartitionResult(blue_pool=pool,
                           red_pool=WinPool(PoolLabel.RED_WIN, []),
                           ties=[], zero_vote_count=0,
                           scope_total_votes=pool.total_votes)
    sweep = threshold_sweep(part, [900])
    direct = fit_pool_lpb(pool, 900, pool.total_votes)
    assert sweep.blue_pool_results[0].lpb_votes == direct.lpb_votes
    assert sweep.blue_pool_results[0].pct_of_scope == direct.pct_of_scope
    assert sweep.red_pool_results[0] is None


def test_sweep_orders_and_dedupes_thresholds(rng):
    pool = random_pool(rng, n=30, x_low=100, x_high=3000)
    part = partition_pools(pool.records)
    sweep = threshold_sweep(part, [800, 600, 800])
    assert sweep.thresholds == [600, 800]


def test_sweep_absurd_threshold_gives_absent_cells(rng):
    part = partition_pools(random_pool(rng, n=20).records)
    sweep = threshold_sweep(part, [10**9])
    assert sweep.blue_pool_results == [None]
    assert sweep.red_pool_results == [None]
    assert sweep.rows() == []


def test_sweep_rejects_bad_thresholds(rng):
    part = partition_pools(random_pool(rng, n=10).records)
    with pytest.raises(ValueError):
        threshold_sweep(part, [0, 800])


def test_sweep_csv_layout(rng):
    part = partition_pools(random_pool(rng, n=30).records)
    text = sweep_to_csv(threshold_sweep(part, [600, 800]))
    lines = text.splitlines()
    assert lines[0] == "threshold,pool,n_large,direction,slope,lpb_votes,pct"
    assert len(lines) >= 2
