import pytest

from lpb.brackets import bracket_index, bracket_stats, brackets_to_csv
from lpb.pools import PoolLabel, WinPool

from conftest import make_pool, random_pool


def test_two_precinct_means():
    # totals 100 and 250: bracket 1 (1-199) and bracket 2 (200-399)
    pool = make_pool([(60, 40), (30, 220)])
    stats = bracket_stats(pool, width=200)
    assert [b.bracket_index for b in stats] == [1, 2]
    assert stats[0].size_range == (1, 199)
    assert stats[1].size_range == (200, 399)
    assert stats[0].mean_red_fraction == pytest.approx(0.40)
    assert stats[1].mean_red_fraction == pytest.approx(0.88)


def test_spec_fraction_example():
    # fractions from counts: 100-vote precinct at 40% red, 250-vote at 70% red
    pool = make_pool([(60, 40), (75, 175)])
    stats = bracket_stats(pool, width=200)
    assert stats[0].mean_red_fraction == pytest.approx(0.40)
    assert stats[1].mean_red_fraction == pytest.approx(0.70)


def test_singleton_bracket_means_equal_precinct_fractions():
    pool = make_pool([(90, 60)])
    stats = bracket_stats(pool, width=200)
    assert len(stats) == 1
    assert stats[0].bracket_index == 1
    assert stats[0].mean_blue_fraction == pytest.approx(90 / 150)
    assert stats[0].vote_share_width == 1.0


def test_empty_pool_gives_empty_list():
    assert bracket_stats(WinPool(PoolLabel.BLUE_WIN, []), width=200) == []


def test_every_precinct_in_exactly_one_bracket(rng):
    pool = random_pool(rng, n=120, x_low=1, x_high=3500)
    stats = bracket_stats(pool, width=200)
    assert sum(b.precinct_count for b in stats) == len(pool)
    assert sum(b.total_votes for b in stats) == pool.total_votes
    # brute-force scan oracle for assignment
    for r in pool.records:
        homes = [b for b in stats
                 if b.size_range[0] <= r.total <= b.size_range[1]]
        assert len(homes) == 1
        assert homes[0].bracket_index == bracket_index(r.total, 200)


def test_width_change_repartitions_without_loss(rng):
    pool = random_pool(rng, n=80, x_low=1, x_high=2400)
    for width in (50, 100, 200, 400, 1000):
        stats = bracket_stats(pool, width=width)
        assert sum(b.precinct_count for b in stats) == len(pool)
        assert sum(b.vote_share_width for b in stats) == pytest.approx(1.0)


def test_fraction_complement_invariant(rng):
    pool = random_pool(rng, n=100, x_low=1, x_high=2000)
    for b in bracket_stats(pool, width=200):
        assert abs(b.mean_blue_fraction + b.mean_red_fraction - 1.0) <= 1e-12


def test_vote_weighted_option():
    pool = make_pool([(60, 40), (90, 10)])  # same bracket, totals 100 each
    weighted = bracket_stats(pool, width=400, vote_weighted=True)
    assert weighted[0].mean_blue_fraction == pytest.approx(150 / 200)
    unweighted = bracket_stats(pool, width=400)
    assert unweighted[0].mean_blue_fraction == pytest.approx((0.6 + 0.9) / 2)


def test_bad_width_rejected(rng):
    with pytest.raises(ValueError):
        bracket_stats(random_pool(rng, n=3), width=0)


def test_csv_emission(tmp_path):
    pool = make_pool([(60, 40), (30, 220)])
    text = brackets_to_csv(bracket_stats(pool, width=200), tmp_path / "b.csv")
    lines = text.splitlines()
    assert lines[0] == ("bracket,low,high,count,total_votes,mean_blue_frac,"
                        "mean_red_frac,vote_share_width")
    assert len(lines) == 3
    assert (tmp_path / "b.csv").read_text() == text
