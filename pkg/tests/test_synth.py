import dataclasses
import json

import pytest

from lpb.bias import fit_pool_lpb
from lpb.ingest import ColumnMapping, parse_dataset, write_canonical_csv
from lpb.pools import partition_pools
from lpb.regression import Side, build_series, ols_fit
from lpb.synth import SynthConfig, generate, planted_truth


def config(**overrides):
    base = dict(n_precincts=800, size_median=700, size_dispersion=0.45,
                min_size=50, max_size=2000, base_blue_fraction_blueland=0.66,
                base_red_fraction_redland=0.64, blueland_share=0.5,
                heterogeneity_rate=0.0, inconvenience_rate=0.0,
                threshold=800, noise_sd=0.01, rng_seed=1)
    base.update(overrides)
    return SynthConfig(**base)


def test_deterministic_given_seed():
    one, _ = generate(config())
    two, _ = generate(config())
    other, _ = generate(config(rng_seed=2))
    assert one == two
    assert one != other


def test_records_satisfy_invariants():
    records, _ = generate(config(noise_sd=0.05))
    assert len(records) == 800
    for r in records:
        assert r.dem_votes >= 0 and r.rep_votes >= 0
        assert isinstance(r.dem_votes, int)
    assert len({r.key for r in records}) == len(records)


def test_output_feeds_ingest_path(tmp_path):
    records, _ = generate(config(n_precincts=100))
    path = tmp_path / "synth.csv"
    write_canonical_csv(records, path)
    parsed, meta = parse_dataset(path, ColumnMapping.identity())
    assert parsed == records
    assert meta.reject_count == 0


def test_planted_truth_null():
    truth = planted_truth(config())
    assert truth.red_slope_blue_pool == 0.0
    assert truth.blue_slope_red_pool == 0.0
    assert truth.mechanisms == ()


def test_planted_truth_heterogeneity_is_rate_exactly():
    truth = planted_truth(config(heterogeneity_rate=3e-5))
    assert truth.red_slope_blue_pool == 3e-5
    assert truth.blue_slope_red_pool == 3e-5
    assert truth.mechanisms == ("heterogeneity",)


def test_planted_truth_inconvenience_matches_finite_difference():
    gamma, f = 5e-5, 0.66
    truth = planted_truth(config(inconvenience_rate=gamma))
    assert truth.red_slope_blue_pool == pytest.approx(f * (1 - f) * gamma, rel=1e-12)
    assert truth.blue_slope_red_pool <= 0

    # numeric oracle: differentiate the post-loss red fraction at s = T
    threshold = 800

    def red_fraction(s):
        keep = 1 - gamma * max(0, s - threshold)
        return (1 - f) / (f * keep + (1 - f))

    eps = 1e-3
    numeric = (red_fraction(threshold + eps) - red_fraction(threshold)) / eps
    assert truth.red_slope_blue_pool == pytest.approx(numeric, rel=1e-5)


def test_null_config_fractions_flat_up_to_rounding():
    records, _ = generate(config(n_precincts=3000, noise_sd=0.0))
    part = partition_pools(records)
    for pool in (part.blue_pool, part.red_pool):
        fit = ols_fit(build_series(pool, 800, Side.RED))
        assert abs(fit.slope) < 1e-6  # integer rounding leaves only quantization


def test_heterogeneity_recovered_in_both_pools():
    cfg = config(n_precincts=3000, heterogeneity_rate=4e-5, rng_seed=5)
    records, truth = generate(cfg)
    part = partition_pools(records)
    blue_fit = ols_fit(build_series(part.blue_pool, 800, Side.RED))
    red_fit = ols_fit(build_series(part.red_pool, 800, Side.BLUE))
    assert abs(blue_fit.slope - truth.red_slope_blue_pool) <= 3 * blue_fit.slope_stderr
    assert abs(red_fit.slope - truth.blue_slope_red_pool) <= 3 * red_fit.slope_stderr


def test_inconvenience_is_asymmetric():
    cfg = config(n_precincts=3000, inconvenience_rate=5e-5, rng_seed=5)
    records, truth = generate(cfg)
    part = partition_pools(records)
    blue_lpb = fit_pool_lpb(part.blue_pool, 800, part.scope_total_votes)
    assert blue_lpb.fit.slope > 0
    assert blue_lpb.direction.value == "red"
    red_fit = ols_fit(build_series(part.red_pool, 800, Side.BLUE))
    assert not (red_fit.slope > 0 and red_fit.p_value < 0.05)


def test_clamp_events_counted():
    _, calm = generate(config(noise_sd=0.01))
    assert calm.clamp_events == 0
    _, wild = generate(config(noise_sd=0.3))
    assert wild.clamp_events > 0


@pytest.mark.parametrize("field,value", [
    ("min_size", 5000),                     # min > max
    ("n_precincts", 0),
    ("base_blue_fraction_blueland", 0.4),   # not a winner fraction
    ("base_red_fraction_redland", 1.0),
    ("blueland_share", 1.5),
    ("heterogeneity_rate", -1e-5),
    ("noise_sd", -0.1),
    ("threshold", 0),
])
def test_infeasible_configs_rejected(field, value):
    cfg = config()
    cfg = dataclasses.replace(cfg, **{field: value})
    with pytest.raises(ValueError, match="infeasible"):
        cfg.validate()


def test_config_json_round_trip(tmp_path):
    cfg = config(heterogeneity_rate=2e-5)
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg.to_dict()))
    assert SynthConfig.from_json(path) == cfg
