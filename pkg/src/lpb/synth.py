"""Synthetic precinct datasets with planted size-dependent mechanisms.

Two mechanisms with known ground truth, both linear in (size - threshold)
so the pipeline's fitted slopes are analytically recoverable:

* heterogeneity: symmetric. The winning side's fraction shrinks toward 0.5
  as size grows, in blue-win and red-win regions alike.
* inconvenience: asymmetric. Blue ballots (only) are lost at a rate that
  grows with size, in both region types.

Output uses the canonical precinct CSV schema so it feeds the same ingest
path as real data. Counts are integers, so even a null configuration carries
fraction quantization of at most half a vote per precinct; planted slopes
are exact for the pre-rounding fractions.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict
from pathlib import Path

import numpy as np

from .ingest import PrecinctRecord

FRACTION_CLAMP = (0.01, 0.99)


@dataclass
class SynthConfig:
    """Generative parameters. Sizes are log-normal (median, dispersion of
    log size), truncated by clipping to [min_size, max_size]."""

    n_precincts: int
    size_median: float
    size_dispersion: float
    min_size: int
    max_size: int
    base_blue_fraction_blueland: float   # winner fraction in blue regions, (0.5, 1)
    base_red_fraction_redland: float     # winner fraction in red regions, (0.5, 1)
    blueland_share: float
    heterogeneity_rate: float            # fraction shrink per vote above threshold
    inconvenience_rate: float            # blue-ballot loss per vote above threshold
    threshold: int
    noise_sd: float
    rng_seed: int

    def validate(self) -> None:
        checks = [
            (self.n_precincts >= 1, "n_precincts must be >= 1"),
            (self.size_median > 0, "size_median must be positive"),
            (self.size_dispersion >= 0, "size_dispersion must be >= 0"),
            (1 <= self.min_size <= self.max_size,
             "need 1 <= min_size <= max_size"),
            (0.5 < self.base_blue_fraction_blueland < 1,
             "base_blue_fraction_blueland must be in (0.5, 1)"),
            (0.5 < self.base_red_fraction_redland < 1,
             "base_red_fraction_redland must be in (0.5, 1)"),
            (0 <= self.blueland_share <= 1, "blueland_share must be in [0, 1]"),
            (self.heterogeneity_rate >= 0, "heterogeneity_rate must be >= 0"),
            (self.inconvenience_rate >= 0, "inconvenience_rate must be >= 0"),
            (self.threshold >= 1, "threshold must be >= 1"),
            (self.noise_sd >= 0, "noise_sd must be >= 0"),
        ]
        for ok, message in checks:
            if not ok:
                raise ValueError(f"infeasible synth config: {message}")

    @classmethod
    def from_json(cls, path: str | Path) -> "SynthConfig":
        cfg = cls(**json.loads(Path(path).read_text(encoding="utf-8")))
        cfg.validate()
        return cfg

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class PlantedTruth:
    """Expected fraction-vs-size slopes implied by the mechanisms.

    Slopes are local derivatives at the threshold of the pre-noise,
    pre-rounding fraction curves. ``clamp_events`` counts precincts whose
    noisy fraction hit the clamp bounds during generation (clamping biases
    slope recovery and so is reported).
    """

    red_slope_blue_pool: float
    blue_slope_red_pool: float
    mechanisms: tuple[str, ...]
    clamp_events: int = 0

    def to_dict(self) -> dict:
        return {"red_slope_blue_pool": self.red_slope_blue_pool,
                "blue_slope_red_pool": self.blue_slope_red_pool,
                "mechanisms": list(self.mechanisms),
                "clamp_events": self.clamp_events}


def planted_truth(config: SynthConfig) -> PlantedTruth:
    """Closed-form expected slopes.

    Heterogeneity at rate h moves the loser's fraction up by h per vote in
    both pools. Inconvenience at rate g scales blue ballots by 1 - g*(s-T);
    differentiating the resulting fraction at s = T gives f(1-f)*g, pushing
    red fractions up in blue-win pools and blue fractions down in red-win
    pools.
    """
    config.validate()
    h = config.heterogeneity_rate
    g = config.inconvenience_rate
    f_blue = config.base_blue_fraction_blueland
    f_red = config.base_red_fraction_redland
    mechanisms = tuple(name for name, rate in
                       (("heterogeneity", h), ("inconvenience", g)) if rate > 0)
    return PlantedTruth(
        red_slope_blue_pool=h + f_blue * (1.0 - f_blue) * g,
        blue_slope_red_pool=h - f_red * (1.0 - f_red) * g,
        mechanisms=mechanisms,
    )


def generate(config: SynthConfig) -> tuple[list[PrecinctRecord], PlantedTruth]:
    """Draw a synthetic precinct dataset; deterministic given rng_seed.

    Mechanisms act on the designed size s (the pre-loss total): the winner's
    fraction becomes f - h*max(0, s - T) floored at 0.5, noise is added to
    fractions before integer rounding, and finally blue counts are scaled by
    1 - g*max(0, s - T) floored at 0.
    """
    config.validate()
    rng = np.random.default_rng(config.rng_seed)
    n = config.n_precincts

    is_blueland = rng.random(n) < config.blueland_share
    sizes = np.exp(rng.normal(math.log(config.size_median),
                              config.size_dispersion, n))
    sizes = np.clip(np.rint(sizes), config.min_size, config.max_size).astype(int)
    excess = np.maximum(0, sizes - config.threshold)

    winner = np.where(is_blueland, config.base_blue_fraction_blueland,
                      config.base_red_fraction_redland)
    winner = np.maximum(0.5, winner - config.heterogeneity_rate * excess)
    if config.noise_sd > 0:
        winner = winner + rng.normal(0.0, config.noise_sd, n)
    lo, hi = FRACTION_CLAMP
    clamp_events = int(np.count_nonzero((winner < lo) | (winner > hi)))
    winner = np.clip(winner, lo, hi)

    blue_frac = np.where(is_blueland, winner, 1.0 - winner)
    blue = np.rint(blue_frac * sizes).astype(int)
    red = sizes - blue
    keep = np.maximum(0.0, 1.0 - config.inconvenience_rate * excess)
    blue = np.rint(blue * keep).astype(int)

    width = len(str(n))
    records = [
        PrecinctRecord(
            state="XX",
            county="Blueland" if is_blueland[i] else "Redland",
            precinct_id=f"P-{i:0{width}d}",
            dem_votes=int(blue[i]),
            rep_votes=int(red[i]),
        )
        for i in range(n)
    ]
    truth = planted_truth(config)
    truth.clamp_events = clamp_events
    return records, truth
