"""Robustness checks for the bias statistic.

Three tools: a shuffled-order null baseline (re-fitting fractions against
plot position after random reordering, which should show no slope), a
combined fit over both pools merged, and a threshold sensitivity sweep.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bias import DEFAULT_ALPHA, LpbResult, fit_pool_lpb
from .errors import InsufficientDataError
from .pools import PartitionResult, WinPool, merge_pools
from .regression import RegressionFit, Side, ols_fit, rank_series

RNG_ALGORITHM = "numpy-pcg64"


@dataclass
class ShuffleBaseline:
    """Slopes of rank-x fits over randomly reordered pools.

    One slope per seed; ``fraction_within_2se`` is the share of slopes
    within two of their own standard errors of zero (roughly 0.95 when no
    order-independent structure is present).
    """

    seeds: list[int]
    slopes: list[float]
    stderrs: list[float]
    fraction_within_2se: float
    rng_algorithm: str = RNG_ALGORITHM

    def to_dict(self) -> dict:
        return {"seeds": self.seeds, "slopes": self.slopes, "stderrs": self.stderrs,
                "fraction_within_2se": self.fraction_within_2se,
                "rng_algorithm": self.rng_algorithm}


def shuffle_baseline(pool: WinPool, n_seeds: int, rng_seed: int) -> ShuffleBaseline:
    """Fit red fractions against position after shuffling the full pool.

    Deterministic: shuffle k uses a PCG64 generator seeded with
    rng_seed + k, and results are listed in seed order.
    """
    if len(pool) < 3:
        raise InsufficientDataError(f"pool has {len(pool)} precincts, need >= 3")
    seeds = [rng_seed + k for k in range(n_seeds)]
    slopes: list[float] = []
    stderrs: list[float] = []
    within = 0
    for seed in seeds:
        rng = np.random.default_rng(seed)
        order = rng.permutation(len(pool))
        shuffled = [pool.records[i] for i in order]
        fit = ols_fit(rank_series(shuffled, Side.RED))
        slopes.append(fit.slope)
        stderrs.append(fit.slope_stderr)
        if abs(fit.slope) <= 2.0 * fit.slope_stderr:
            within += 1
    return ShuffleBaseline(seeds=seeds, slopes=slopes, stderrs=stderrs,
                           fraction_within_2se=within / n_seeds if n_seeds else 0.0)


def combined_pool_fit(
    partition: PartitionResult,
    threshold: int,
    alpha: float = DEFAULT_ALPHA,
) -> tuple[RegressionFit, LpbResult]:
    """Fit the red fractions of both pools merged, large precincts only.

    The merged pool is re-ordered by size and analyzed with the same
    threshold-relative formula; the vote-gain number on the merge is a
    derived quantity and is labeled as such by its pool label.
    """
    merged = merge_pools(partition.blue_pool, partition.red_pool)
    result = fit_pool_lpb(merged, threshold, partition.scope_total_votes, alpha)
    return result.fit, result


@dataclass
class SweepResult:
    """Per-pool LPB across thresholds; None where a pool has too few
    large precincts."""

    thresholds: list[int]
    blue_pool_results: list[LpbResult | None]
    red_pool_results: list[LpbResult | None]

    def rows(self) -> list[dict]:
        out = []
        for t, blue, red in zip(self.thresholds, self.blue_pool_results,
                                self.red_pool_results):
            for result in (blue, red):
                if result is None:
                    continue
                out.append({"threshold": t, "pool": result.pool_label.value,
                            "n_large": result.n_large,
                            "direction": result.direction.value,
                            "slope": result.slope_used,
                            "lpb_votes": result.lpb_votes,
                            "pct": result.pct_of_scope})
        return out


def threshold_sweep(
    partition: PartitionResult,
    thresholds: list[int],
    alpha: float = DEFAULT_ALPHA,
) -> SweepResult:
    """Recompute both pools' LPB at each threshold (sorted, deduplicated)."""
    if any(t < 1 for t in thresholds):
        raise ValueError("thresholds must be >= 1")
    ordered = sorted(set(thresholds))
    blue: list[LpbResult | None] = []
    red: list[LpbResult | None] = []
    for t in ordered:
        for pool, cells in ((partition.blue_pool, blue), (partition.red_pool, red)):
            try:
                cells.append(fit_pool_lpb(pool, t, partition.scope_total_votes, alpha))
            except (InsufficientDataError, ValueError):
                cells.append(None)
    return SweepResult(thresholds=ordered, blue_pool_results=blue, red_pool_results=red)


def sweep_to_csv(sweep: SweepResult, path: str | Path | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["threshold", "pool", "n_large", "direction", "slope",
                     "lpb_votes", "pct"])
    for row in sweep.rows():
        writer.writerow([row["threshold"], row["pool"], row["n_large"],
                         row["direction"], f"{row['slope']:.10g}",
                         f"{row['lpb_votes']:.3f}", f"{row['pct']:.4f}"])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
