"""Top-level analysis estimator and report assembly.

LpbAnalyzer follows the familiar fit/get_params estimator protocol: configure
thresholds in the constructor, call ``fit(records)``, then read fitted
attributes (``partition_``, ``blue_analysis_``, ...) or ask for a full
report dict. It estimates a statistic rather than predicting, so there is
no predict/transform; get_params/set_params make it clone- and grid-friendly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from . import __version__
from .bias import (DEFAULT_ALPHA, DEFAULT_THRESHOLD, LpbResult, StateSummaryRow,
                   fit_pool_lpb, large_precinct_split, summarize_state)
from .brackets import DEFAULT_WIDTH, BracketStats, bracket_stats
from .diagnostics import ShuffleBaseline, shuffle_baseline
from .errors import InsufficientDataError
from .ingest import coerce_records
from .pools import WinPool, large_cutoff, mean_precinct_size, partition_pools
from .regression import RegressionFit


@dataclass
class PoolAnalysis:
    """Everything computed for one win pool."""

    pool: WinPool
    mean_size: float | None
    n_large: int
    brackets: list[BracketStats]
    lpb: LpbResult | None
    skip_reason: str | None = None

    @property
    def fit(self) -> RegressionFit | None:
        return self.lpb.fit if self.lpb else None


class LpbAnalyzer(BaseEstimator):
    """Full pipeline over one scope's precinct records.

    Parameters
    ----------
    threshold : vote total at and above which a precinct counts as large.
    bracket_width : size-bracket width in votes for descriptive stats.
    alpha : significance level for flagging fits.
    vote_weighted_brackets : weight bracket mean fractions by votes instead
        of per-precinct.
    """

    def __init__(self, threshold: int = DEFAULT_THRESHOLD,
                 bracket_width: int = DEFAULT_WIDTH,
                 alpha: float = DEFAULT_ALPHA,
                 vote_weighted_brackets: bool = False):
        self.threshold = threshold
        self.bracket_width = bracket_width
        self.alpha = alpha
        self.vote_weighted_brackets = vote_weighted_brackets

    def fit(self, X, y=None) -> "LpbAnalyzer":
        """Partition records and compute all per-pool statistics.

        X may be a list of PrecinctRecord, an iterable of dicts with the
        canonical field names, or a DataFrame with canonical columns.
        """
        records = coerce_records(X)
        self.n_records_ = len(records)
        self.partition_ = partition_pools(records)
        self.blue_analysis_ = self._analyze_pool(self.partition_.blue_pool)
        self.red_analysis_ = self._analyze_pool(self.partition_.red_pool)
        self.split_ = large_precinct_split(self.partition_, self.threshold)
        return self

    def _analyze_pool(self, pool: WinPool) -> PoolAnalysis:
        start = large_cutoff(pool, self.threshold)
        n_large = 0 if start is None else len(pool) - start
        lpb = skip = None
        try:
            lpb = fit_pool_lpb(pool, self.threshold,
                               self.partition_.scope_total_votes, self.alpha)
        except (InsufficientDataError, ValueError) as exc:
            skip = str(exc)
        return PoolAnalysis(
            pool=pool,
            mean_size=mean_precinct_size(pool),
            n_large=n_large,
            brackets=bracket_stats(pool, self.bracket_width,
                                   self.vote_weighted_brackets),
            lpb=lpb,
            skip_reason=skip,
        )

    def _check_fitted(self) -> None:
        if not hasattr(self, "partition_"):
            raise NotFittedError("call fit() first")

    def summary_row(self, label: str = "") -> StateSummaryRow:
        self._check_fitted()
        return summarize_state(self.partition_, self.threshold, label, self.alpha)

    def shuffle_baseline(self, pool: str = "blue", n_seeds: int = 100,
                         rng_seed: int = 0) -> ShuffleBaseline:
        self._check_fitted()
        target = (self.partition_.blue_pool if pool == "blue"
                  else self.partition_.red_pool)
        return shuffle_baseline(target, n_seeds, rng_seed)

    def report(self, scope_label: str = "",
               diagnostics: dict | None = None) -> dict:
        """Assemble the full report dict (JSON-ready; see README for the
        schema). ``diagnostics`` merges extra blocks in verbatim."""
        self._check_fitted()
        part = self.partition_
        blue_votes, red_votes, blue_pct, red_pct = self.split_
        report = {
            "tool": {"name": "lpb", "version": __version__},
            "scope": {"label": scope_label},
            "config": {
                "threshold": self.threshold,
                "bracket_width": self.bracket_width,
                "alpha": self.alpha,
                "vote_weighted_brackets": self.vote_weighted_brackets,
            },
            "partition": {
                "record_count": self.n_records_,
                "blue_pool_size": len(part.blue_pool),
                "red_pool_size": len(part.red_pool),
                "tie_count": part.tie_count,
                "zero_vote_count": part.zero_vote_count,
                "scope_total_votes": part.scope_total_votes,
                "blue_pool_votes": {"dem": part.blue_pool.dem_votes,
                                    "rep": part.blue_pool.rep_votes},
                "red_pool_votes": {"dem": part.red_pool.dem_votes,
                                   "rep": part.red_pool.rep_votes},
            },
            "pools": {
                "blue_win": _pool_block(self.blue_analysis_),
                "red_win": _pool_block(self.red_analysis_),
            },
            "large_precinct_split": {
                "threshold": self.threshold,
                "blue_votes": blue_votes, "red_votes": red_votes,
                "blue_pct": blue_pct, "red_pct": red_pct,
            },
        }
        if diagnostics:
            report["diagnostics"] = diagnostics
        return report


def _pool_block(analysis: PoolAnalysis) -> dict:
    return {
        "mean_precinct_size": analysis.mean_size,
        "n_precincts": len(analysis.pool),
        "n_large": analysis.n_large,
        "brackets": [
            {"bracket": b.bracket_index, "low": b.size_range[0],
             "high": b.size_range[1], "count": b.precinct_count,
             "total_votes": b.total_votes,
             "mean_blue_frac": b.mean_blue_fraction,
             "mean_red_frac": b.mean_red_fraction,
             "vote_share_width": b.vote_share_width}
            for b in analysis.brackets
        ],
        "fit": analysis.fit.to_dict() if analysis.fit else None,
        "lpb": analysis.lpb.to_dict() if analysis.lpb else None,
        "skip_reason": analysis.skip_reason,
        "points": [[r.total, r.dem_votes / r.total, r.rep_votes / r.total]
                   for r in analysis.pool.records],
    }


def report_to_json(report: dict) -> str:
    """Canonical serialization: sorted keys, so bytes are reproducible."""
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def report_from_json(text: str) -> dict:
    return json.loads(text)
