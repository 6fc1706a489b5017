"""The large-precinct bias statistic.

A fitted fraction-vs-size slope over a pool's large tail converts into an
estimated vote gain: each large precinct contributes
slope * (total - threshold) * total, the fraction gain implied by the
regression times the precinct's votes. Summed over the tail this is the
pool's bias in votes, reported alongside its share of all votes cast in
the scope.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import InsufficientDataError
from .pools import PartitionResult, PoolLabel, WinPool, large_cutoff, mean_precinct_size
from .regression import RegressionFit, Side, XKind, build_series, ols_fit

DEFAULT_THRESHOLD = 800
DEFAULT_ALPHA = 0.05


class Direction(enum.Enum):
    RED = "red"
    BLUE = "blue"
    NONE = "none"  # slope exactly 0


@dataclass
class LpbResult:
    """Vote-gain estimate for one pool at one threshold."""

    pool_label: PoolLabel
    threshold: int
    n_large: int
    direction: Direction
    slope_used: float     # magnitude of the fitted red-fraction slope
    lpb_votes: float
    pct_of_scope: float
    significant: bool
    fit: RegressionFit

    def to_dict(self) -> dict:
        return {
            "pool": self.pool_label.value,
            "threshold": self.threshold,
            "n_large": self.n_large,
            "direction": self.direction.value,
            "slope_used": self.slope_used,
            "lpb_votes": self.lpb_votes,
            "pct_of_scope": self.pct_of_scope,
            "significant": self.significant,
            "fit": self.fit.to_dict(),
        }


def size_weight_sum(pool: WinPool, threshold: int) -> float:
    """Sum of (total - threshold) * total over the pool's large tail."""
    start = large_cutoff(pool, threshold)
    if start is None:
        return 0.0
    return float(sum((r.total - threshold) * r.total for r in pool.records[start:]))


def compute_lpb(
    pool: WinPool,
    fit: RegressionFit,
    threshold: int,
    scope_total_votes: int,
    alpha: float = DEFAULT_ALPHA,
) -> LpbResult:
    """Convert a red-fraction size fit into the pool's vote-gain estimate.

    ``fit`` must be the Size-x red-fraction fit of this pool at this
    threshold. A positive slope is a red gain, a negative slope a blue gain
    of the mirrored magnitude; the sum runs over large precincts only, where
    the regression was fitted.
    """
    if scope_total_votes <= 0:
        raise ValueError("scope_total_votes must be positive for a percent")
    start = large_cutoff(pool, threshold)
    n_large = 0 if start is None else len(pool) - start
    if fit.slope > 0:
        direction = Direction.RED
    elif fit.slope < 0:
        direction = Direction.BLUE
    else:
        direction = Direction.NONE
    slope_used = abs(fit.slope)
    lpb_votes = slope_used * size_weight_sum(pool, threshold)
    return LpbResult(
        pool_label=pool.label,
        threshold=threshold,
        n_large=n_large,
        direction=direction,
        slope_used=slope_used,
        lpb_votes=lpb_votes,
        pct_of_scope=100.0 * lpb_votes / scope_total_votes,
        significant=fit.p_value < alpha,
        fit=fit,
    )


def fit_pool_lpb(
    pool: WinPool,
    threshold: int,
    scope_total_votes: int,
    alpha: float = DEFAULT_ALPHA,
) -> LpbResult:
    """Build the red Size-x series, fit it, and compute the pool's LPB."""
    series = build_series(pool, threshold, Side.RED, XKind.SIZE)
    fit = ols_fit(series)
    return compute_lpb(pool, fit, threshold, scope_total_votes, alpha=alpha)


def large_precinct_split(
    partition: PartitionResult,
    threshold: int,
) -> tuple[int, int, float, float]:
    """Two-party vote split counting only precincts with total >= threshold.

    Sums over every scoped precinct (both pools and ties). Returns
    (blue votes, red votes, blue pct, red pct); zeros when nothing qualifies.
    """
    blue = red = 0
    for r in partition.all_pooled_and_tied():
        if r.total >= threshold:
            blue += r.dem_votes
            red += r.rep_votes
    total = blue + red
    if total == 0:
        return (0, 0, 0.0, 0.0)
    return (blue, red, 100.0 * blue / total, 100.0 * red / total)


@dataclass
class StateSummaryRow:
    """One row of the multi-state summary table; None means an absent cell
    (an empty pool, or too few large precincts to fit)."""

    label: str
    blue_mean_size: float | None
    blue_lpb_pct: float | None
    blue_direction: Direction | None
    red_mean_size: float | None
    red_lpb_pct: float | None
    red_direction: Direction | None

    def to_dict(self) -> dict:
        return {
            "state_year": self.label,
            "bluewin_mean_size": self.blue_mean_size,
            "bluewin_lpb_pct": self.blue_lpb_pct,
            "bluewin_direction": self.blue_direction.value if self.blue_direction else None,
            "redwin_mean_size": self.red_mean_size,
            "redwin_lpb_pct": self.red_lpb_pct,
            "redwin_direction": self.red_direction.value if self.red_direction else None,
        }


def summarize_state(
    partition: PartitionResult,
    threshold: int = DEFAULT_THRESHOLD,
    label: str = "",
    alpha: float = DEFAULT_ALPHA,
) -> StateSummaryRow:
    """Per-scope summary row: mean pool sizes and per-pool LPB percent.

    A pool without enough large precincts yields absent LPB cells, never a
    fabricated zero.
    """
    cells = {}
    for name, pool in (("blue", partition.blue_pool), ("red", partition.red_pool)):
        mean = mean_precinct_size(pool)
        try:
            result = fit_pool_lpb(pool, threshold, partition.scope_total_votes, alpha)
            pct, direction = result.pct_of_scope, result.direction
        except (InsufficientDataError, ValueError):
            pct, direction = None, None
        cells[name] = (mean, pct, direction)
    return StateSummaryRow(
        label=label,
        blue_mean_size=cells["blue"][0], blue_lpb_pct=cells["blue"][1],
        blue_direction=cells["blue"][2],
        red_mean_size=cells["red"][0], red_lpb_pct=cells["red"][1],
        red_direction=cells["red"][2],
    )


_TABLE_COLUMNS = ["state_year", "bluewin_mean_size", "bluewin_lpb_pct",
                  "bluewin_direction", "redwin_mean_size", "redwin_lpb_pct",
                  "redwin_direction"]


def _cell(value, fmt: str) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return format(value, fmt)
    return str(value)


def format_summary_table(rows: list[StateSummaryRow], fmt: str = "csv") -> str:
    """Render summary rows as csv, json, or aligned markdown."""
    dicts = [r.to_dict() for r in rows]
    if fmt == "json":
        return json.dumps(dicts, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(_TABLE_COLUMNS)
        for d in dicts:
            writer.writerow([
                d["state_year"],
                _cell(d["bluewin_mean_size"], ".1f"), _cell(d["bluewin_lpb_pct"], ".4f"),
                _cell(d["bluewin_direction"], "s"),
                _cell(d["redwin_mean_size"], ".1f"), _cell(d["redwin_lpb_pct"], ".4f"),
                _cell(d["redwin_direction"], "s"),
            ])
        return buf.getvalue()
    if fmt == "markdown":
        cells = [[d["state_year"],
                  _cell(d["bluewin_mean_size"], ".0f"), _cell(d["bluewin_lpb_pct"], ".3f"),
                  _cell(d["bluewin_direction"], "s"),
                  _cell(d["redwin_mean_size"], ".0f"), _cell(d["redwin_lpb_pct"], ".3f"),
                  _cell(d["redwin_direction"], "s")] for d in dicts]
        widths = [max(len(_TABLE_COLUMNS[i]), *(len(row[i]) for row in cells))
                  if cells else len(_TABLE_COLUMNS[i]) for i in range(len(_TABLE_COLUMNS))]
        def line(vals):
            return "| " + " | ".join(v.ljust(w) for v, w in zip(vals, widths)) + " |"
        out = [line(_TABLE_COLUMNS),
               "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
        out += [line(row) for row in cells]
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown table format {fmt!r}")


def write_summary_table(rows: list[StateSummaryRow], path: str | Path,
                        fmt: str = "csv") -> None:
    Path(path).write_text(format_summary_table(rows, fmt), encoding="utf-8")
