"""Least-squares fits of vote fractions against precinct size or rank.

The main analysis fits the Republican vote-fraction sequence of a pool's
large-precinct tail against precinct total votes (x = size). Rank-x fits
exist for the shuffled-order null diagnostic, where plot position is the
only meaningful x.

Edge cases are pinned down deliberately: a constant response gives slope
exactly 0.0 (not a rounding residue), and a two-point fit reports zero
standard error with p = 1 since no residual degrees of freedom remain.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import DegenerateSeriesError, InsufficientDataError
from .pools import WinPool, large_cutoff


class Side(enum.Enum):
    RED = "red"
    BLUE = "blue"


class XKind(enum.Enum):
    SIZE = "size"   # precinct total votes
    RANK = "rank"   # 1-based position in the ordering


@dataclass
class FractionSeries:
    """Points (x, vote fraction) for one side of one pool."""

    x: np.ndarray
    y: np.ndarray
    side: Side
    x_kind: XKind

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.x.tolist(), self.y.tolist()))

    def __len__(self) -> int:
        return len(self.x)


@dataclass
class RegressionFit:
    """Simple OLS fit with the usual inferential extras.

    slope_stderr and p_value come from the residual variance on n - 2
    degrees of freedom (two-sided t test of slope = 0).
    """

    slope: float
    intercept: float
    n: int
    r_squared: float
    slope_stderr: float
    p_value: float
    side: Side | None = None
    x_kind: XKind | None = None

    def to_dict(self) -> dict:
        return {
            "side": self.side.value if self.side else None,
            "x_kind": self.x_kind.value if self.x_kind else None,
            "slope": self.slope,
            "intercept": self.intercept,
            "n": self.n,
            "r2": self.r_squared,
            "stderr": self.slope_stderr,
            "p": self.p_value,
        }


def fractions(records, side: Side) -> np.ndarray:
    """Per-precinct vote fractions for one side (records must have total > 0)."""
    dem = np.array([r.dem_votes for r in records], dtype=float)
    tot = np.array([r.total for r in records], dtype=float)
    blue = dem / tot
    return 1.0 - blue if side is Side.RED else blue


def build_series(
    pool: WinPool,
    threshold: int,
    side: Side,
    x_kind: XKind = XKind.SIZE,
) -> FractionSeries:
    """Fraction series over a pool's large-precinct tail, in pool order.

    x is the precinct total for SIZE, or the 1-based position in the pool
    ordering for RANK. Raises InsufficientDataError when fewer than two
    precincts reach the threshold.
    """
    start = large_cutoff(pool, threshold)
    if start is None or len(pool) - start < 2:
        n = 0 if start is None else len(pool) - start
        raise InsufficientDataError(
            f"{pool.label.value}: {n} precinct(s) with total >= {threshold}, need >= 2"
        )
    tail = pool.records[start:]
    if x_kind is XKind.SIZE:
        x = np.array([r.total for r in tail], dtype=float)
    else:
        x = np.arange(start + 1, len(pool) + 1, dtype=float)
    return FractionSeries(x=x, y=fractions(tail, side), side=side, x_kind=x_kind)


def rank_series(records, side: Side) -> FractionSeries:
    """Fraction-vs-position series over records in the order given."""
    if len(records) < 2:
        raise InsufficientDataError(f"{len(records)} record(s), need >= 2")
    x = np.arange(1, len(records) + 1, dtype=float)
    return FractionSeries(x=x, y=fractions(records, side), side=side, x_kind=XKind.RANK)


def ols_fit(series: FractionSeries) -> RegressionFit:
    """Ordinary least squares y = intercept + slope * x.

    A constant y returns slope 0.0 and r-squared 0.0 exactly. All-equal x
    leaves the slope undefined and raises DegenerateSeriesError.
    """
    x, y = np.asarray(series.x, float), np.asarray(series.y, float)
    n = len(x)
    if n < 2:
        raise InsufficientDataError(f"{n} point(s), need >= 2")
    if np.all(x == x[0]):
        raise DegenerateSeriesError("all x values identical")

    if np.all(y == y[0]):
        return RegressionFit(slope=0.0, intercept=float(y[0]), n=n, r_squared=0.0,
                             slope_stderr=0.0, p_value=1.0,
                             side=series.side, x_kind=series.x_kind)

    xm, ym = x.mean(), y.mean()
    dx, dy = x - xm, y - ym
    sxx = float(np.dot(dx, dx))
    sxy = float(np.dot(dx, dy))
    syy = float(np.dot(dy, dy))
    slope = sxy / sxx
    intercept = ym - slope * xm
    r_squared = min(1.0, (sxy * sxy) / (sxx * syy))

    dof = n - 2
    if dof <= 0:
        stderr, p_value = 0.0, 1.0
    else:
        sse = max(0.0, syy - slope * sxy)
        stderr = float(np.sqrt(sse / dof / sxx))
        if stderr == 0.0:
            p_value = 0.0 if slope != 0.0 else 1.0
        else:
            p_value = float(2.0 * stats.t.sf(abs(slope / stderr), dof))
    return RegressionFit(slope=slope, intercept=float(intercept), n=n,
                         r_squared=float(r_squared), slope_stderr=stderr,
                         p_value=p_value, side=series.side, x_kind=series.x_kind)
