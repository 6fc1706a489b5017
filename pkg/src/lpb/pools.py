"""Win-pool partitioning and size ordering.

Precincts split into a blue-win pool (dem > rep) and a red-win pool
(rep > dem); exact ties and zero-vote precincts belong to neither pool but
stay in the scope vote denominator. Each pool is ordered by precinct total,
smallest first, which is the ordering every downstream statistic assumes.
"""

from __future__ import annotations

import csv
import enum
from bisect import bisect_left
from dataclasses import dataclass
from pathlib import Path

from .ingest import PrecinctRecord


class PoolLabel(enum.Enum):
    BLUE_WIN = "blue_win"
    RED_WIN = "red_win"
    COMBINED = "combined"  # derived merge of both pools, diagnostics only


@dataclass
class WinPool:
    """An ordered pool of same-winner precincts.

    ``records`` is non-decreasing in precinct total; equal totals are ordered
    by precinct key so listings are reproducible.
    """

    label: PoolLabel
    records: list[PrecinctRecord]
    dem_votes: int = 0
    rep_votes: int = 0

    def __post_init__(self):
        if not self.dem_votes and not self.rep_votes:
            self.dem_votes = sum(r.dem_votes for r in self.records)
            self.rep_votes = sum(r.rep_votes for r in self.records)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def total_votes(self) -> int:
        return self.dem_votes + self.rep_votes

    def totals(self) -> list[int]:
        return [r.total for r in self.records]


@dataclass
class PartitionResult:
    """Outcome of partitioning one scope's records."""

    blue_pool: WinPool
    red_pool: WinPool
    ties: list[PrecinctRecord]
    zero_vote_count: int
    scope_total_votes: int

    @property
    def tie_count(self) -> int:
        return len(self.ties)

    def all_pooled_and_tied(self) -> list[PrecinctRecord]:
        return self.blue_pool.records + self.red_pool.records + self.ties


def _ordered(records: list[PrecinctRecord]) -> list[PrecinctRecord]:
    return sorted(records, key=lambda r: (r.total, r.key))


def partition_pools(records: list[PrecinctRecord]) -> PartitionResult:
    """Split records into ordered win pools.

    Exhaustive and exclusive: every record lands in exactly one of
    {blue pool, red pool, ties, zero-vote}. Zero-total precincts are
    excluded before ordering because their vote fractions are undefined.
    """
    blue: list[PrecinctRecord] = []
    red: list[PrecinctRecord] = []
    ties: list[PrecinctRecord] = []
    zero = 0
    scope_total = 0
    for r in records:
        scope_total += r.total
        if r.total == 0:
            zero += 1
        elif r.dem_votes > r.rep_votes:
            blue.append(r)
        elif r.rep_votes > r.dem_votes:
            red.append(r)
        else:
            ties.append(r)
    return PartitionResult(
        blue_pool=WinPool(PoolLabel.BLUE_WIN, _ordered(blue)),
        red_pool=WinPool(PoolLabel.RED_WIN, _ordered(red)),
        ties=ties,
        zero_vote_count=zero,
        scope_total_votes=scope_total,
    )


def merge_pools(blue: WinPool, red: WinPool) -> WinPool:
    """Merge both pools into one size-ordered pool (diagnostics only)."""
    return WinPool(PoolLabel.COMBINED, _ordered(blue.records + red.records))


def large_cutoff(pool: WinPool, threshold: int) -> int | None:
    """Index of the smallest precinct with total >= threshold, or None.

    The pool is ordered, so this is the start of the large-precinct tail
    (0-based; every record from here on qualifies).
    """
    totals = pool.totals()
    idx = bisect_left(totals, threshold)
    return idx if idx < len(totals) else None


def mean_precinct_size(pool: WinPool) -> float | None:
    """Arithmetic mean of precinct totals over the whole pool; None if empty."""
    if not pool.records:
        return None
    return pool.total_votes / len(pool.records)


def write_pool_csv(partition: PartitionResult, path: str | Path) -> None:
    """Audit dump: every pooled or tied precinct with its pool label."""
    groups = [("blue_win", partition.blue_pool.records),
              ("red_win", partition.red_pool.records),
              ("tie", partition.ties)]
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["pool", "label", "precinct_id", "dem", "rep", "total"])
        for label, records in groups:
            for r in records:
                writer.writerow([label, f"{r.state}/{r.county}", r.precinct_id,
                                 r.dem_votes, r.rep_votes, r.total])
