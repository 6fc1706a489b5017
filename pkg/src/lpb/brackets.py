"""Fixed-width precinct-size bracket statistics.

Brackets are descriptive: bracket 1 covers totals 1..width-1, bracket 2
covers width..2*width-1, and so on. Each bracket reports its precinct count,
vote total, mean two-party vote fractions, and its share of the pool's votes
(used as the bar width when charted).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

from .pools import WinPool

DEFAULT_WIDTH = 200


@dataclass
class BracketStats:
    bracket_index: int          # 1-based
    size_range: tuple[int, int]  # [low, high] in votes, inclusive
    precinct_count: int
    total_votes: int
    mean_blue_fraction: float
    mean_red_fraction: float
    vote_share_width: float     # bracket votes / pool votes


def bracket_index(total: int, width: int) -> int:
    """1-based bracket for a precinct total (total >= 1)."""
    return total // width + 1


def bracket_stats(
    pool: WinPool,
    width: int = DEFAULT_WIDTH,
    vote_weighted: bool = False,
) -> list[BracketStats]:
    """Bucket a pool's precincts into size brackets.

    Mean fractions are unweighted across precincts by default (each precinct
    contributes its own fraction once); pass ``vote_weighted=True`` to weight
    each precinct by its vote total instead. Empty brackets are omitted, so
    indices may skip; counts always re-sum to the pool size.
    """
    if width < 1:
        raise ValueError("bracket width must be >= 1")
    buckets: dict[int, list] = {}
    for r in pool.records:
        buckets.setdefault(bracket_index(r.total, width), []).append(r)

    pool_votes = pool.total_votes
    out: list[BracketStats] = []
    for k in sorted(buckets):
        members = buckets[k]
        votes = sum(r.total for r in members)
        if vote_weighted:
            mean_blue = sum(r.dem_votes for r in members) / votes
        else:
            mean_blue = sum(r.dem_votes / r.total for r in members) / len(members)
        out.append(BracketStats(
            bracket_index=k,
            size_range=(max(1, (k - 1) * width), k * width - 1),
            precinct_count=len(members),
            total_votes=votes,
            mean_blue_fraction=mean_blue,
            mean_red_fraction=1.0 - mean_blue,
            vote_share_width=votes / pool_votes if pool_votes else 0.0,
        ))
    return out


def brackets_to_csv(stats: list[BracketStats], path: str | Path | None = None) -> str:
    """Render bracket stats as CSV; writes to ``path`` when given."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["bracket", "low", "high", "count", "total_votes",
                     "mean_blue_frac", "mean_red_frac", "vote_share_width"])
    for b in stats:
        writer.writerow([b.bracket_index, b.size_range[0], b.size_range[1],
                         b.precinct_count, b.total_votes,
                         f"{b.mean_blue_fraction:.6f}", f"{b.mean_red_fraction:.6f}",
                         f"{b.vote_share_width:.6f}"])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
