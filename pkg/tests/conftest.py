"""Shared builders for randomized and hand-made test data."""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np
import pytest

from lpb.ingest import ColumnMapping, PrecinctRecord, parse_dataset, scope_filter
from lpb.pools import PoolLabel, WinPool

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def state_dataset(env_var, default_name, state):
    """Load a real precinct file if available; otherwise skip the test.

    Looks for $<env_var> (with optional $<env_var>_MAPPING) or
    data/<default_name> with an optional sibling .mapping.json.
    """
    path = os.environ.get(env_var)
    mapping_path = os.environ.get(f"{env_var}_MAPPING")
    if path is None:
        candidate = DATA_DIR / default_name
        if candidate.is_file():
            path = str(candidate)
            sidecar = candidate.with_suffix(".mapping.json")
            mapping_path = str(sidecar) if sidecar.is_file() else None
    if path is None:
        pytest.skip(f"{state} precinct file not available "
                    f"(set {env_var} or provide data/{default_name})")
    mapping = (ColumnMapping.from_json(mapping_path) if mapping_path
               else ColumnMapping.identity())
    records, _ = parse_dataset(path, mapping)
    return scope_filter(records, state)


def make_record(dem, rep, pid="P-1", state="PA", county="Adams"):
    return PrecinctRecord(state=state, county=county, precinct_id=pid,
                          dem_votes=dem, rep_votes=rep)


def make_pool(counts, label=PoolLabel.BLUE_WIN):
    """Pool from (dem, rep) pairs, ordered by total as partitioning would."""
    records = [make_record(d, r, pid=f"P-{i:04d}") for i, (d, r) in enumerate(counts)]
    records.sort(key=lambda rec: (rec.total, rec.key))
    return WinPool(label, records)


def random_records(rng, n, max_votes=2000, state="PA"):
    """Random precincts including occasional ties and zero-vote rows."""
    records = []
    for i in range(n):
        kind = rng.random()
        if kind < 0.05:
            dem = rep = int(rng.integers(0, max_votes // 2))
        elif kind < 0.08:
            dem = rep = 0
        else:
            dem = int(rng.integers(0, max_votes))
            rep = int(rng.integers(0, max_votes))
        records.append(make_record(dem, rep, pid=f"P-{i:05d}", state=state,
                                   county=f"C{int(rng.integers(0, 5))}"))
    return records


def random_pool(rng, n=60, x_low=850, x_high=4000):
    """Random blue-win pool whose precincts all clear a size threshold."""
    counts = []
    for _ in range(n):
        total = int(rng.integers(x_low, x_high))
        dem = int(rng.integers(total // 2 + 1, total + 1))
        counts.append((dem, total - dem))
    return make_pool(counts)


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
