"""Precinct-level election analysis: win-pool partitioning, size-trend
regression, and the large-precinct bias (LPB) vote-gain statistic."""

__version__ = "0.1.0"

from .errors import (DataError, DegenerateSeriesError, InsufficientDataError,
                     LpbError)
from .ingest import (ColumnMapping, DatasetMeta, PrecinctRecord, coerce_records,
                     parse_dataset, scope_filter, write_canonical_csv)
from .pools import (PartitionResult, PoolLabel, WinPool, large_cutoff,
                    mean_precinct_size, merge_pools, partition_pools,
                    write_pool_csv)
from .brackets import BracketStats, bracket_stats, brackets_to_csv
from .regression import (FractionSeries, RegressionFit, Side, XKind,
                         build_series, ols_fit)
from .bias import (Direction, LpbResult, StateSummaryRow, compute_lpb,
                   fit_pool_lpb, format_summary_table, large_precinct_split,
                   summarize_state)
from .diagnostics import (ShuffleBaseline, SweepResult, combined_pool_fit,
                          shuffle_baseline, sweep_to_csv, threshold_sweep)
from .synth import PlantedTruth, SynthConfig, generate, planted_truth
from .analyzer import LpbAnalyzer, PoolAnalysis, report_from_json, report_to_json
from .figures import emit_figures

__all__ = [
    "ColumnMapping", "DatasetMeta", "PrecinctRecord", "parse_dataset",
    "scope_filter", "coerce_records", "write_canonical_csv",
    "PartitionResult", "PoolLabel", "WinPool", "partition_pools",
    "large_cutoff", "mean_precinct_size", "merge_pools", "write_pool_csv",
    "BracketStats", "bracket_stats", "brackets_to_csv",
    "FractionSeries", "RegressionFit", "Side", "XKind", "build_series",
    "ols_fit",
    "Direction", "LpbResult", "StateSummaryRow", "compute_lpb", "fit_pool_lpb",
    "large_precinct_split", "summarize_state", "format_summary_table",
    "ShuffleBaseline", "SweepResult", "shuffle_baseline", "combined_pool_fit",
    "threshold_sweep", "sweep_to_csv",
    "SynthConfig", "PlantedTruth", "generate", "planted_truth",
    "LpbAnalyzer", "PoolAnalysis", "report_to_json", "report_from_json",
    "emit_figures",
    "LpbError", "DataError", "InsufficientDataError", "DegenerateSeriesError",
]
