"""Command-line interface.

Subcommands: validate, analyze, brackets, diagnose {shuffle,combined,sweep},
synth, and report table. Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .analyzer import LpbAnalyzer, report_to_json
from .bias import (DEFAULT_ALPHA, DEFAULT_THRESHOLD, format_summary_table,
                   summarize_state)
from .brackets import DEFAULT_WIDTH, bracket_stats, brackets_to_csv
from .diagnostics import combined_pool_fit, shuffle_baseline, sweep_to_csv, threshold_sweep
from .errors import LpbError
from .ingest import ColumnMapping, parse_dataset, scope_filter, write_canonical_csv
from .pools import partition_pools
from .synth import SynthConfig, generate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    """argparse that exits 1 on usage errors (2 is reserved for data errors)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def default_alpha() -> float:
    raw = os.environ.get("LPB_ALPHA")
    if raw is None:
        return DEFAULT_ALPHA
    try:
        return float(raw)
    except ValueError:
        raise LpbError(f"LPB_ALPHA is not a number: {raw!r}")


def _parse_scope(text: str) -> dict:
    """Parse 'state=PA' or 'state=PA,county=Wayne'."""
    scope = {}
    for part in text.split(","):
        key, sep, value = part.partition("=")
        if not sep or key.strip() not in ("state", "county"):
            raise LpbError(f"bad --scope (want state=XX[,county=NAME]): {text!r}")
        scope[key.strip()] = value.strip()
    if "state" not in scope:
        raise LpbError(f"--scope needs a state: {text!r}")
    return scope


def _load_records(args) -> tuple[list, str]:
    mapping = (ColumnMapping.from_json(args.mapping) if args.mapping
               else ColumnMapping.identity())
    records, meta = parse_dataset(args.input, mapping, label=args.label)
    label = meta.label
    if args.scope or args.county:
        scope = _parse_scope(args.scope) if args.scope else {}
        county = args.county if args.county else scope.get("county")
        state = scope.get("state")
        if state:
            records = scope_filter(records, state, county)
            label = f"{state}/{county}" if county else state
        elif county:
            records = [r for r in records if r.county.lower() == county.lower()]
            label = f"{label}/{county}"
    if not records:
        raise LpbError(f"{args.input}: scope matched no records")
    return records, label


def _add_input_args(parser, need_scope=True):
    parser.add_argument("--input", required=True, help="precinct CSV file")
    parser.add_argument("--mapping", default=None,
                        help="column mapping JSON (default: canonical columns)")
    parser.add_argument("--label", default=None,
                        help="dataset label, e.g. PA-2008 (default: file stem)")
    if need_scope:
        parser.add_argument("--scope", default=None,
                            help="state=XX or state=XX,county=NAME")
        parser.add_argument("--county", default=None,
                            help="restrict to one county (combines with --scope)")


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    mapping = (ColumnMapping.from_json(args.mapping) if args.mapping
               else ColumnMapping.identity())
    records, meta = parse_dataset(args.input, mapping, label=args.label)
    dem = sum(r.dem_votes for r in records)
    rep = sum(r.rep_votes for r in records)
    summary = meta.to_dict() | {"dem_votes": dem, "rep_votes": rep,
                                "total_votes": dem + rep}
    text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    _write_or_print(text, args.out)
    if args.out:
        print(f"{meta.record_count} records accepted, {meta.reject_count} rejected")
    return EXIT_OK


def cmd_analyze(args) -> int:
    records, label = _load_records(args)
    analyzer = LpbAnalyzer(threshold=args.threshold,
                           bracket_width=args.bracket_width,
                           alpha=args.alpha).fit(records)
    diagnostics = {}
    if args.sweep:
        thresholds = [int(t) for t in args.sweep.split(",")]
        sweep = threshold_sweep(analyzer.partition_, thresholds, args.alpha)
        diagnostics["sweep"] = sweep.rows()
    if args.shuffle:
        diagnostics["shuffle"] = {
            pool: analyzer.shuffle_baseline(pool, args.shuffle, args.rng_seed).to_dict()
            for pool in ("blue", "red")
            if len(getattr(analyzer.partition_, f"{pool}_pool")) >= 3
        }
        diagnostics["shuffle_rng_seed"] = args.rng_seed
    report = analyzer.report(scope_label=label,
                             diagnostics=diagnostics or None)
    _write_or_print(report_to_json(report), args.out)
    if args.figures:
        from .figures import emit_figures
        files = emit_figures(report, args.figures,
                             grid_brackets=(args.grid == "brackets"))
        print("\n".join(files), file=sys.stderr)
    return EXIT_OK


def cmd_brackets(args) -> int:
    records, _label = _load_records(args)
    partition = partition_pools(records)
    pool = partition.blue_pool if args.pool == "blue" else partition.red_pool
    stats = bracket_stats(pool, args.width, vote_weighted=args.vote_weighted)
    _write_or_print(brackets_to_csv(stats), args.out)
    return EXIT_OK


def cmd_diagnose_shuffle(args) -> int:
    records, _label = _load_records(args)
    partition = partition_pools(records)
    pool = partition.blue_pool if args.pool == "blue" else partition.red_pool
    baseline = shuffle_baseline(pool, args.seeds, args.rng_seed)
    _write_or_print(json.dumps(baseline.to_dict(), indent=2, sort_keys=True) + "\n",
                    args.out)
    return EXIT_OK


def cmd_diagnose_combined(args) -> int:
    records, _label = _load_records(args)
    partition = partition_pools(records)
    fit, result = combined_pool_fit(partition, args.threshold, args.alpha)
    payload = {"fit": fit.to_dict(), "lpb": result.to_dict()}
    _write_or_print(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_diagnose_sweep(args) -> int:
    records, _label = _load_records(args)
    partition = partition_pools(records)
    thresholds = [int(t) for t in args.thresholds.split(",")]
    sweep = threshold_sweep(partition, thresholds, args.alpha)
    _write_or_print(sweep_to_csv(sweep), args.out)
    return EXIT_OK


def cmd_synth(args) -> int:
    config = SynthConfig.from_json(args.config)
    records, truth = generate(config)
    write_canonical_csv(records, args.out)
    truth_path = args.truth or str(args.out) + ".truth.json"
    payload = {"config": config.to_dict(), "truth": truth.to_dict()}
    Path(truth_path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                                encoding="utf-8")
    print(f"wrote {len(records)} precincts to {args.out}; truth in {truth_path}")
    return EXIT_OK


def cmd_report_table(args) -> int:
    datasets = json.loads(Path(args.datasets).read_text(encoding="utf-8"))
    if not isinstance(datasets, list):
        raise LpbError(f"{args.datasets}: expected a JSON list of datasets")
    rows = []
    for entry in datasets:
        mapping = (ColumnMapping.from_json(entry["mapping"])
                   if entry.get("mapping") else ColumnMapping.identity())
        records, meta = parse_dataset(entry["input"], mapping,
                                      label=entry.get("label"))
        if entry.get("state"):
            records = scope_filter(records, entry["state"], entry.get("county"))
        partition = partition_pools(records)
        rows.append(summarize_state(partition, args.threshold,
                                    label=meta.label, alpha=args.alpha))
    rows.sort(key=lambda r: r.label)
    _write_or_print(format_summary_table(rows, args.format), args.out)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="lpb",
                     description="Precinct-size bias analysis for two-party "
                                 "precinct-level election results.")
    parser.add_argument("--version", action="version", version=f"lpb {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a precinct file")
    _add_input_args(p, need_scope=False)
    p.add_argument("--out", default=None, help="write summary JSON here")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="run the full analysis pipeline")
    _add_input_args(p)
    p.add_argument("--threshold", type=int, default=DEFAULT_THRESHOLD)
    p.add_argument("--bracket-width", type=int, default=DEFAULT_WIDTH)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--out", default=None, help="report JSON path (default stdout)")
    p.add_argument("--figures", default=None, help="emit SVG figures to this directory")
    p.add_argument("--grid", choices=["none", "brackets"], default="none")
    p.add_argument("--sweep", default=None,
                   help="comma-separated thresholds to add a sweep block")
    p.add_argument("--shuffle", type=int, default=None,
                   help="add shuffle-baseline blocks with this many shuffles")
    p.add_argument("--rng-seed", type=int, default=0)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("brackets", help="bracket statistics for one pool")
    _add_input_args(p)
    p.add_argument("--pool", choices=["blue", "red"], default="blue")
    p.add_argument("--width", type=int, default=DEFAULT_WIDTH)
    p.add_argument("--vote-weighted", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_brackets)

    diag = sub.add_parser("diagnose", help="robustness diagnostics")
    diag_sub = diag.add_subparsers(dest="diagnostic", required=True)

    p = diag_sub.add_parser("shuffle", help="random-order null baseline")
    _add_input_args(p)
    p.add_argument("--pool", choices=["blue", "red"], default="blue")
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_diagnose_shuffle)

    p = diag_sub.add_parser("combined", help="merged-pool regression")
    _add_input_args(p)
    p.add_argument("--threshold", type=int, default=DEFAULT_THRESHOLD)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_diagnose_combined)

    p = diag_sub.add_parser("sweep", help="threshold sensitivity sweep")
    _add_input_args(p)
    p.add_argument("--thresholds", required=True, help="e.g. 600,800")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_diagnose_sweep)

    p = sub.add_parser("synth", help="generate a synthetic precinct dataset")
    p.add_argument("--config", required=True, help="SynthConfig JSON file")
    p.add_argument("--out", required=True, help="output CSV (canonical schema)")
    p.add_argument("--truth", default=None,
                   help="planted-truth JSON path (default <out>.truth.json)")
    p.set_defaults(func=cmd_synth)

    rep = sub.add_parser("report", help="multi-dataset reports")
    rep_sub = rep.add_subparsers(dest="report_kind", required=True)
    p = rep_sub.add_parser("table", help="summary table over many datasets")
    p.add_argument("--datasets", required=True,
                   help="JSON list of {label,input,mapping,state,county}")
    p.add_argument("--threshold", type=int, default=DEFAULT_THRESHOLD)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--format", choices=["csv", "json", "markdown"], default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_report_table)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "alpha", DEFAULT_ALPHA) is None:
        args.alpha = default_alpha()
    try:
        return args.func(args)
    except (LpbError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    raise SystemExit(main())
