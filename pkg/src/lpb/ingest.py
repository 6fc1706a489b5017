"""Precinct file ingestion.

Reads precinct-level result CSVs into validated records via a declarative
column mapping, quarantining bad rows to a sidecar file so vote totals stay
auditable. Also provides scope selection (state or county) and the canonical
CSV format that the rest of the pipeline and the synthetic generator share.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DataError

logger = logging.getLogger(__name__)

# Canonical column names, used for round-tripping and synthetic output.
CANONICAL_COLUMNS = ("state", "county", "precinct_id", "dem_votes", "rep_votes")


@dataclass(frozen=True)
class PrecinctRecord:
    """One precinct's two-party vote counts.

    (state, county, precinct_id) is the precinct key, unique within a dataset.
    """

    state: str
    county: str
    precinct_id: str
    dem_votes: int
    rep_votes: int

    @property
    def total(self) -> int:
        return self.dem_votes + self.rep_votes

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.state, self.county, self.precinct_id)


@dataclass
class ColumnMapping:
    """Maps source CSV columns onto canonical record fields.

    ``state_override`` supplies a constant state code for single-state files
    that carry no state column; ``county`` may be omitted for files without
    county information.
    """

    precinct_id: str
    dem_votes: str
    rep_votes: str
    state: str | None = None
    county: str | None = None
    state_override: str | None = None

    def __post_init__(self):
        if self.dem_votes == self.rep_votes:
            raise DataError("dem_votes and rep_votes must map to distinct columns")
        if self.state is None and self.state_override is None:
            raise DataError("mapping needs either a state column or a state_override")

    @classmethod
    def identity(cls) -> "ColumnMapping":
        """Mapping for the canonical CSV format."""
        return cls(state="state", county="county", precinct_id="precinct_id",
                   dem_votes="dem_votes", rep_votes="rep_votes")

    @classmethod
    def from_json(cls, path: str | Path) -> "ColumnMapping":
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise DataError(f"mapping file not found: {path}")
        except json.JSONDecodeError as exc:
            raise DataError(f"mapping file {path} is not valid JSON: {exc}")
        known = {"state", "county", "precinct_id", "dem_votes", "rep_votes",
                 "state_override"}
        unknown = set(raw) - known
        if unknown:
            raise DataError(f"mapping file {path} has unknown keys: {sorted(unknown)}")
        missing = {"precinct_id", "dem_votes", "rep_votes"} - set(raw)
        if missing:
            raise DataError(f"mapping file {path} missing keys: {sorted(missing)}")
        return cls(**raw)

    def required_columns(self) -> list[str]:
        cols = [self.precinct_id, self.dem_votes, self.rep_votes]
        if self.state is not None:
            cols.insert(0, self.state)
        if self.county is not None:
            cols.append(self.county)
        return cols


@dataclass
class DatasetMeta:
    """Parse summary for one source file."""

    record_count: int
    reject_count: int
    source: str
    label: str
    rejects_path: str | None = None

    def to_dict(self) -> dict:
        return {"record_count": self.record_count, "reject_count": self.reject_count,
                "source": self.source, "label": self.label,
                "rejects_path": self.rejects_path}


def _parse_count(raw: str) -> int:
    """Parse a vote count; tolerates comma grouping and integer-valued floats."""
    text = raw.strip().replace(",", "")
    if not text:
        raise ValueError("empty")
    try:
        return int(text)
    except ValueError:
        value = float(text)  # may raise ValueError again: genuinely non-numeric
        if not value.is_integer():
            raise ValueError(f"non-integer count {raw!r}")
        return int(value)


def _normalize_state(raw: str) -> str:
    code = raw.strip().upper()
    if len(code) != 2 or not code.isalpha():
        raise ValueError(f"bad state code {raw!r}")
    return code


def parse_dataset(
    path: str | Path,
    mapping: ColumnMapping,
    label: str | None = None,
    rejects_path: str | Path | None = None,
) -> tuple[list[PrecinctRecord], DatasetMeta]:
    """Parse a precinct CSV into validated records.

    Rows that fail validation (non-integer or negative counts, bad state
    codes, empty precinct ids) are quarantined to ``<input>.rejects.csv``
    with a reason column and counted, never silently dropped. Duplicate
    precinct keys among accepted rows are a hard error: merging them could
    fabricate large precincts.
    """
    path = Path(path)
    if not path.is_file():
        raise DataError(f"input file not found: {path}")
    if rejects_path is None:
        rejects_path = path.with_name(path.name + ".rejects.csv")

    records: list[PrecinctRecord] = []
    rejects: list[tuple[dict, str]] = []
    seen: dict[tuple[str, str, str], int] = {}
    duplicates: list[tuple[str, str, str]] = []

    with path.open(newline="", encoding="utf-8-sig") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise DataError(f"{path}: file is empty (no header row)")
        header = set(reader.fieldnames)
        missing = [c for c in mapping.required_columns() if c not in header]
        if missing:
            raise DataError(f"{path}: mapped columns not in header: {missing}")

        for line_no, row in enumerate(reader, start=2):
            try:
                if mapping.state_override is not None:
                    state = _normalize_state(mapping.state_override)
                else:
                    state = _normalize_state(row[mapping.state] or "")
                county = (row[mapping.county] or "").strip() if mapping.county else ""
                precinct_id = (row[mapping.precinct_id] or "").strip()
                if not precinct_id:
                    raise ValueError("empty precinct_id")
                dem = _parse_count(row[mapping.dem_votes] or "")
                rep = _parse_count(row[mapping.rep_votes] or "")
                if dem < 0 or rep < 0:
                    raise ValueError(f"negative vote count ({dem}, {rep})")
            except ValueError as exc:
                rejects.append((row, f"line {line_no}: {exc}"))
                continue

            record = PrecinctRecord(state, county, precinct_id, dem, rep)
            if record.key in seen:
                duplicates.append(record.key)
            else:
                seen[record.key] = line_no
                records.append(record)

    if duplicates:
        shown = ", ".join("/".join(k) for k in sorted(set(duplicates))[:10])
        raise DataError(
            f"{path}: {len(duplicates)} duplicate precinct key(s): {shown}"
            + (" ..." if len(set(duplicates)) > 10 else "")
        )

    meta = DatasetMeta(record_count=len(records), reject_count=len(rejects),
                       source=str(path), label=label or path.stem)
    if rejects:
        _write_rejects(Path(rejects_path), rejects)
        meta.rejects_path = str(rejects_path)
        logger.warning("%s: %d row(s) rejected, quarantined to %s",
                       path, len(rejects), rejects_path)
    return records, meta


def _write_rejects(path: Path, rejects: list[tuple[dict, str]]) -> None:
    columns: list[str] = []
    for row, _ in rejects:
        for col in row:
            if col is not None and col not in columns:
                columns.append(col)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns + ["reason"])
        for row, reason in rejects:
            writer.writerow([row.get(c, "") for c in columns] + [reason])


def scope_filter(
    records: list[PrecinctRecord],
    state: str,
    county: str | None = None,
) -> list[PrecinctRecord]:
    """Select the records for one analysis scope (a state, or one county).

    County comparison is case-insensitive since source files disagree on
    capitalization. Order is preserved. An empty result is a warning, not
    an error.
    """
    state = state.strip().upper()
    county_norm = county.strip().lower() if county is not None else None
    out = [r for r in records
           if r.state == state
           and (county_norm is None or r.county.lower() == county_norm)]
    if not out:
        logger.warning("scope state=%s county=%s matched no records", state, county)
    return out


def write_canonical_csv(records: list[PrecinctRecord], path: str | Path) -> None:
    """Write records in the canonical CSV format (readable back with
    ``ColumnMapping.identity()``)."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CANONICAL_COLUMNS)
        for r in records:
            writer.writerow([r.state, r.county, r.precinct_id, r.dem_votes, r.rep_votes])


def coerce_records(data) -> list[PrecinctRecord]:
    """Validate arbitrary input into a list of PrecinctRecord.

    Accepts a list of PrecinctRecord, an iterable of dicts with canonical
    field names, or a pandas DataFrame with canonical columns. Raises
    DataError on invariant violations (negative counts, duplicate keys).
    """
    if hasattr(data, "to_dict") and hasattr(data, "columns"):  # DataFrame
        data = data.to_dict("records")
    records: list[PrecinctRecord] = []
    seen: set[tuple[str, str, str]] = set()
    for item in data:
        if isinstance(item, PrecinctRecord):
            rec = item
        elif isinstance(item, dict):
            try:
                rec = PrecinctRecord(
                    state=str(item["state"]).strip().upper(),
                    county=str(item.get("county", "") or "").strip(),
                    precinct_id=str(item["precinct_id"]).strip(),
                    dem_votes=int(item["dem_votes"]),
                    rep_votes=int(item["rep_votes"]),
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise DataError(f"cannot interpret record {item!r}: {exc}")
        else:
            raise DataError(f"cannot interpret record of type {type(item).__name__}")
        if rec.dem_votes < 0 or rec.rep_votes < 0:
            raise DataError(f"negative vote count on {rec.key}")
        if rec.key in seen:
            raise DataError(f"duplicate precinct key {rec.key}")
        seen.add(rec.key)
        records.append(rec)
    return records
