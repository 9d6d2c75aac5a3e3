"""Country quadrant classification and anomaly accounting.

Countries are placed on a governance-index by resource-abundance plane and
split into four quadrants at an index cutoff (default: scale midpoint) and
an abundance cutoff (default: 40 percent of merchandise exports). The
leading expectation is that high-index countries escape the low-income
bracket and low-index countries do not; an anomaly is a country whose
income class contradicts its index level, tallied per quadrant.

Ingestion starts from a local delimited export with a header row; rows
failing validation are reported and skipped, never silently dropped.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Optional

from .errors import (
    FileUnreadableError,
    MissingIncomeError,
    SchemaMismatchError,
)

DEFAULT_ABUNDANCE_CUTOFF = 40.0
DEFAULT_INCOME_LOW_CUTOFF = 1025.0
DEFAULT_INDEX_BOUNDS = (1.0, 6.0)

_CUTOFF_EPS = 1e-12


class IncomeClass(Enum):
    LOW = "low"
    NON_LOW = "nonlow"


class Quadrant(Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


@dataclass(frozen=True)
class CountryRecord:
    """One country's governance index, export abundance, and income class."""

    name: str
    index_value: float
    abundance_share: float
    gni_per_capita: Optional[float] = None
    income_class: Optional[IncomeClass] = None


@dataclass(frozen=True)
class Thresholds:
    """Cutoffs for the quadrant split and the income bracket."""

    index_high_cutoff: float
    abundance_cutoff: float = DEFAULT_ABUNDANCE_CUTOFF
    income_low_cutoff: float = DEFAULT_INCOME_LOW_CUTOFF

    @classmethod
    def for_scale(cls, index_bounds=DEFAULT_INDEX_BOUNDS, **kwargs) -> "Thresholds":
        lo, hi = index_bounds
        return cls(index_high_cutoff=0.5 * (lo + hi), **kwargs)


@dataclass(frozen=True)
class ColumnMap:
    """Header names for each consumed field; optional columns may be None."""

    name: str = "country"
    index_value: str = "index"
    abundance: str = "abundance"
    gni: Optional[str] = None
    income_class: Optional[str] = None


@dataclass(frozen=True)
class RowDiagnostic:
    row: int
    column: str
    message: str

    def __str__(self) -> str:
        return f"row {self.row}, column {self.column!r}: {self.message}"


def _parse_income_class(raw: str) -> Optional[IncomeClass]:
    token = raw.strip().lower().replace("-", "").replace("_", "").replace(" ", "")
    if token in ("low",):
        return IncomeClass.LOW
    if token in ("nonlow", "notlow"):
        return IncomeClass.NON_LOW
    return None


def load_countries(path, schema: ColumnMap = ColumnMap(),
                   index_bounds=DEFAULT_INDEX_BOUNDS,
                   income_low_cutoff: float = DEFAULT_INCOME_LOW_CUTOFF,
                   delimiter: str = ","):
    """Parse a delimited country export into validated records.

    Returns ``(records, diagnostics)``. An explicit income-class column
    takes precedence; otherwise the class is derived from GNI per capita
    against the low-income cutoff. Out-of-range rows are skipped with a
    diagnostic naming the row.
    """
    try:
        fh = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise FileUnreadableError(f"cannot read {path}: {exc}") from exc
    with fh:
        reader = csv.DictReader(fh, delimiter=delimiter)
        header = reader.fieldnames or []
        required = [schema.name, schema.index_value, schema.abundance]
        optional = [c for c in (schema.gni, schema.income_class) if c is not None]
        missing = [c for c in required + optional if c not in header]
        if missing:
            raise SchemaMismatchError(
                f"mapped columns absent from header: {', '.join(missing)}")

        lo, hi = index_bounds
        records, diagnostics = [], []
        for rownum, row in enumerate(reader, start=2):
            name = (row.get(schema.name) or "").strip()
            if not name:
                diagnostics.append(RowDiagnostic(rownum, schema.name, "empty name"))
                continue
            try:
                index_value = float(row[schema.index_value])
                abundance = float(row[schema.abundance])
            except (TypeError, ValueError):
                diagnostics.append(RowDiagnostic(
                    rownum, schema.index_value, "non-numeric index or abundance"))
                continue
            if not lo <= index_value <= hi:
                diagnostics.append(RowDiagnostic(
                    rownum, schema.index_value,
                    f"index {index_value} outside scale [{lo}, {hi}]"))
                continue
            if not 0.0 <= abundance <= 100.0:
                diagnostics.append(RowDiagnostic(
                    rownum, schema.abundance,
                    f"abundance {abundance} outside [0, 100]"))
                continue

            gni = None
            if schema.gni is not None and (row.get(schema.gni) or "").strip():
                try:
                    gni = float(row[schema.gni])
                except ValueError:
                    diagnostics.append(RowDiagnostic(
                        rownum, schema.gni, "non-numeric GNI"))
                    continue

            income = None
            if schema.income_class is not None and (row.get(schema.income_class) or "").strip():
                income = _parse_income_class(row[schema.income_class])
                if income is None:
                    diagnostics.append(RowDiagnostic(
                        rownum, schema.income_class,
                        f"unrecognized income class {row[schema.income_class]!r}"))
                    continue
            if income is None and gni is not None:
                income = (IncomeClass.LOW if gni <= income_low_cutoff
                          else IncomeClass.NON_LOW)
            records.append(CountryRecord(name, index_value, abundance, gni, income))
    return records, diagnostics


def classify_quadrant(record: CountryRecord, thresholds: Thresholds) -> Quadrant:
    """Place a record: I high/abundant, II high/scarce, III low/scarce,
    IV low/abundant. Values at a cutoff count as high/abundant."""
    high = record.index_value >= thresholds.index_high_cutoff
    abundant = record.abundance_share >= thresholds.abundance_cutoff
    if high:
        return Quadrant.I if abundant else Quadrant.II
    return Quadrant.IV if abundant else Quadrant.III


def boundary_flags(record: CountryRecord, thresholds: Thresholds) -> tuple:
    """Name the cutoffs this record sits exactly on (tie convention applied)."""
    flags = []
    if abs(record.index_value - thresholds.index_high_cutoff) <= _CUTOFF_EPS:
        flags.append("index_at_cutoff")
    if abs(record.abundance_share - thresholds.abundance_cutoff) <= _CUTOFF_EPS:
        flags.append("abundance_at_cutoff")
    return tuple(flags)


def is_anomaly(record: CountryRecord, thresholds: Thresholds) -> bool:
    """A record whose income class contradicts its index level."""
    if record.income_class is None:
        raise MissingIncomeError(
            f"record {record.name!r} lacks both an income class and a GNI value")
    high = record.index_value >= thresholds.index_high_cutoff
    if high:
        return record.income_class == IncomeClass.LOW
    return record.income_class == IncomeClass.NON_LOW


@dataclass(frozen=True)
class CountryRow:
    """Per-country audit line."""

    record: CountryRecord
    quadrant: Quadrant
    anomaly: bool
    boundary: tuple


@dataclass(frozen=True)
class AnomalyTable:
    """Per-quadrant anomaly counts and memberships."""

    anomalies: Mapping
    members: Mapping
    rows: tuple

    @property
    def total(self) -> int:
        return sum(self.anomalies.values())

    def counts(self) -> tuple:
        return tuple(self.anomalies[q] for q in Quadrant)

    def to_text(self) -> str:
        width = max([len("quadrant")] + [len(q.value) for q in Quadrant])
        lines = [f"{'quadrant':<{width}}  {'members':>7}  {'anomalies':>9}"]
        for q in Quadrant:
            lines.append(f"{q.value:<{width}}  {len(self.members[q]):>7}  "
                         f"{self.anomalies[q]:>9}")
        lines.append(f"{'total':<{width}}  {len(self.rows):>7}  {self.total:>9}")
        return "\n".join(lines)

    def to_csv_rows(self):
        yield ("quadrant", "members", "anomalies")
        for q in Quadrant:
            yield (q.value, str(len(self.members[q])), str(self.anomalies[q]))
        yield ("total", str(len(self.rows)), str(self.total))

    def to_country_rows(self):
        yield ("name", "index", "abundance", "income_class", "quadrant",
               "is_anomaly", "boundary_flag")
        for row in self.rows:
            rec = row.record
            yield (rec.name, repr(rec.index_value), repr(rec.abundance_share),
                   rec.income_class.value if rec.income_class else "",
                   row.quadrant.value, "1" if row.anomaly else "0",
                   ";".join(row.boundary))


def anomaly_table(records, thresholds: Thresholds) -> AnomalyTable:
    """Tally anomalies per quadrant; deterministic in the input order."""
    anomalies = {q: 0 for q in Quadrant}
    members = {q: [] for q in Quadrant}
    rows = []
    for record in records:
        quadrant = classify_quadrant(record, thresholds)
        anomaly = is_anomaly(record, thresholds)
        members[quadrant].append(record.name)
        if anomaly:
            anomalies[quadrant] += 1
        rows.append(CountryRow(record, quadrant, anomaly,
                               boundary_flags(record, thresholds)))
    return AnomalyTable(anomalies, members, tuple(rows))
