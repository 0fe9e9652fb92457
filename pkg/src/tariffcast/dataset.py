"""CSV ingestion for the four monthly tariff price series.

Expected layout: a `date` column in YYYY-MM format followed by any subset
of the price columns monochromic, day, peak, night.  Months must be
contiguous and strictly increasing; prices must be positive with a `.`
decimal separator.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import GapInCalendar, NonPositivePrice, ParseError
from .series import Month, TimeSeries

SERIES_NAMES = ("monochromic", "day", "peak", "night")


@dataclass(frozen=True, eq=False)
class TariffDataset:
    start: Month
    columns: dict[str, np.ndarray]  # insertion order follows the file header

    @property
    def n(self) -> int:
        return next(iter(self.columns.values())).size

    @property
    def end(self) -> Month:
        return self.start.plus(self.n - 1)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.columns)

    def months(self) -> list[Month]:
        return [self.start.plus(t) for t in range(self.n)]

    def series(self, name: str) -> TimeSeries:
        if name not in self.columns:
            raise KeyError(f"no series {name!r}; file has {', '.join(self.columns)}")
        return TimeSeries(self.start, self.columns[name], period_hint=12)


def _parse_month(text: str, row: int) -> Month:
    try:
        return Month.parse(text)
    except ValueError as exc:
        raise ParseError(f"row {row}, column 'date': {exc}") from exc


def _parse_price(text: str, row: int, column: str) -> float:
    try:
        value = float(text)
    except ValueError as exc:
        raise ParseError(f"row {row}, column {column!r}: not a number: {text!r}") from exc
    if not np.isfinite(value):
        raise ParseError(f"row {row}, column {column!r}: non-finite price")
    if value <= 0.0:
        raise NonPositivePrice(f"row {row}, column {column!r}: price must be positive, got {text}")
    return value


def read_csv_text(text: str) -> TariffDataset:
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows:
        raise ParseError("empty file")
    header = [cell.strip().lower() for cell in rows[0]]
    if not header or header[0] != "date":
        raise ParseError(f"first header column must be 'date', got {header[:1]}")
    names = header[1:]
    if not names:
        raise ParseError("no price columns in header")
    for name in names:
        if name not in SERIES_NAMES:
            raise ParseError(f"unknown price column {name!r}; expected a subset of {SERIES_NAMES}")
    if len(set(names)) != len(names):
        raise ParseError("duplicate price column in header")

    months: list[Month] = []
    values: dict[str, list[float]] = {name: [] for name in names}
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ParseError(f"row {i}: expected {len(header)} cells, got {len(row)}")
        month = _parse_month(row[0], i)
        if months:
            expected = months[-1].plus(1)
            if month == expected:
                pass
            elif month.index > expected.index:
                raise GapInCalendar(f"row {i}: missing month {expected}")
            else:
                raise ParseError(f"row {i}: month {month} does not increase past {months[-1]}")
        months.append(month)
        for j, name in enumerate(names, start=1):
            values[name].append(_parse_price(row[j], i, name))
    if len(months) < 2:
        raise ParseError("need at least two monthly observations")
    columns = {name: np.asarray(values[name], dtype=np.float64) for name in names}
    return TariffDataset(start=months[0], columns=columns)


def ingest_csv(path: str | Path) -> TariffDataset:
    return read_csv_text(Path(path).read_text(encoding="utf-8"))


def to_csv_text(dataset: TariffDataset) -> str:
    """Serialize back to the ingestion format; round-trips bit-identically."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["date", *dataset.names])
    for t, month in enumerate(dataset.months()):
        writer.writerow([str(month), *(repr(float(dataset.columns[n][t])) for n in dataset.names)])
    return out.getvalue()
