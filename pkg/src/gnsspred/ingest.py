"""Series file parsing and results serialization.

Two input formats are supported: the Nevada Geodetic Laboratory daily
tenv3 format, and generic delimited text described by a SeriesFileSchema.
Epochs from calendar units (decimal years, MJD) are converted to seconds
and re-origined to the first epoch of the series; epochs already in
seconds are taken as-is so that write -> parse is the identity.

All floating values are emitted with 17 significant digits, enough to
round-trip IEEE doubles exactly.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, fields as dc_fields, is_dataclass
from typing import Dict, Optional

from .errors import MalformedLine, SchemaMismatch, UnknownFormat
from .series import Sample, TimeSeries, validate_series

SECONDS_PER_DAY = 86400.0
SECONDS_PER_YEAR = 365.25 * SECONDS_PER_DAY

# NGL tenv3 daily position columns (site, YYMMMDD, decimal year, MJD, ...)
_TENV3_MJD_COL = 3
_TENV3_VALUE_COLS = {"E": 8, "N": 10, "U": 12}
_TENV3_SIGMA_COLS = {"E": 14, "N": 15, "U": 16}
_TENV3_MIN_COLS = 17


@dataclass(frozen=True)
class SeriesFileSchema:
    """Column layout of a generic delimited series file."""

    epoch_col: int
    value_cols: Dict[str, int]
    sigma_cols: Optional[Dict[str, int]] = None
    delimiter: Optional[str] = None
    epoch_unit: str = "seconds"
    header_lines: int = 0
    station_id: str = "UNKNOWN"
    sampling_interval: float = 1.0

    def __post_init__(self):
        if self.epoch_unit not in ("decimal_year", "mjd", "seconds"):
            raise SchemaMismatch(f"unknown epoch unit {self.epoch_unit!r}")
        cols = [self.epoch_col, *self.value_cols.values()]
        if self.sigma_cols:
            cols += list(self.sigma_cols.values())
        if len(set(cols)) != len(cols):
            raise SchemaMismatch(f"schema column indices are not distinct: {cols}")
        if not self.value_cols:
            raise SchemaMismatch("schema names no value columns")


#: default layout for the NGL tenv3 product, overridable by the caller
NGL_SCHEMA = SeriesFileSchema(
    epoch_col=_TENV3_MJD_COL,
    value_cols=_TENV3_VALUE_COLS,
    sigma_cols=_TENV3_SIGMA_COLS,
    delimiter=None,
    epoch_unit="mjd",
    header_lines=1,
    sampling_interval=SECONDS_PER_DAY,
)


def _as_text(data) -> str:
    if isinstance(data, bytes):
        return data.decode("utf-8")
    if hasattr(data, "read"):
        data = data.read()
        return data.decode("utf-8") if isinstance(data, bytes) else data
    return data


def _epoch_to_seconds(raw: float, unit: str) -> float:
    if unit == "decimal_year":
        return raw * SECONDS_PER_YEAR
    if unit == "mjd":
        return raw * SECONDS_PER_DAY
    return raw


def parse_delimited(data, schema: SeriesFileSchema):
    """Parse a generic delimited file into one TimeSeries per component."""
    text = _as_text(data)
    lines = text.splitlines()
    rows = []
    for lineno, line in enumerate(lines, start=1):
        if lineno <= schema.header_lines or not line.strip():
            continue
        fields = line.split(schema.delimiter)
        max_col = max(
            [schema.epoch_col, *schema.value_cols.values()],
            default=0,
        )
        if schema.sigma_cols:
            max_col = max(max_col, *schema.sigma_cols.values())
        if max_col >= len(fields):
            raise SchemaMismatch(
                f"line {lineno}: schema references column {max_col} but row has {len(fields)} fields"
            )
        rows.append((lineno, fields))
    if not rows:
        raise UnknownFormat("no data rows found")

    out = []
    for component, vcol in schema.value_cols.items():
        samples = []
        for lineno, fields in rows:
            try:
                epoch = _epoch_to_seconds(float(fields[schema.epoch_col]), schema.epoch_unit)
                value = float(fields[vcol])
                sigma = None
                if schema.sigma_cols and component in schema.sigma_cols:
                    raw = fields[schema.sigma_cols[component]].strip()
                    sigma = float(raw) if raw else None
            except ValueError as exc:
                raise MalformedLine(lineno, str(exc)) from exc
            samples.append((epoch, value, sigma))
        if schema.epoch_unit != "seconds":
            origin = samples[0][0]
            samples = [(t - origin, v, s) for t, v, s in samples]
        series = TimeSeries(
            station_id=schema.station_id,
            component=component,
            samples=tuple(Sample(t=t, value=v, sigma=s) for t, v, s in samples),
            sampling_interval=schema.sampling_interval,
        )
        out.append(validate_series(series))
    return out


def parse_ngl(data):
    """Parse an NGL tenv3 daily-position file into E, N, U series."""
    text = _as_text(data)
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise UnknownFormat("empty input")

    data_lines = []
    for lineno, line in enumerate(lines, start=1):
        first = line.split(None, 1)[0].lower()
        if lineno == 1 and first in ("site", "station"):
            continue
        data_lines.append((lineno, line))
    if not data_lines:
        raise UnknownFormat("no data rows after header")

    station = data_lines[0][1].split()[0]
    rows = []
    for lineno, line in enumerate_fields(data_lines):
        rows.append((lineno, line))

    out = []
    for component in ("E", "N", "U"):
        vcol = _TENV3_VALUE_COLS[component]
        scol = _TENV3_SIGMA_COLS[component]
        samples = []
        for lineno, fields in rows:
            try:
                mjd = float(fields[_TENV3_MJD_COL])
                value = float(fields[vcol])
                sigma = float(fields[scol])
            except ValueError as exc:
                raise MalformedLine(lineno, str(exc)) from exc
            samples.append((mjd * SECONDS_PER_DAY, value, sigma))
        origin = samples[0][0]
        series = TimeSeries(
            station_id=station,
            component=component,
            samples=tuple(Sample(t=t - origin, value=v, sigma=s) for t, v, s in samples),
            sampling_interval=SECONDS_PER_DAY,
        )
        out.append(validate_series(series))
    return out


def enumerate_fields(data_lines):
    """Split tenv3 data lines, rejecting rows that are too narrow."""
    for lineno, line in data_lines:
        fields = line.split()
        if len(fields) < _TENV3_MIN_COLS:
            raise MalformedLine(lineno, f"expected >= {_TENV3_MIN_COLS} columns, got {len(fields)}")
        yield lineno, fields


def fmt(value) -> str:
    """Render one field; floats get 17 significant digits."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def write_series(series: TimeSeries, delimiter: str = "\t") -> str:
    """Canonical delimited serialization of one series."""
    buf = io.StringIO()
    buf.write(
        f"# station={series.station_id} component={series.component}"
        f" sampling_interval={fmt(series.sampling_interval)}\n"
    )
    buf.write(delimiter.join(("t", "value", "sigma")) + "\n")
    for s in series.samples:
        buf.write(delimiter.join((fmt(s.t), fmt(s.value), fmt(s.sigma))) + "\n")
    return buf.getvalue()


def read_series(data, delimiter: str = "\t") -> TimeSeries:
    """Parse the canonical format produced by write_series."""
    text = _as_text(data)
    lines = text.splitlines()
    if len(lines) < 2 or not lines[0].startswith("#"):
        raise UnknownFormat("not a canonical series file")
    meta = dict(item.split("=", 1) for item in lines[0][1:].split())
    samples = []
    for lineno, line in enumerate(lines[2:], start=3):
        if not line.strip():
            continue
        fields = line.split(delimiter)
        if len(fields) != 3:
            raise MalformedLine(lineno, f"expected 3 fields, got {len(fields)}")
        try:
            t, v = float(fields[0]), float(fields[1])
            sigma = float(fields[2]) if fields[2].strip() else None
        except ValueError as exc:
            raise MalformedLine(lineno, str(exc)) from exc
        samples.append(Sample(t=t, value=v, sigma=sigma))
    series = TimeSeries(
        station_id=meta.get("station", "UNKNOWN"),
        component=meta.get("component", "E"),
        samples=tuple(samples),
        sampling_interval=float(meta.get("sampling_interval", 1.0)),
    )
    return validate_series(series)


def _record_items(record):
    if is_dataclass(record) and not isinstance(record, type):
        return [(f.name, getattr(record, f.name)) for f in dc_fields(record)]
    if isinstance(record, dict):
        return list(record.items())
    raise TypeError(f"cannot serialize {type(record).__name__}")


def write_table(headers, rows, delimiter: str = "\t") -> str:
    """Delimited table with a header row; empty rows give header-only output."""
    buf = io.StringIO()
    buf.write(delimiter.join(str(h) for h in headers) + "\n")
    for row in rows:
        buf.write(delimiter.join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def write_results(record, format: str = "delimited", delimiter: str = "\t", headers=None) -> str:
    """Serialize a result record (or list of records) deterministically.

    "delimited" emits a header row plus one row per record;
    "structured-text" emits key = value lines. headers names the columns
    when the record list is empty.
    """
    records = record if isinstance(record, (list, tuple)) else [record]
    if format == "delimited":
        buf = io.StringIO()
        if not records:
            return write_table(headers or [], [], delimiter) if headers else ""
        names = [k for k, _ in _record_items(records[0])]
        buf.write(delimiter.join(names) + "\n")
        for rec in records:
            buf.write(delimiter.join(fmt(v) for _, v in _record_items(rec)) + "\n")
        return buf.getvalue()
    if format == "structured-text":
        buf = io.StringIO()
        for rec in records:
            for key, value in _record_items(rec):
                buf.write(f"{key} = {fmt(value)}\n")
            buf.write("\n")
        return buf.getvalue()
    raise ValueError(f"unknown format {format!r}")
