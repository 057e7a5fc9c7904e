"""CSV and JSON input/output.

Internal time unit is the day.  Volatility CSVs have the header
``timestamp,sigma`` where ``timestamp`` is an ISO-8601 date/datetime or a
number (days, or years when loaded with ``unit="per_year"``).
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path

import numpy as np

from .errors import DataError
from .scaling import ScalingReport, SeriesSample, SPACING_RTOL

__all__ = [
    "Dataset",
    "load_volatility_csv",
    "write_series_csv",
    "read_series_csv",
    "write_scaling_report",
    "read_scaling_report",
    "write_json",
    "read_json",
    "SCHEMA_VERSION",
]

SCHEMA_VERSION = 1
DAYS_PER_YEAR = 365.25
UNITS = ("per_day", "per_year")


@dataclass(frozen=True)
class Dataset:
    name: str
    series: SeriesSample
    source_path: str
    delta: float
    unit: str = "per_day"


def _parse_time(text):
    try:
        return float(text), False
    except ValueError:
        pass
    dt = datetime.fromisoformat(text.replace("Z", "+00:00"))
    return dt, True


def load_volatility_csv(path, unit="per_day", name=None):
    """Read and validate a ``timestamp,sigma`` file.

    Raises :class:`DataError` naming 1-based data rows (the header is not
    counted) for malformed values, non-positive volatility, non-monotone
    timestamps or non-uniform spacing.
    """
    if unit not in UNITS:
        raise DataError(f"unit must be one of {UNITS}, got {unit!r}")
    path = Path(path)
    raw = path.read_bytes()
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise DataError(f"{path}: not valid UTF-8 ({exc.reason})") from None
    try:
        rows = list(csv.reader(io.StringIO(text)))
    except csv.Error as exc:
        raise DataError(f"{path}: unreadable CSV ({exc})") from None
    if not rows:
        raise DataError(f"{path}: empty file")
    header = [h.strip().lower() for h in rows[0]]
    missing = [c for c in ("timestamp", "sigma") if c not in header]
    if missing:
        raise DataError(f"{path}: missing column(s) {missing}; header is {rows[0]}")
    it, isig = header.index("timestamp"), header.index("sigma")

    times, sigmas, kinds = [], [], set()
    bad_value, bad_sigma = [], []
    for row_no, row in enumerate(rows[1:], start=1):
        if not row or all(not c.strip() for c in row):
            bad_value.append(row_no)
            continue
        try:
            t, is_date = _parse_time(row[it].strip())
            s = float(row[isig])
        except (ValueError, IndexError, TypeError, OverflowError):
            bad_value.append(row_no)
            continue
        if not is_date and not math.isfinite(t):
            bad_value.append(row_no)
            continue
        kinds.add((is_date, getattr(t, "tzinfo", None) is not None))
        if not (math.isfinite(s) and s > 0):
            bad_sigma.append(row_no)
        times.append(t)
        sigmas.append(s)
    if bad_value:
        raise DataError(f"{path}: unparseable rows {bad_value}", rows=bad_value)
    if bad_sigma:
        raise DataError(f"{path}: sigma must be positive and finite at rows {bad_sigma}",
                        rows=bad_sigma)
    if len(kinds) > 1:
        raise DataError(f"{path}: timestamps mix numbers, naive and aware datetimes")
    if len(times) < 2:
        raise DataError(f"{path}: need at least 2 data rows, got {len(times)}")

    if next(iter(kinds))[0]:
        days = np.array([(t - times[0]).total_seconds() / 86400.0 for t in times])
    else:
        days = np.array(times, dtype=float)
        if unit == "per_year":
            days = days * DAYS_PER_YEAR
    if not np.all(np.isfinite(days)):
        raise DataError(f"{path}: timestamps overflow")

    steps = np.diff(days)
    back = np.flatnonzero(steps <= 0)
    if back.size:
        bad = [int(i) + 2 for i in back]
        raise DataError(f"{path}: timestamps not strictly increasing at rows {bad}", rows=bad)
    med = float(np.median(steps))
    off = np.flatnonzero(np.abs(steps - med) > SPACING_RTOL * med)
    if off.size:
        bad = [int(i) + 2 for i in off]
        raise DataError(f"{path}: non-uniform spacing at rows {bad} (median step {med:g} days)",
                        rows=bad)
    series = SeriesSample(days, np.array(sigmas))
    return Dataset(name or path.stem, series, str(path), med, unit)


def _fmt(x):
    return format(float(x), ".17g")


def write_series_csv(path, columns):
    """Write ``{name: values}`` columns with 17 significant digits."""
    names = list(columns)
    cols = [np.asarray(columns[n]) for n in names]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(names)
        for row in zip(*cols):
            w.writerow([_fmt(v) for v in row])
    return Path(path)


def read_series_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    names = rows[0]
    data = np.array([[float(v) for v in r] for r in rows[1:]], dtype=float).reshape(-1, len(names))
    return {n: data[:, i] for i, n in enumerate(names)}


def write_json(path, obj):
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    return Path(path)


def read_json(path):
    return json.loads(Path(path).read_text())


def write_scaling_report(report, path):
    """JSON report plus ``<stem>.structure_raw.csv`` and ``<stem>.structure_R.csv``.

    Returns the list of written paths.
    """
    if not str(path):
        raise OSError("empty output path")
    path = Path(path)
    doc = {"schema_version": SCHEMA_VERSION, **report.to_dict()}
    written = [write_json(path, doc)]
    for key, sf in (("structure_raw", report.structure_raw), ("structure_R", report.structure_R)):
        written.append(write_series_csv(path.with_name(f"{path.stem}.{key}.csv"),
                                        {"lag": sf.lags, "value": sf.values}))
    return written


def read_scaling_report(path):
    doc = read_json(path)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise DataError(f"{path}: unsupported schema_version {doc.get('schema_version')!r}")
    return ScalingReport.from_dict(doc)
