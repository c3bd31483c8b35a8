"""Hourly per-bus climate records and derived wind quantities.

A ClimateSeries is dense: every bus carries a value for every hour of the
horizon, and ingestion rejects gaps (optionally filling runs of up to three
missing hours by linear interpolation when asked to).
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from datetime import date, datetime, timedelta
from pathlib import Path

import numpy as np

log = logging.getLogger(__name__)

SIN_45 = math.sin(math.radians(45.0))


class ClimateError(ValueError):
    """Climate data violates the completeness or format contract."""


@dataclass(frozen=True)
class WindProfileParams:
    """Log wind profile surface parameters."""

    roughness_length: float = 0.3  # m
    displacement: float = 6.0  # m

    def __post_init__(self) -> None:
        if self.roughness_length <= 0:
            raise ValueError("roughness_length must be > 0")
        if self.displacement < 0:
            raise ValueError("displacement must be >= 0")


@dataclass(frozen=True)
class ClimateRecord:
    """One bus-hour of weather."""

    bus: int
    timestamp: datetime  # UTC, on the hour
    temp_2m: float  # degC
    shortwave: float  # W/m2
    longwave: float  # W/m2
    wind_u: float  # m/s zonal
    wind_v: float  # m/s meridional


def log_wind(u1: float, z1: float, z2: float,
             params: WindProfileParams = WindProfileParams()):
    """Extrapolate wind speed from height z1 to z2 with the log wind profile."""
    d, z0 = params.displacement, params.roughness_length
    if z1 <= d or z2 <= d:
        raise ValueError(f"heights must exceed the displacement plane d={d}")
    denom = math.log((z1 - d) / z0)
    if denom == 0.0:
        raise ValueError("source height z1 coincides with the zero-wind level")
    return u1 * (math.log((z2 - d) / z0) / denom)


def composite_wind(wind_u, wind_v):
    """Composite speed from zonal and meridional components."""
    return np.hypot(wind_u, wind_v)


def perpendicular_wind(v_wind):
    """Component of the wind perpendicular to a conductor at the 45 deg assumption."""
    if np.any(np.asarray(v_wind) < 0):
        raise ValueError("wind speed must be >= 0")
    return v_wind * SIN_45


@dataclass(frozen=True, eq=False)
class ClimateSeries:
    """Dense (bus, hour) grid of climate fields over a contiguous horizon."""

    start: datetime
    buses: tuple[int, ...]
    temp: np.ndarray  # (nbus, hours) degC
    shortwave: np.ndarray  # W/m2
    longwave: np.ndarray  # W/m2
    wind_u: np.ndarray  # m/s
    wind_v: np.ndarray  # m/s

    @property
    def hours(self) -> int:
        return self.temp.shape[1]

    def timestamps(self) -> list[datetime]:
        return [self.start + timedelta(hours=h) for h in range(self.hours)]

    def bus_index(self, bus: int) -> int:
        try:
            return self.buses.index(bus)
        except ValueError:
            raise ClimateError(f"no climate data for bus {bus}") from None

    def record(self, bus: int, hour: int) -> ClimateRecord:
        i = self.bus_index(bus)
        return ClimateRecord(
            bus=bus,
            timestamp=self.start + timedelta(hours=hour),
            temp_2m=float(self.temp[i, hour]),
            shortwave=float(self.shortwave[i, hour]),
            longwave=float(self.longwave[i, hour]),
            wind_u=float(self.wind_u[i, hour]),
            wind_v=float(self.wind_v[i, hour]),
        )

    def composite_speed(self, bus: int) -> np.ndarray:
        i = self.bus_index(bus)
        return composite_wind(self.wind_u[i], self.wind_v[i])


@dataclass(frozen=True)
class DailyWorstCase:
    """Component-wise worst hour of a day for conductor-rating purposes."""

    temp_c: float  # highest hourly temperature
    radiation_wm2: float  # highest hourly shortwave+longwave sum
    wind_ms: float  # lowest hourly composite wind speed


def worst_case_components(temp: np.ndarray, radiation: np.ndarray,
                          wind: np.ndarray) -> DailyWorstCase:
    return DailyWorstCase(temp_c=float(np.max(temp)),
                          radiation_wm2=float(np.max(radiation)),
                          wind_ms=float(np.min(wind)))


def daily_worst_case(series: ClimateSeries, bus: int, day: date) -> DailyWorstCase:
    """Element-wise extrema over the 24 hourly records of a UTC calendar day."""
    day_start = datetime(day.year, day.month, day.day)
    offset = day_start - series.start
    if offset.total_seconds() % 3600 != 0:
        raise ClimateError("series does not start on an hour boundary")
    h0 = int(offset.total_seconds() // 3600)
    if h0 < 0 or h0 + 24 > series.hours:
        raise ClimateError(f"day {day} not fully covered by the climate series")
    i = series.bus_index(bus)
    sl = slice(h0, h0 + 24)
    return worst_case_components(
        series.temp[i, sl],
        series.shortwave[i, sl] + series.longwave[i, sl],
        composite_wind(series.wind_u[i, sl], series.wind_v[i, sl]),
    )


CLIMATE_HEADER = ["bus_id", "timestamp_iso8601", "temp2m_c", "shortwave_wm2",
                  "longwave_wm2", "wind_u_ms", "wind_v_ms"]

_FIELDS = ("temp", "shortwave", "longwave", "wind_u", "wind_v")


def parse_timestamp(text: str) -> datetime:
    ts = datetime.fromisoformat(text.strip().replace("Z", "+00:00"))
    if ts.tzinfo is not None:
        if ts.utcoffset() != timedelta(0):
            raise ClimateError(f"timestamp {text!r} not in UTC")
        ts = ts.replace(tzinfo=None)
    if ts.minute or ts.second or ts.microsecond:
        raise ClimateError(f"timestamp {text!r} not on an hour boundary")
    return ts


def format_timestamp(ts: datetime) -> str:
    return ts.strftime("%Y-%m-%dT%H:%M:%SZ")


def series_from_records(records: list[ClimateRecord],
                        max_fill_hours: int = 0) -> ClimateSeries:
    """Assemble a dense series; gaps are fatal unless short enough to fill."""
    if not records:
        raise ClimateError("no climate records")
    buses = tuple(sorted({r.bus for r in records}))
    start = min(r.timestamp for r in records)
    end = max(r.timestamp for r in records)
    hours = int((end - start).total_seconds() // 3600) + 1
    shape = (len(buses), hours)
    arrays = {f: np.full(shape, np.nan) for f in _FIELDS}
    bus_pos = {b: i for i, b in enumerate(buses)}
    for r in records:
        if r.shortwave < 0 or r.longwave < 0:
            raise ClimateError(f"negative radiation at bus {r.bus}, {r.timestamp}")
        h = int((r.timestamp - start).total_seconds() // 3600)
        i = bus_pos[r.bus]
        if not np.isnan(arrays["temp"][i, h]):
            raise ClimateError(f"duplicate record for bus {r.bus}, {r.timestamp}")
        arrays["temp"][i, h] = r.temp_2m
        arrays["shortwave"][i, h] = r.shortwave
        arrays["longwave"][i, h] = r.longwave
        arrays["wind_u"][i, h] = r.wind_u
        arrays["wind_v"][i, h] = r.wind_v

    gaps = _gap_runs(np.isnan(arrays["temp"]))
    if gaps:
        too_long = [(buses[i], run) for i, run, _ in gaps if run > max_fill_hours]
        if too_long:
            bus, run = too_long[0]
            raise ClimateError(
                f"bus {bus} missing {run} consecutive hour(s); "
                f"{len(gaps)} gap run(s) total"
            )
        for f in _FIELDS:
            _fill_linear(arrays[f])
        filled = sum(run for _, run, _ in gaps)
        log.info("filled %d missing bus-hour(s) by linear interpolation", filled)

    return ClimateSeries(start=start, buses=buses, **arrays)


def _gap_runs(mask: np.ndarray) -> list[tuple[int, int, int]]:
    """(bus index, run length, start hour) for each run of missing hours."""
    runs = []
    for i in range(mask.shape[0]):
        h = 0
        while h < mask.shape[1]:
            if mask[i, h]:
                start = h
                while h < mask.shape[1] and mask[i, h]:
                    h += 1
                runs.append((i, h - start, start))
            else:
                h += 1
    return runs


def _fill_linear(arr: np.ndarray) -> None:
    for i in range(arr.shape[0]):
        row = arr[i]
        nans = np.isnan(row)
        if not nans.any():
            continue
        idx = np.arange(len(row))
        if nans[0] or nans[-1]:
            raise ClimateError("cannot interpolate a gap at the horizon edge")
        row[nans] = np.interp(idx[nans], idx[~nans], row[~nans])


def read_climate_csv(path: str | Path, fill: str | None = None) -> ClimateSeries:
    """Read the climate CSV; `fill='linear'` interpolates gaps of up to 3 hours."""
    path = Path(path)
    if not path.is_file():
        raise ClimateError(f"missing climate file: {path}")
    records = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != CLIMATE_HEADER:
            raise ClimateError(f"{path}: bad header, expected {CLIMATE_HEADER}")
        for row in reader:
            if not any(v.strip() for v in row.values()):
                continue
            try:
                records.append(ClimateRecord(
                    bus=int(row["bus_id"]),
                    timestamp=parse_timestamp(row["timestamp_iso8601"]),
                    temp_2m=float(row["temp2m_c"]),
                    shortwave=float(row["shortwave_wm2"]),
                    longwave=float(row["longwave_wm2"]),
                    wind_u=float(row["wind_u_ms"]),
                    wind_v=float(row["wind_v_ms"]),
                ))
            except (ValueError, KeyError) as exc:
                if isinstance(exc, ClimateError):
                    raise
                raise ClimateError(f"{path}: bad record {row}") from exc
    return series_from_records(records, max_fill_hours=3 if fill == "linear" else 0)


def write_climate_csv(series: ClimateSeries, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    stamps = [format_timestamp(t) for t in series.timestamps()]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(CLIMATE_HEADER)
        for i, bus in enumerate(series.buses):
            for h, stamp in enumerate(stamps):
                w.writerow([bus, stamp,
                            repr(float(series.temp[i, h])),
                            repr(float(series.shortwave[i, h])),
                            repr(float(series.longwave[i, h])),
                            repr(float(series.wind_u[i, h])),
                            repr(float(series.wind_v[i, h]))])
