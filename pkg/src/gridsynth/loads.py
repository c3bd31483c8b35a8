"""Disaggregate zonal hourly load totals to buses with exact conservation."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .model import GridCase
from .profiles import ProfileError, ProfileSet


@dataclass(frozen=True, eq=False)
class ZonalLoadSeries:
    """Hourly MW totals per weather zone over a common horizon."""

    periods: tuple[str, ...]
    totals: dict[str, np.ndarray]

    def __post_init__(self) -> None:
        for zone, series in self.totals.items():
            if len(series) != len(self.periods):
                raise ProfileError(f"zone {zone}: horizon mismatch")
            if np.any(np.asarray(series) < 0):
                raise ProfileError(f"zone {zone}: negative load total")

    @property
    def zones(self) -> tuple[str, ...]:
        return tuple(sorted(self.totals))


@dataclass(frozen=True)
class ParticipationFactors:
    """Per-bus load shares, grouped by zone; each zone's shares sum to one."""

    weights: dict[str, dict[int, float]]

    def __post_init__(self) -> None:
        for zone, shares in self.weights.items():
            if any(w < 0 for w in shares.values()):
                raise ProfileError(f"zone {zone}: negative participation weight")
            total = sum(shares.values())
            if abs(total - 1.0) > 1e-12:
                raise ProfileError(
                    f"zone {zone}: participation weights sum to {total!r}, not 1"
                )

    def weight(self, zone: str, bus: int) -> float:
        try:
            return self.weights[zone][bus]
        except KeyError:
            raise ProfileError(f"bus {bus} not covered in zone {zone}") from None


def uniform_factors(case: GridCase) -> ParticipationFactors:
    """Equal shares across each zone's buses."""
    by_zone: dict[str, list[int]] = {}
    for b in case.buses:
        by_zone.setdefault(b.zone, []).append(b.id)
    weights = {}
    for zone, buses in by_zone.items():
        if not buses:
            raise ProfileError(f"zone {zone} has no buses")
        weights[zone] = {b: 1.0 / len(buses) for b in sorted(buses)}
    return ParticipationFactors(weights=weights)


def disaggregate(zonal: ZonalLoadSeries, factors: ParticipationFactors) -> ProfileSet:
    """Nodal load: load(bus, h) = weight(bus) * zonal(zone(bus), h)."""
    values: dict[int, np.ndarray] = {}
    for zone in zonal.zones:
        if zone not in factors.weights:
            raise ProfileError(f"no participation factors for zone {zone}")
        series = np.asarray(zonal.totals[zone], dtype=float)
        for bus, w in factors.weights[zone].items():
            if bus in values:
                raise ProfileError(f"bus {bus} appears in multiple zones")
            values[bus] = w * series
    return ProfileSet(periods=zonal.periods, values=values)


ZONAL_HEADER = ["zone", "timestamp", "load_mw"]
FACTORS_HEADER = ["bus_id", "weight"]


def read_zonal_csv(path: str | Path) -> ZonalLoadSeries:
    path = Path(path)
    if not path.is_file():
        raise ProfileError(f"missing zonal load file: {path}")
    per_zone: dict[str, dict[str, float]] = {}
    order: list[str] = []
    seen: set[str] = set()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ZONAL_HEADER:
            raise ProfileError(f"{path}: bad header, expected {ZONAL_HEADER}")
        for row in reader:
            if not any(v.strip() for v in row.values()):
                continue
            try:
                zone = row["zone"].strip()
                period = row["timestamp"].strip()
                value = float(row["load_mw"])
            except (KeyError, ValueError) as exc:
                raise ProfileError(f"{path}: bad record {row}") from exc
            if period not in seen:
                seen.add(period)
                order.append(period)
            per_zone.setdefault(zone, {})[period] = value
    totals = {}
    for zone, by_period in per_zone.items():
        missing = [p for p in order if p not in by_period]
        if missing:
            raise ProfileError(f"{path}: zone {zone} missing period {missing[0]}")
        totals[zone] = np.array([by_period[p] for p in order])
    return ZonalLoadSeries(periods=tuple(order), totals=totals)


def write_zonal_csv(zonal: ZonalLoadSeries, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(ZONAL_HEADER)
        for zone in zonal.zones:
            for p, period in enumerate(zonal.periods):
                w.writerow([zone, period, repr(float(zonal.totals[zone][p]))])


def read_factors_csv(path: str | Path, case: GridCase) -> ParticipationFactors:
    """Read per-bus weights and group them by the case's zone assignment."""
    path = Path(path)
    if not path.is_file():
        raise ProfileError(f"missing factors file: {path}")
    zone_of = {b.id: b.zone for b in case.buses}
    weights: dict[str, dict[int, float]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != FACTORS_HEADER:
            raise ProfileError(f"{path}: bad header, expected {FACTORS_HEADER}")
        for row in reader:
            if not any(v.strip() for v in row.values()):
                continue
            try:
                bus = int(row["bus_id"])
                weight = float(row["weight"])
            except (KeyError, ValueError) as exc:
                raise ProfileError(f"{path}: bad record {row}") from exc
            if bus not in zone_of:
                raise ProfileError(f"{path}: bus {bus} not in case")
            weights.setdefault(zone_of[bus], {})[bus] = weight
    return ParticipationFactors(weights=weights)
