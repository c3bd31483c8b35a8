"""Time-keyed per-asset value series shared by the profile generators.

A ProfileSet maps an asset id (generator, bus, or line) to one value per
period; periods are ISO-8601 hour stamps or calendar dates, common to all
assets in the set.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from datetime import datetime, timedelta
from pathlib import Path

import numpy as np

from .climate import format_timestamp


class ProfileError(ValueError):
    """A profile is missing, inconsistent, or malformed."""


@dataclass(frozen=True, eq=False)
class ProfileSet:
    """Values per (asset, period); every asset covers every period."""

    periods: tuple[str, ...]
    values: dict[int, np.ndarray]

    def __post_init__(self) -> None:
        n = len(self.periods)
        for asset, series in self.values.items():
            if len(series) != n:
                raise ProfileError(
                    f"asset {asset}: {len(series)} values for {n} periods"
                )

    @property
    def assets(self) -> tuple[int, ...]:
        return tuple(sorted(self.values))

    def series(self, asset: int) -> np.ndarray:
        try:
            return self.values[asset]
        except KeyError:
            raise ProfileError(f"no profile for asset {asset}") from None

    def get(self, asset: int, period_index: int) -> float:
        return float(self.series(asset)[period_index])


def hour_periods(start: datetime, hours: int) -> tuple[str, ...]:
    return tuple(format_timestamp(start + timedelta(hours=h)) for h in range(hours))


def day_periods(start: datetime, days: int) -> tuple[str, ...]:
    return tuple((start + timedelta(days=d)).strftime("%Y-%m-%d") for d in range(days))


def write_profile_csv(ps: ProfileSet, path: str | Path, id_column: str,
                      value_column: str, period_column: str = "timestamp") -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow([id_column, period_column, value_column])
        for asset in ps.assets:
            series = ps.values[asset]
            for p, period in enumerate(ps.periods):
                w.writerow([asset, period, repr(float(series[p]))])


def read_profile_csv(path: str | Path, id_column: str, value_column: str,
                     period_column: str = "timestamp") -> ProfileSet:
    path = Path(path)
    if not path.is_file():
        raise ProfileError(f"missing profile file: {path}")
    per_asset: dict[int, dict[str, float]] = {}
    order: list[str] = []
    seen_periods: set[str] = set()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        expected = [id_column, period_column, value_column]
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != expected:
            raise ProfileError(f"{path}: bad header, expected {expected}")
        for row in reader:
            if not any(v.strip() for v in row.values()):
                continue
            try:
                asset = int(row[id_column])
                period = row[period_column].strip()
                value = float(row[value_column])
            except (KeyError, ValueError) as exc:
                raise ProfileError(f"{path}: bad record {row}") from exc
            if period not in seen_periods:
                seen_periods.add(period)
                order.append(period)
            if period in per_asset.setdefault(asset, {}):
                raise ProfileError(f"{path}: duplicate ({asset}, {period})")
            per_asset[asset][period] = value
    values = {}
    for asset, by_period in per_asset.items():
        missing = [p for p in order if p not in by_period]
        if missing:
            raise ProfileError(f"{path}: asset {asset} missing period {missing[0]}")
        values[asset] = np.array([by_period[p] for p in order])
    return ProfileSet(periods=tuple(order), values=values)
