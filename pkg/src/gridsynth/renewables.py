"""Climate-dependent wind and solar available-power models.

Wind farms produce k_h * C * v^3 between cut-in and rated speed (clipped at
capacity), exactly capacity between rated and cut-out, and nothing outside
that band.  The hour-of-day coefficient k absorbs air density, swept area and
turbine efficiency; it is periodic over 24 hours and its hour-to-hour step is
bounded so the calibration stays well-posed.

Solar arrays scale their standard-test-condition output by effective
radiation and a linear cell-temperature derating.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .climate import ClimateSeries, WindProfileParams, composite_wind, log_wind
from .model import GridCase
from .profiles import ProfileError, ProfileSet, hour_periods

log = logging.getLogger(__name__)

K_STEP_LIMIT = 1e-4  # max |k_h - k_{h-1}| over consecutive hours, cyclic
CAPACITY_SHIFT_LIMIT = 50.0  # MW, max |C - C0| during calibration


def default_hourly_coeff(rated: float) -> np.ndarray:
    """Constant coefficient that reaches exactly capacity at rated speed."""
    return np.full(24, 1.0 / rated**3)


@dataclass(frozen=True, eq=False)
class WindFarmSpec:
    """Wind farm parameters driving the cubic power curve."""

    gen_id: int
    capacity: float  # MW, C
    initial_capacity: float = -1.0  # MW, C0 (calibration anchor); -1: capacity
    hub_height: float = 80.0  # m
    cut_in: float = 3.5  # m/s
    rated: float = 13.0  # m/s
    cut_out: float = 25.0  # m/s
    air_density: float = 1.225  # kg/m3, informative (absorbed into k)
    turbine_efficiency: float = 0.45  # informative (absorbed into k)
    rotor_diameter: float = 100.0  # m, informative (absorbed into k)
    hourly_coeff: np.ndarray = field(default=None)  # 24 values, hour-of-day

    def __post_init__(self) -> None:
        if not 0.0 < self.cut_in < self.rated < self.cut_out:
            raise ValueError(
                f"farm {self.gen_id}: need 0 < cut_in < rated < cut_out, got "
                f"{self.cut_in}, {self.rated}, {self.cut_out}"
            )
        if self.capacity < 0:
            raise ValueError(f"farm {self.gen_id}: capacity must be >= 0")
        if self.initial_capacity == -1.0:
            object.__setattr__(self, "initial_capacity", self.capacity)
        k = self.hourly_coeff
        if k is None:
            k = default_hourly_coeff(self.rated)
        k = np.asarray(k, dtype=float)
        if k.shape != (24,):
            raise ValueError(f"farm {self.gen_id}: hourly_coeff needs 24 values")
        if np.any(k < 0):
            raise ValueError(f"farm {self.gen_id}: hourly_coeff must be >= 0")
        steps = np.abs(k - np.roll(k, 1))
        if np.any(steps > K_STEP_LIMIT + 1e-12):
            raise ValueError(
                f"farm {self.gen_id}: hourly_coeff steps exceed {K_STEP_LIMIT}"
            )
        object.__setattr__(self, "hourly_coeff", k)


def wind_power(spec: WindFarmSpec, v_hub, hour_of_day):
    """Available MW for hub-height speed(s) and hour(s) of day.

    Vectorized over matching-length arrays; scalars return a float.
    """
    v = np.asarray(v_hub, dtype=float)
    h = np.asarray(hour_of_day, dtype=int)
    k = spec.hourly_coeff[h % 24]
    cubic = np.minimum(k * spec.capacity * v**3, spec.capacity)
    out = np.select(
        [(v < spec.cut_in) | (v >= spec.cut_out), v < spec.rated],
        [0.0, cubic],
        default=spec.capacity,
    )
    return float(out) if np.isscalar(v_hub) else out


@dataclass(frozen=True)
class PvArraySpec:
    """PV array parameters for the maximum-power-point model."""

    gen_id: int
    p_mp0: float  # MW at standard testing conditions
    gamma: float = -0.004  # 1/degC power temperature coefficient
    e0: float = 1000.0  # W/m2 STC radiation
    t0: float = 25.0  # degC STC cell temperature
    longwave_weight: float = 0.0  # share of longwave in effective radiation
    headroom: float = 1.1  # cap on output as a multiple of p_mp0

    def __post_init__(self) -> None:
        if self.p_mp0 <= 0:
            raise ValueError(f"array {self.gen_id}: p_mp0 must be > 0")
        if self.e0 <= 0:
            raise ValueError(f"array {self.gen_id}: e0 must be > 0")
        if not -0.01 <= self.gamma <= 0.0:
            raise ValueError(f"array {self.gen_id}: gamma {self.gamma} outside [-0.01, 0]")
        if not 0.0 <= self.longwave_weight <= 1.0:
            raise ValueError(f"array {self.gen_id}: longwave_weight outside [0, 1]")


def solar_power(spec: PvArraySpec, shortwave, longwave, temp_air):
    """Available MW given radiation (W/m2) and ambient air temperature (degC).

    Cell temperature is taken as the air temperature; output above p_mp0 is
    allowed up to the headroom multiple and logged when the cap engages.
    """
    e_eff = np.asarray(shortwave, dtype=float) + spec.longwave_weight * np.asarray(longwave, dtype=float)
    if np.any(e_eff < 0):
        raise ValueError("radiation must be >= 0")
    raw = (e_eff / spec.e0) * spec.p_mp0 * (1.0 + spec.gamma * (np.asarray(temp_air, dtype=float) - spec.t0))
    cap = spec.headroom * spec.p_mp0
    if np.any(raw > cap):
        log.warning("array %d: output clipped at %.3f x STC rating", spec.gen_id,
                    spec.headroom)
    out = np.clip(raw, 0.0, cap)
    return float(out) if np.isscalar(shortwave) else out


def generate_profiles(case: GridCase, climate: ClimateSeries,
                      wind_specs: dict[int, WindFarmSpec],
                      solar_specs: dict[int, PvArraySpec],
                      wind_params: WindProfileParams = WindProfileParams(),
                      source_height: float = 10.0) -> ProfileSet:
    """Hourly available power for every wind and solar unit in the case."""
    hours_of_day = np.array([t.hour for t in climate.timestamps()])
    values: dict[int, np.ndarray] = {}
    for g in case.generators:
        if g.fuel == "wind":
            spec = wind_specs.get(g.id)
            if spec is None:
                raise ProfileError(f"wind generator {g.id} has no farm spec")
            i = climate.bus_index(g.bus)
            v_source = composite_wind(climate.wind_u[i], climate.wind_v[i])
            v_hub = log_wind(v_source, source_height, spec.hub_height, wind_params)
            values[g.id] = wind_power(spec, v_hub, hours_of_day)
        elif g.fuel == "solar":
            spec = solar_specs.get(g.id)
            if spec is None:
                raise ProfileError(f"solar generator {g.id} has no array spec")
            i = climate.bus_index(g.bus)
            values[g.id] = solar_power(spec, climate.shortwave[i],
                                       climate.longwave[i], climate.temp[i])
    return ProfileSet(periods=hour_periods(climate.start, climate.hours),
                      values=values)


SPEC_HEADER = (["gen_id", "kind", "capacity_mw", "initial_capacity_mw",
                "hub_height_m", "cut_in", "rated", "cut_out", "pmp0_mw",
                "gamma", "e0_wm2", "t0_c", "longwave_weight"]
               + [f"k{h:02d}" for h in range(24)])


def read_specs_csv(path: str | Path) -> tuple[dict[int, WindFarmSpec], dict[int, PvArraySpec]]:
    """Read mixed wind/solar specs; blank cells fall back to model defaults."""
    path = Path(path)
    if not path.is_file():
        raise ProfileError(f"missing specs file: {path}")
    wind: dict[int, WindFarmSpec] = {}
    solar: dict[int, PvArraySpec] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != SPEC_HEADER:
            raise ProfileError(f"{path}: bad header, expected {SPEC_HEADER}")
        for row in reader:
            if not any(v.strip() for v in row.values()):
                continue
            try:
                gen_id = int(row["gen_id"])
                kind = row["kind"].strip()
                if kind == "wind":
                    kw = {}
                    for key, col in [("capacity", "capacity_mw"),
                                     ("initial_capacity", "initial_capacity_mw"),
                                     ("hub_height", "hub_height_m"),
                                     ("cut_in", "cut_in"), ("rated", "rated"),
                                     ("cut_out", "cut_out")]:
                        if row[col].strip():
                            kw[key] = float(row[col])
                    ks = [row[f"k{h:02d}"].strip() for h in range(24)]
                    if any(ks):
                        if not all(ks):
                            raise ProfileError(
                                f"{path}: farm {gen_id} has a partial k profile"
                            )
                        kw["hourly_coeff"] = np.array([float(v) for v in ks])
                    wind[gen_id] = WindFarmSpec(gen_id=gen_id, **kw)
                elif kind == "solar":
                    kw = {}
                    for key, col in [("p_mp0", "pmp0_mw"), ("gamma", "gamma"),
                                     ("e0", "e0_wm2"), ("t0", "t0_c"),
                                     ("longwave_weight", "longwave_weight")]:
                        if row[col].strip():
                            kw[key] = float(row[col])
                    solar[gen_id] = PvArraySpec(gen_id=gen_id, **kw)
                else:
                    raise ProfileError(f"{path}: unknown kind {kind!r}")
            except (KeyError, ValueError) as exc:
                if isinstance(exc, ProfileError):
                    raise
                raise ProfileError(f"{path}: bad record {row}") from exc
    return wind, solar


def write_specs_csv(wind: dict[int, WindFarmSpec], solar: dict[int, PvArraySpec],
                    path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(SPEC_HEADER)
        for gid in sorted(wind):
            s = wind[gid]
            w.writerow([gid, "wind", repr(s.capacity), repr(s.initial_capacity),
                        repr(s.hub_height), repr(s.cut_in), repr(s.rated),
                        repr(s.cut_out), "", "", "", "", ""]
                       + [repr(float(v)) for v in s.hourly_coeff])
        for gid in sorted(solar):
            s = solar[gid]
            w.writerow([gid, "solar", "", "", "", "", "", "", repr(s.p_mp0),
                        repr(s.gamma), repr(s.e0), repr(s.t0),
                        repr(s.longwave_weight)] + [""] * 24)


def with_calibration(spec: WindFarmSpec, hourly_coeff: np.ndarray,
                     capacity: float) -> WindFarmSpec:
    return replace(spec, hourly_coeff=np.asarray(hourly_coeff, dtype=float),
                   capacity=float(capacity))
