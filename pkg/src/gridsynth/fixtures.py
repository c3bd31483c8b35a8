"""Bundled synthetic fixtures: small cases, climate, and profile generators.

Everything here is deterministic for a fixed seed and sized for desk-scale
runs: a 3-bus teaching case, a 10-bus pipeline case, a congested 3-bus day
for rating-mode comparisons, and a 225-bus Texas-footprint network for
reduction studies.
"""

from __future__ import annotations

from datetime import date, datetime

import numpy as np

from .climate import ClimateSeries
from .genparams import default_params
from .loads import ZonalLoadSeries
from .model import Bus, Generator, GeneratorCostSpec, GridCase, Line
from .profiles import ProfileSet, day_periods, hour_periods
from .reduction import GeoPoint, distance_matrix


def _gen(gen_id: int, bus: int, fuel: str, p_max: float, p_min: float,
         q_max: float = 0.0, q_min: float = 0.0) -> Generator:
    params = default_params(fuel, p_max)
    return Generator(id=gen_id, bus=bus, fuel=fuel, p_max=p_max, p_min=p_min,
                     q_max=q_max, q_min=q_min, cost=params.cost,
                     ramp_rate=params.ramp_rate, min_on=params.min_on,
                     min_off=params.min_off)


def three_bus_case() -> GridCase:
    """Minimal connected case: two lines, one thermal unit per end, wind."""
    buses = (
        Bus(1, 29.76, -95.36, "Coast", 345.0),
        Bus(2, 30.27, -97.74, "South Central", 345.0),
        Bus(3, 32.78, -96.80, "North Central", 345.0),
    )
    lines = (
        Line(1, 1, 2, 0.06, "Kiwi", 235.0, 345.0, 400.0),
        Line(2, 2, 3, 0.08, "Bobolink", 295.0, 345.0, 350.0),
    )
    generators = (
        _gen(1, 1, "natural_gas", 300.0, 60.0, 150.0, -50.0),
        _gen(2, 3, "coal", 250.0, 80.0, 120.0, -40.0),
        _gen(3, 2, "wind", 120.0, 0.0),
    )
    return GridCase(buses=buses, lines=lines, generators=generators)


def ten_bus_case() -> GridCase:
    """A meshed 10-bus, 3-zone case with a full fuel mix."""
    buses = (
        Bus(1, 33.6, -101.8, "West", 345.0),
        Bus(2, 32.9, -100.9, "West", 345.0),
        Bus(3, 32.4, -99.7, "West", 345.0),
        Bus(4, 32.8, -96.8, "North", 345.0),
        Bus(5, 31.5, -97.2, "North", 345.0),
        Bus(6, 30.3, -97.7, "South", 345.0),
        Bus(7, 29.8, -95.4, "South", 345.0),
        Bus(8, 29.4, -98.5, "South", 345.0),
        Bus(9, 31.1, -99.3, "West", 345.0),
        Bus(10, 30.6, -96.3, "South", 345.0),
    )
    lines = (
        Line(1, 1, 2, 0.035, "Kiwi", 120.0, 345.0, 500.0),
        Line(2, 2, 3, 0.040, "Kiwi", 130.0, 345.0, 500.0),
        Line(3, 3, 9, 0.035, "Bobolink", 110.0, 345.0, 450.0),
        Line(4, 9, 5, 0.055, "Bobolink", 200.0, 345.0, 450.0),
        Line(5, 3, 4, 0.085, "Kiwi", 290.0, 345.0, 520.0),
        Line(6, 4, 5, 0.045, "Finch", 140.0, 345.0, 380.0),
        Line(7, 5, 6, 0.040, "Finch", 135.0, 345.0, 380.0),
        Line(8, 6, 7, 0.070, "Kiwi", 240.0, 345.0, 500.0),
        Line(9, 6, 8, 0.050, "Bobolink", 160.0, 345.0, 420.0),
        Line(10, 7, 10, 0.035, "Finch", 110.0, 345.0, 380.0),
        Line(11, 10, 4, 0.095, "Bobolink", 320.0, 345.0, 420.0),
        Line(12, 8, 9, 0.075, "Finch", 260.0, 345.0, 380.0),
    )
    generators = (
        _gen(1, 4, "coal", 420.0, 140.0, 200.0, -70.0),
        _gen(2, 7, "natural_gas", 350.0, 70.0, 170.0, -60.0),
        _gen(3, 6, "natural_gas", 220.0, 40.0, 100.0, -35.0),
        _gen(4, 9, "hydro", 60.0, 0.0, 25.0, 0.0),
        _gen(5, 1, "wind", 180.0, 0.0, 80.0, 0.0),
        _gen(6, 2, "wind", 120.0, 0.0, 55.0, 0.0),
        _gen(7, 8, "solar", 90.0, 0.0, 40.0, 0.0),
    )
    return GridCase(buses=buses, lines=lines, generators=generators)


def synthetic_climate(case: GridCase, start: datetime = datetime(2019, 1, 3),
                      hours: int = 24, seed: int = 7) -> ClimateSeries:
    """Plausible diurnal weather per bus: temperature, radiation, wind."""
    rng = np.random.default_rng(seed)
    buses = tuple(sorted(b.id for b in case.buses))
    by_id = {b.id: b for b in case.buses}
    h = np.arange(hours)
    hour_of_day = (start.hour + h) % 24
    shape = (len(buses), hours)
    temp = np.zeros(shape)
    shortwave = np.zeros(shape)
    longwave = np.zeros(shape)
    wind_u = np.zeros(shape)
    wind_v = np.zeros(shape)
    for i, bid in enumerate(buses):
        b = by_id[bid]
        base_temp = 24.0 - 0.55 * (b.latitude - 26.0) + rng.normal(0.0, 0.8)
        temp[i] = (base_temp + 7.5 * np.sin(2 * np.pi * (hour_of_day - 9) / 24.0)
                   + rng.normal(0.0, 0.4, hours))
        sun = np.sin(np.pi * (hour_of_day - 6.0) / 12.0)
        shortwave[i] = np.clip(820.0 * np.where((hour_of_day >= 6)
                                                & (hour_of_day <= 18), sun, 0.0)
                               + rng.normal(0.0, 12.0, hours), 0.0, None)
        longwave[i] = np.clip(310.0 + 1.6 * temp[i]
                              + rng.normal(0.0, 6.0, hours), 0.0, None)
        breeze = 3.2 + 0.9 * np.sin(2 * np.pi * (hour_of_day - 2 - i % 5) / 24.0)
        wind_u[i] = breeze + rng.normal(0.0, 0.5, hours)
        wind_v[i] = 1.8 + 0.7 * np.cos(2 * np.pi * (hour_of_day - 5) / 24.0) \
            + rng.normal(0.0, 0.5, hours)
    return ClimateSeries(start=start, buses=buses, temp=temp,
                         shortwave=shortwave, longwave=longwave,
                         wind_u=wind_u, wind_v=wind_v)


def zonal_loads(case: GridCase, start: datetime = datetime(2019, 1, 3),
                hours: int = 24, seed: int = 11,
                peak_fraction: float = 0.55) -> ZonalLoadSeries:
    """Single-peak diurnal zonal totals sized against the case's capacity."""
    rng = np.random.default_rng(seed)
    capacity = sum(g.p_max for g in case.generators if not g.is_renewable)
    zones = case.zones
    weights = np.array([sum(1 for b in case.buses if b.zone == z) for z in zones],
                       dtype=float)
    weights /= weights.sum()
    h = np.arange(hours)
    hour_of_day = (start.hour + h) % 24
    shape = 0.78 + 0.22 * np.sin(2 * np.pi * (hour_of_day - 11.0) / 24.0)
    totals = {}
    for z, w in zip(zones, weights):
        noise = rng.normal(0.0, 0.01, hours)
        totals[z] = np.clip(peak_fraction * capacity * w * (shape + noise),
                            0.0, None)
    return ZonalLoadSeries(periods=hour_periods(start, hours), totals=totals)


def congested_three_bus_day() -> tuple[GridCase, ProfileSet, ProfileSet,
                                       ProfileSet, ProfileSet, date]:
    """A radial day where hourly ratings strictly beat the daily rating.

    Cheap generation sits behind the rated line; the daily (worst-hour)
    rating caps imports all day while the hourly rating opens up off-peak
    hours, so the hourly-mode commitment is strictly cheaper.
    """
    buses = (
        Bus(1, 33.0, -101.0, "West", 345.0),
        Bus(2, 31.5, -99.0, "Central", 345.0),
        Bus(3, 29.8, -95.4, "Coast", 345.0),
    )
    lines = (
        Line(1, 1, 2, 0.05, "Kiwi", 180.0, 345.0, 300.0),
        Line(2, 2, 3, 0.05, "Kiwi", 180.0, 345.0, 300.0),
    )
    cheap = Generator(1, 1, "natural_gas", 200.0, 0.0, 90.0, -30.0,
                      GeneratorCostSpec(c1=12.0), ramp_rate=100.0,
                      min_on=1.0, min_off=1.0)
    dear = Generator(2, 3, "natural_gas", 200.0, 0.0, 90.0, -30.0,
                     GeneratorCostSpec(c1=45.0), ramp_rate=100.0,
                     min_on=1.0, min_off=1.0)
    wind = _gen(3, 1, "wind", 100.0, 0.0)
    case = GridCase(buses=buses, lines=lines, generators=(cheap, dear, wind))

    day = date(2019, 4, 10)
    start = datetime(2019, 4, 10)
    periods = hour_periods(start, 24)
    load = np.full(24, 150.0)
    load[7:21] = 170.0
    loads = ProfileSet(periods=periods, values={3: load})
    # windy night exceeds the daily import cap, so the daily mode curtails
    avail = np.concatenate([np.full(6, 80.0), np.full(12, 10.0), np.full(6, 50.0)])
    availability = ProfileSet(periods=periods, values={3: avail})
    hourly = np.full(24, 120.0)
    hourly[10:16] = 60.0  # hot, calm midday hours set the daily rating
    ratings_hourly = ProfileSet(periods=periods,
                                values={1: hourly, 2: np.full(24, 300.0)})
    ratings_daily = ProfileSet(periods=day_periods(start, 1),
                               values={1: np.array([60.0]),
                                       2: np.array([300.0])})
    return case, loads, availability, ratings_daily, ratings_hourly, day


_TEXAS_ANCHORS = (
    ("Coast", 29.76, -95.36, 38),
    ("North Central", 32.78, -96.80, 38),
    ("South Central", 30.27, -97.74, 26),
    ("South", 28.50, -98.40, 24),
    ("East", 32.35, -95.30, 20),
    ("Far West", 31.80, -104.80, 18),
    ("West", 32.45, -100.40, 22),
    ("North", 34.20, -101.80, 19),
)


def texas_footprint_225(seed: int = 1) -> GridCase:
    """A 225-bus connected network scattered over a Texas-like footprint."""
    rng = np.random.default_rng(seed)
    buses: list[Bus] = []
    bid = 0
    for zone, lat, lon, count in _TEXAS_ANCHORS:
        for _ in range(count):
            bid += 1
            buses.append(Bus(bid, float(np.clip(lat + rng.normal(0, 0.55), 25.9, 36.3)),
                             float(np.clip(lon + rng.normal(0, 0.65), -106.5, -93.6)),
                             zone, 345.0))
    while bid < 225:  # remote buses away from the metro clusters
        bid += 1
        buses.append(Bus(bid, float(rng.uniform(26.5, 35.8)),
                         float(rng.uniform(-105.8, -94.2)),
                         "West", 345.0))

    points = [GeoPoint(b.latitude, b.longitude) for b in buses]
    dist = distance_matrix(points)
    n = len(buses)
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    best = dist[0].copy()
    parent = np.zeros(n, dtype=int)
    edges: list[tuple[int, int]] = []
    for _ in range(n - 1):
        best_masked = np.where(in_tree, np.inf, best)
        j = int(np.argmin(best_masked))
        edges.append((int(parent[j]), j))
        in_tree[j] = True
        closer = dist[j] < best
        best[closer] = dist[j][closer]
        parent[closer] = j
    # extra meshing: every third bus ties to its second-nearest neighbour
    have = {(min(a, b), max(a, b)) for a, b in edges}
    for i in range(0, n, 3):
        order = np.argsort(dist[i])
        for j in order[1:4]:
            key = (min(i, int(j)), max(i, int(j)))
            if key not in have:
                have.add(key)
                edges.append((i, int(j)))
                break

    conductor_cycle = ("Kiwi", "Bobolink", "Finch")
    lines = []
    for k, (a, b) in enumerate(edges, start=1):
        length = max(float(dist[a][b]), 5.0)
        lines.append(Line(k, buses[a].id, buses[b].id,
                          reactance=max(3.1e-4 * length, 0.004),
                          conductor=conductor_cycle[k % 3],
                          length=length, voltage=345.0,
                          static_rating=float(rng.choice([600.0, 800.0, 1000.0]))))

    fuels = ("natural_gas", "wind", "coal", "solar", "natural_gas", "hydro")
    generators = []
    gen_buses = rng.choice(n, size=60, replace=False)
    for g, bus_idx in enumerate(sorted(int(x) for x in gen_buses), start=1):
        fuel = fuels[g % len(fuels)]
        p_max = float(rng.uniform(80.0, 900.0) if fuel != "hydro"
                      else rng.uniform(15.0, 60.0))
        p_min = 0.0 if fuel in ("wind", "solar") else 0.3 * p_max
        generators.append(_gen(g, buses[bus_idx].id, fuel, round(p_max, 1),
                               round(p_min, 1)))
    return GridCase(buses=tuple(buses), lines=tuple(lines),
                    generators=tuple(generators))
