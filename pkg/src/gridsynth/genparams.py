"""Default cost and operating parameters per fuel type and unit size.

Coal and gas parameters come from capacity-bucketed survey tables that give
ranges, not point values: rate coefficients use the bucket midpoint, the
no-load bound c0 is interpolated linearly in capacity across its bucket, and
startup/shutdown costs use the $/MW midpoint times capacity.  Nuclear and
hydro use fixed constants.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import CaseError, GeneratorCostSpec

COAL_FUEL_PRICE = 1.78  # $/MMBtu
GAS_FUEL_PRICE = 2.29  # $/MMBtu (1000 Btu/ft3 heat content)

# (capacity lo MW, capacity hi MW, c0 lo $/h, c0 hi $/h); the last bucket's
# hi edge also caps the interpolation for oversized units.
_COAL_C0_BUCKETS = (
    (0.0, 75.0, 0.0, 238.0),
    (75.0, 150.0, 238.0, 745.0),
    (150.0, 350.0, 745.0, 1213.0),
    (350.0, 1300.0, 1213.0, 3043.0),
)
_GAS_C0_BUCKETS = (
    (0.0, 400.0, 0.0, 600.0),
    (400.0, 600.0, 600.0, 3859.0),
)

COAL_C1_RANGE = (18.28, 19.98)  # $/h/MW
COAL_C2 = 0.0016  # $/h/MW^2
COAL_STARTUP_PER_MW = (80.0, 380.0)  # $/MW capacity
COAL_SHUTDOWN_PER_MW = (8.0, 38.0)
COAL_RAMP_PCT_RANGE = (0.6, 8.0)  # % of capacity per minute
COAL_STARTUP_TIME_RANGE = (4.0, 60.0)  # h, recorded only
COAL_SHUTDOWN_TIME_RANGE = (2.0, 60.0)
COAL_MIN_ON = 12.0
COAL_MIN_OFF = 12.0

GAS_C1_RANGE = (23.13, 57.03)
GAS_C2_RANGE = (0.002, 0.008)
GAS_STARTUP_PER_MW = (4.0, 80.0)
GAS_SHUTDOWN_PER_MW = (0.4, 8.0)
GAS_RAMP_PCT_RANGE = (0.8, 30.0)
GAS_STARTUP_TIME_RANGE = (5.0, 40.0)
GAS_SHUTDOWN_TIME_RANGE = (3.0, 40.0)
GAS_MIN_ON = 2.0
GAS_MIN_OFF = 1.0

NUCLEAR_C1 = 17.44  # $/MWh
NUCLEAR_STARTUP = 1200.0  # $, flat
NUCLEAR_SHUTDOWN = 1200.0
NUCLEAR_RAMP_PCT = 5.0
NUCLEAR_STARTUP_TIME = 18.0
NUCLEAR_SHUTDOWN_TIME = 18.0
NUCLEAR_MIN_ON = 72.0
NUCLEAR_MIN_OFF = 72.0

HYDRO_C1 = 12.3  # $/MWh
HYDRO_RAMP_PCT = 25.0  # fast-ramping assumption; no survey figure exists


@dataclass(frozen=True)
class GeneratorParams:
    """Cost spec plus the operating fields a Generator carries."""

    cost: GeneratorCostSpec
    ramp_rate: float  # MW/min
    min_on: float  # h
    min_off: float  # h
    startup_time: float = 0.0  # h, recorded but not enforced in commitment
    shutdown_time: float = 0.0  # h, recorded but not enforced in commitment


def _mid(rng: tuple[float, float]) -> float:
    return 0.5 * (rng[0] + rng[1])


def _interp_c0(buckets, capacity: float) -> float:
    lo, hi, c_lo, c_hi = buckets[-1]
    for b in buckets:
        if b[0] <= capacity < b[1]:
            lo, hi, c_lo, c_hi = b
            break
    frac = min(max((capacity - lo) / (hi - lo), 0.0), 1.0)
    return c_lo + frac * (c_hi - c_lo)


def _flat_startup(dollars: float) -> dict:
    return {"startup_fuel_per_capacity": 0.0, "startup_power": dollars,
            "startup_power_cost": 1.0}


def default_params(fuel: str, capacity: float,
                   coal_fuel_price: float = COAL_FUEL_PRICE,
                   gas_fuel_price: float = GAS_FUEL_PRICE) -> GeneratorParams:
    """Deterministic default parameters for a unit of the given fuel and size (MW)."""
    if capacity <= 0:
        raise CaseError(f"capacity must be > 0, got {capacity}")
    if fuel == "coal":
        cost = GeneratorCostSpec(
            c0=_interp_c0(_COAL_C0_BUCKETS, capacity),
            c1=_mid(COAL_C1_RANGE),
            c2=COAL_C2,
            fuel_price=coal_fuel_price,
            shutdown_cost=_mid(COAL_SHUTDOWN_PER_MW) * capacity,
            **_flat_startup(_mid(COAL_STARTUP_PER_MW) * capacity),
        )
        return GeneratorParams(
            cost=cost,
            ramp_rate=_mid(COAL_RAMP_PCT_RANGE) / 100.0 * capacity,
            min_on=COAL_MIN_ON,
            min_off=COAL_MIN_OFF,
            startup_time=_mid(COAL_STARTUP_TIME_RANGE),
            shutdown_time=_mid(COAL_SHUTDOWN_TIME_RANGE),
        )
    if fuel == "natural_gas":
        cost = GeneratorCostSpec(
            c0=_interp_c0(_GAS_C0_BUCKETS, capacity),
            c1=_mid(GAS_C1_RANGE),
            c2=_mid(GAS_C2_RANGE),
            fuel_price=gas_fuel_price,
            shutdown_cost=_mid(GAS_SHUTDOWN_PER_MW) * capacity,
            **_flat_startup(_mid(GAS_STARTUP_PER_MW) * capacity),
        )
        return GeneratorParams(
            cost=cost,
            ramp_rate=_mid(GAS_RAMP_PCT_RANGE) / 100.0 * capacity,
            min_on=GAS_MIN_ON,
            min_off=GAS_MIN_OFF,
            startup_time=_mid(GAS_STARTUP_TIME_RANGE),
            shutdown_time=_mid(GAS_SHUTDOWN_TIME_RANGE),
        )
    if fuel == "nuclear":
        cost = GeneratorCostSpec(
            c1=NUCLEAR_C1,
            shutdown_cost=NUCLEAR_SHUTDOWN,
            **_flat_startup(NUCLEAR_STARTUP),
        )
        return GeneratorParams(
            cost=cost,
            ramp_rate=NUCLEAR_RAMP_PCT / 100.0 * capacity,
            min_on=NUCLEAR_MIN_ON,
            min_off=NUCLEAR_MIN_OFF,
            startup_time=NUCLEAR_STARTUP_TIME,
            shutdown_time=NUCLEAR_SHUTDOWN_TIME,
        )
    if fuel == "hydro":
        cost = GeneratorCostSpec(c1=HYDRO_C1)
        return GeneratorParams(cost=cost, ramp_rate=HYDRO_RAMP_PCT / 100.0 * capacity,
                               min_on=0.0, min_off=0.0)
    if fuel in ("wind", "solar"):
        return GeneratorParams(cost=GeneratorCostSpec(), ramp_rate=capacity,
                               min_on=0.0, min_off=0.0)
    raise CaseError(f"unknown fuel {fuel!r}")


def startup_cost(spec: GeneratorCostSpec, p_max: float) -> float:
    """Startup cost in $: startup fuel at the fuel price plus startup power cost."""
    return (spec.startup_fuel_per_capacity * p_max * spec.fuel_price
            + spec.startup_power * spec.startup_power_cost)
