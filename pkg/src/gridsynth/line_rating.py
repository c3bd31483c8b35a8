"""Steady-state conductor ampacity (IEEE Std 738 heat balance) and DLR profiles.

The rating solves the heat balance at the conductor's maximum temperature:
convective plus radiated losses against solar gain, with the remainder
dissipated as I^2 R.  Convection takes the larger of the two forced-flow
correlations and the natural-convection term, so ratings stay physical in
still air.

Per-line profiles rate each line at the mean climate of its two terminal
buses: hourly mode rates every hour with that hour's weather, daily mode
rates the whole day at the component-wise worst hour (highest temperature,
highest radiation, lowest wind), which makes every hourly rating at least
the daily one.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from datetime import timedelta

import numpy as np

from .climate import (ClimateSeries, WindProfileParams, composite_wind,
                      log_wind, perpendicular_wind, worst_case_components)
from .conductors import ConductorError, ConductorSpec
from .model import GridCase, Line
from .profiles import ProfileSet, day_periods, hour_periods

log = logging.getLogger(__name__)

# Clear-atmosphere sea-level flux polynomial coefficients (SI units).
_FLUX_POLY = (-42.2391, 63.8044, -1.9220, 3.46921e-2, -3.61118e-4,
              1.94318e-6, -4.07608e-9)
# Elevation correction polynomial coefficients (SI units).
_KSOLAR_A, _KSOLAR_B, _KSOLAR_C = 1.0, 1.148e-4, -1.108e-8


@dataclass(frozen=True)
class AirProperties:
    """Boundary-layer air properties used by the convection correlations."""

    viscosity: float = 2.04e-5  # kg/(m s)
    conductivity: float = 0.0295  # W/(m degC)
    density: float = 0.9670509910322881  # kg/m3 at 520 m, 70 degC film
    film_temp: float = 70.0  # degC

    def __post_init__(self) -> None:
        for name in ("viscosity", "conductivity", "density", "film_temp"):
            if getattr(self, name) <= 0:
                raise ValueError(f"air property {name} must be > 0")

    @classmethod
    def at(cls, elevation: float = 520.0, film_temp: float = 70.0,
           viscosity: float = 2.04e-5, conductivity: float = 0.0295) -> "AirProperties":
        """Density from the standard elevation/temperature expression."""
        rho = (1.293 - 1.525e-4 * elevation + 6.379e-9 * elevation**2) \
            / (1.0 + 0.00367 * film_temp)
        return cls(viscosity=viscosity, conductivity=conductivity,
                   density=rho, film_temp=film_temp)


@dataclass(frozen=True)
class SolarGeometry:
    """Sun and line geometry; defaults are the noon-sun Texas assumptions."""

    sun_altitude: float = 30.5  # degrees
    sun_azimuth: float = 180.0  # degrees
    line_azimuth: float = 90.0  # degrees (east-west run, max noon incidence)
    elevation: float = 520.0  # m above sea level

    def __post_init__(self) -> None:
        if not 0.0 <= self.sun_altitude <= 90.0:
            raise ValueError("sun altitude must be in [0, 90] degrees")
        for name in ("sun_azimuth", "line_azimuth"):
            if not 0.0 <= getattr(self, name) < 360.0:
                raise ValueError(f"{name} must be in [0, 360) degrees")


@dataclass(frozen=True)
class AmbientConditions:
    """Weather at the conductor."""

    t_ambient: float  # degC
    wind_perp: float  # m/s, component perpendicular to the conductor
    q_short: float  # W/m2 downward shortwave
    q_long: float  # W/m2 downward longwave
    wind_angle: float = 45.0  # degrees between wind and conductor axis

    def __post_init__(self) -> None:
        if self.wind_perp < 0:
            raise ValueError("wind_perp must be >= 0")
        if self.q_short < 0 or self.q_long < 0:
            raise ValueError("radiation must be >= 0")


def resistance(spec: ConductorSpec, t: float) -> float:
    """Conductor resistance (ohm/m) by linear interpolation in temperature."""
    slope = (spec.r_high - spec.r_low) / (spec.t_high - spec.t_low)
    return spec.r_low + slope * (t - spec.t_low)


def wind_direction_factor(angle_deg: float) -> float:
    """K_angle for the angle between wind direction and the conductor axis."""
    phi = math.radians(angle_deg)
    return 1.194 - math.cos(phi) + 0.194 * math.cos(2 * phi) + 0.368 * math.sin(2 * phi)


def convective_loss(spec: ConductorSpec, air: AirProperties, wind_perp: float,
                    wind_angle: float, t_surface: float, t_ambient: float) -> float:
    """Convective heat loss (W/m): max of the two forced terms and natural convection."""
    if t_surface < t_ambient:
        raise ValueError("conductor surface must not be colder than ambient")
    dt = t_surface - t_ambient
    k_angle = wind_direction_factor(wind_angle)
    n_re = spec.diameter * air.density * wind_perp / air.viscosity
    qc1 = k_angle * (1.01 + 1.35 * n_re**0.52) * air.conductivity * dt
    qc2 = k_angle * 0.754 * n_re**0.6 * air.conductivity * dt
    qcn = 3.645 * air.density**0.5 * spec.diameter**0.75 * dt**1.25
    return max(qc1, qc2, qcn, 0.0)


def radiated_loss(spec: ConductorSpec, t_surface: float, t_ambient: float) -> float:
    """Radiated heat loss (W/m) from the conductor surface."""
    return 17.8 * spec.diameter * spec.emissivity * (
        ((t_surface + 273.0) / 100.0) ** 4 - ((t_ambient + 273.0) / 100.0) ** 4
    )


def elevation_factor(elevation: float) -> float:
    return _KSOLAR_A + _KSOLAR_B * elevation + _KSOLAR_C * elevation**2


def sea_level_flux(sun_altitude_deg: float) -> float:
    """Clear-atmosphere flux polynomial (W/m2); fallback when no measured radiation."""
    return sum(c * sun_altitude_deg**i for i, c in enumerate(_FLUX_POLY))


def solar_gain(spec: ConductorSpec, geom: SolarGeometry,
               ambient: AmbientConditions) -> float:
    """Solar heat gain (W/m) from measured short- plus longwave radiation."""
    theta = math.acos(
        math.cos(math.radians(geom.sun_altitude))
        * math.cos(math.radians(geom.sun_azimuth - geom.line_azimuth))
    )
    q_elevated = elevation_factor(geom.elevation) * (ambient.q_short + ambient.q_long)
    return spec.absorptivity * q_elevated * math.sin(theta) * spec.area


@dataclass(frozen=True)
class AmpacityResult:
    amps: float
    degenerate: bool  # solar gain at or above total losses; no positive rating

    def __float__(self) -> float:
        return self.amps


def ampacity(spec: ConductorSpec, air: AirProperties, geom: SolarGeometry,
             ambient: AmbientConditions) -> AmpacityResult:
    """Steady-state current (A) that holds the conductor at its maximum temperature."""
    t_c = spec.max_temp
    qc = convective_loss(spec, air, ambient.wind_perp, ambient.wind_angle,
                         t_c, ambient.t_ambient)
    qr = radiated_loss(spec, t_c, ambient.t_ambient)
    qs = solar_gain(spec, geom, ambient)
    net = qc + qr - qs
    if net <= 0.0:
        return AmpacityResult(amps=0.0, degenerate=net < 0.0)
    return AmpacityResult(amps=math.sqrt(net / resistance(spec, t_c)),
                          degenerate=False)


def thermal_rating(line: Line, amps: float) -> float:
    """Three-phase MVA for a line ampacity (A) at the line's voltage."""
    if amps < 0:
        raise ValueError("ampacity must be >= 0")
    return math.sqrt(3.0) * line.voltage * amps / 1000.0


@dataclass(frozen=True)
class RatingOptions:
    """Shared assumptions for DLR profile construction."""

    air: AirProperties = AirProperties()
    geometry: SolarGeometry = SolarGeometry()
    wind_params: WindProfileParams = WindProfileParams()
    source_height: float = 10.0  # m, height of the climate wind fields
    conductor_height: float = 30.0  # m, height of the conductor above ground
    wind_angle: float = 45.0  # degrees


class RatingError(ValueError):
    """Rating inputs are incomplete."""


def _line_ambient(case: GridCase, climate: ClimateSeries,
                  line: Line) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-hour (temperature, radiation sum, composite wind) averaged over endpoints."""
    i = climate.bus_index(line.from_bus)
    j = climate.bus_index(line.to_bus)
    temp = 0.5 * (climate.temp[i] + climate.temp[j])
    radiation = 0.5 * (climate.shortwave[i] + climate.shortwave[j]) \
        + 0.5 * (climate.longwave[i] + climate.longwave[j])
    wind_u = 0.5 * (climate.wind_u[i] + climate.wind_u[j])
    wind_v = 0.5 * (climate.wind_v[i] + climate.wind_v[j])
    return temp, radiation, composite_wind(wind_u, wind_v)


def _rate_one(spec: ConductorSpec, line: Line, temp: float, radiation: float,
              wind: float, options: RatingOptions) -> float:
    v_conductor = log_wind(wind, options.source_height, options.conductor_height,
                           options.wind_params)
    ambient = AmbientConditions(
        t_ambient=temp,
        wind_perp=perpendicular_wind(v_conductor),
        q_short=radiation,
        q_long=0.0,
        wind_angle=options.wind_angle,
    )
    result = ampacity(spec, options.air, options.geometry, ambient)
    if result.degenerate:
        log.warning("line %d: solar gain exceeds losses; rating forced to 0", line.id)
    return thermal_rating(line, result.amps)


def dlr_profiles(case: GridCase, climate: ClimateSeries, mode: str,
                 catalog: dict[str, ConductorSpec],
                 options: RatingOptions = RatingOptions()) -> ProfileSet:
    """Dynamic ratings (MVA) per line, keyed by hour or by day."""
    if mode not in ("daily", "hourly"):
        raise RatingError(f"mode must be 'daily' or 'hourly', got {mode!r}")
    if mode == "daily":
        if climate.hours % 24 != 0:
            raise RatingError("daily mode needs a whole number of 24 h days")
        if climate.start.hour != 0:
            raise RatingError("daily mode needs a series starting at midnight UTC")
    values: dict[int, np.ndarray] = {}
    for line in case.lines:
        if line.conductor not in catalog:
            raise ConductorError(
                f"line {line.id}: conductor {line.conductor!r} not in catalog"
            )
        spec = catalog[line.conductor]
        temp, radiation, wind = _line_ambient(case, climate, line)
        if mode == "hourly":
            values[line.id] = np.array([
                _rate_one(spec, line, float(temp[h]), float(radiation[h]),
                          float(wind[h]), options)
                for h in range(climate.hours)
            ])
        else:
            ratings = []
            for d in range(climate.hours // 24):
                sl = slice(24 * d, 24 * (d + 1))
                worst = worst_case_components(temp[sl], radiation[sl], wind[sl])
                ratings.append(_rate_one(spec, line, worst.temp_c,
                                         worst.radiation_wm2, worst.wind_ms,
                                         options))
            values[line.id] = np.array(ratings)
    if mode == "hourly":
        periods = hour_periods(climate.start, climate.hours)
    else:
        periods = day_periods(climate.start, climate.hours // 24)
    return ProfileSet(periods=periods, values=values)


def static_profiles(case: GridCase, periods: tuple[str, ...]) -> ProfileSet:
    """Constant static-rating profile in the same shape as a DLR profile."""
    return ProfileSet(periods=periods, values={
        ln.id: np.full(len(periods), ln.static_rating) for ln in case.lines
    })
