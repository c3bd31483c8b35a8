"""Conductor catalog for thermal rating.

The built-in entries are standard ACSR datasheet values (diameter and AC
resistance at 25/75 degC); sites with other conductors supply a CSV in the
same schema.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path


class ConductorError(ValueError):
    """Conductor parameters are physically inconsistent or missing."""


@dataclass(frozen=True)
class ConductorSpec:
    """Physical parameters of a bare overhead conductor."""

    name: str
    diameter: float  # m
    area: float  # m2 per m of length (projected; equals diameter for cylinders)
    r_low: float  # ohm/m at t_low
    t_low: float  # degC
    r_high: float  # ohm/m at t_high
    t_high: float  # degC
    emissivity: float = 0.8
    absorptivity: float = 0.8
    max_temp: float = 90.0  # degC continuous operating limit

    def __post_init__(self) -> None:
        if self.diameter <= 0:
            raise ConductorError(f"{self.name}: diameter must be > 0")
        if not 0.0 < self.r_low < self.r_high:
            raise ConductorError(f"{self.name}: need 0 < r_low < r_high")
        if self.t_high <= self.t_low:
            raise ConductorError(f"{self.name}: need t_high > t_low")
        for field_name in ("emissivity", "absorptivity"):
            v = getattr(self, field_name)
            if not 0.0 < v <= 1.0:
                raise ConductorError(f"{self.name}: {field_name} must be in (0, 1]")


def _acsr(name: str, diameter_m: float, r25_ohm_per_m: float,
          r75_ohm_per_m: float) -> ConductorSpec:
    return ConductorSpec(name=name, diameter=diameter_m, area=diameter_m,
                         r_low=r25_ohm_per_m, t_low=25.0,
                         r_high=r75_ohm_per_m, t_high=75.0)


# Datasheet values: AC resistance 60 Hz at 25/75 degC, outer diameter.
BUILTIN_CATALOG: dict[str, ConductorSpec] = {
    "Kiwi": _acsr("Kiwi", 0.04407, 3.23e-05, 3.71e-05),
    "Bobolink": _acsr("Bobolink", 0.03625, 4.83e-05, 5.56e-05),
    "Finch": _acsr("Finch", 0.03284, 6.02e-05, 7.07e-05),
}

CONDUCTOR_HEADER = ["name", "diameter_m", "area_m2_per_m", "r_low_ohm_m",
                    "t_low_c", "r_high_ohm_m", "t_high_c", "emissivity",
                    "absorptivity", "tmax_c"]


def read_conductor_csv(path: str | Path) -> dict[str, ConductorSpec]:
    path = Path(path)
    if not path.is_file():
        raise ConductorError(f"missing conductor file: {path}")
    catalog = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != CONDUCTOR_HEADER:
            raise ConductorError(f"{path}: bad header, expected {CONDUCTOR_HEADER}")
        for row in reader:
            if not any(v.strip() for v in row.values()):
                continue
            try:
                spec = ConductorSpec(
                    name=row["name"].strip(),
                    diameter=float(row["diameter_m"]),
                    area=float(row["area_m2_per_m"]),
                    r_low=float(row["r_low_ohm_m"]),
                    t_low=float(row["t_low_c"]),
                    r_high=float(row["r_high_ohm_m"]),
                    t_high=float(row["t_high_c"]),
                    emissivity=float(row["emissivity"]),
                    absorptivity=float(row["absorptivity"]),
                    max_temp=float(row["tmax_c"]),
                )
            except (KeyError, ValueError) as exc:
                if isinstance(exc, ConductorError):
                    raise
                raise ConductorError(f"{path}: bad record {row}") from exc
            catalog[spec.name] = spec
    return catalog


def write_conductor_csv(catalog: dict[str, ConductorSpec], path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(CONDUCTOR_HEADER)
        for name in sorted(catalog):
            c = catalog[name]
            w.writerow([c.name, repr(c.diameter), repr(c.area), repr(c.r_low),
                        repr(c.t_low), repr(c.r_high), repr(c.t_high),
                        repr(c.emissivity), repr(c.absorptivity), repr(c.max_temp)])
