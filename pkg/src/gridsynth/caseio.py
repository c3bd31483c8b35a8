"""Case directory I/O.

A case directory holds three CSV files (UTF-8, header row, '.' decimal):

    buses.csv      bus_id,lat,lon,zone,base_kv
    lines.csv      line_id,from_bus,to_bus,reactance_pu,conductor,length_km,voltage_kv,static_rating_mva
    generators.csv gen_id,bus_id,fuel,pmax_mw,pmin_mw,qmax_mvar,qmin_mvar,c0,c1,c2,startup_cost,shutdown_cost,ramp_mw_min,min_on_h,min_off_h

The generators file carries the startup cost as a flat dollar figure; on load
it is encoded into the cost spec so that ``startup_cost(spec, p_max)``
reproduces it exactly, which makes load -> save -> load the identity.
"""

from __future__ import annotations

import csv
from pathlib import Path

from .genparams import COAL_FUEL_PRICE, GAS_FUEL_PRICE, startup_cost
from .model import Bus, CaseError, GeneratorCostSpec, Generator, GridCase, Line

BUS_HEADER = ["bus_id", "lat", "lon", "zone", "base_kv"]
LINE_HEADER = ["line_id", "from_bus", "to_bus", "reactance_pu", "conductor",
               "length_km", "voltage_kv", "static_rating_mva"]
GEN_HEADER = ["gen_id", "bus_id", "fuel", "pmax_mw", "pmin_mw", "qmax_mvar",
              "qmin_mvar", "c0", "c1", "c2", "startup_cost", "shutdown_cost",
              "ramp_mw_min", "min_on_h", "min_off_h"]

_FUEL_PRICES = {"coal": COAL_FUEL_PRICE, "natural_gas": GAS_FUEL_PRICE}


def _read_rows(path: Path, expected_header: list[str]) -> list[dict[str, str]]:
    if not path.is_file():
        raise CaseError(f"missing case file: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != expected_header:
            raise CaseError(
                f"{path}: bad header {reader.fieldnames}, expected {expected_header}"
            )
        return [row for row in reader if any(v.strip() for v in row.values())]


def _num(row: dict[str, str], key: str, path: Path) -> float:
    try:
        return float(row[key])
    except (KeyError, ValueError) as exc:
        raise CaseError(f"{path}: bad numeric field {key!r} in record {row}") from exc


def _int(row: dict[str, str], key: str, path: Path) -> int:
    try:
        return int(row[key])
    except (KeyError, ValueError) as exc:
        raise CaseError(f"{path}: bad integer field {key!r} in record {row}") from exc


def load_case(directory: str | Path, base_mva: float = 100.0,
              reference_bus: int | None = None) -> GridCase:
    """Load and validate a case; raises CaseError naming the offending record."""
    directory = Path(directory)
    bus_path = directory / "buses.csv"
    line_path = directory / "lines.csv"
    gen_path = directory / "generators.csv"

    buses = tuple(
        Bus(
            id=_int(row, "bus_id", bus_path),
            latitude=_num(row, "lat", bus_path),
            longitude=_num(row, "lon", bus_path),
            zone=row["zone"].strip(),
            base_voltage=_num(row, "base_kv", bus_path),
        )
        for row in _read_rows(bus_path, BUS_HEADER)
    )
    lines = tuple(
        Line(
            id=_int(row, "line_id", line_path),
            from_bus=_int(row, "from_bus", line_path),
            to_bus=_int(row, "to_bus", line_path),
            reactance=_num(row, "reactance_pu", line_path),
            conductor=row["conductor"].strip(),
            length=_num(row, "length_km", line_path),
            voltage=_num(row, "voltage_kv", line_path),
            static_rating=_num(row, "static_rating_mva", line_path),
        )
        for row in _read_rows(line_path, LINE_HEADER)
    )
    generators = []
    for row in _read_rows(gen_path, GEN_HEADER):
        fuel = row["fuel"].strip()
        cost = GeneratorCostSpec(
            c0=_num(row, "c0", gen_path),
            c1=_num(row, "c1", gen_path),
            c2=_num(row, "c2", gen_path),
            fuel_price=_FUEL_PRICES.get(fuel, 0.0),
            startup_power=_num(row, "startup_cost", gen_path),
            startup_power_cost=1.0,
            shutdown_cost=_num(row, "shutdown_cost", gen_path),
        )
        generators.append(
            Generator(
                id=_int(row, "gen_id", gen_path),
                bus=_int(row, "bus_id", gen_path),
                fuel=fuel,
                p_max=_num(row, "pmax_mw", gen_path),
                p_min=_num(row, "pmin_mw", gen_path),
                q_max=_num(row, "qmax_mvar", gen_path),
                q_min=_num(row, "qmin_mvar", gen_path),
                cost=cost,
                ramp_rate=_num(row, "ramp_mw_min", gen_path),
                min_on=_num(row, "min_on_h", gen_path),
                min_off=_num(row, "min_off_h", gen_path),
            )
        )
    ref = reference_bus if reference_bus is not None else -1
    return GridCase(buses=buses, lines=lines, generators=tuple(generators),
                    reference_bus=ref, base_mva=base_mva)


def _fmt(x: float) -> str:
    # repr round-trips exactly, keeping save -> load lossless
    return repr(float(x))


def save_case(case: GridCase, directory: str | Path) -> None:
    """Write the three case CSVs; records are sorted by id."""
    directory = Path(directory)
    try:
        directory.mkdir(parents=True, exist_ok=True)
        with open(directory / "buses.csv", "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(BUS_HEADER)
            for b in sorted(case.buses, key=lambda b: b.id):
                w.writerow([b.id, _fmt(b.latitude), _fmt(b.longitude), b.zone,
                            _fmt(b.base_voltage)])
        with open(directory / "lines.csv", "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(LINE_HEADER)
            for ln in sorted(case.lines, key=lambda l: l.id):
                w.writerow([ln.id, ln.from_bus, ln.to_bus, _fmt(ln.reactance),
                            ln.conductor, _fmt(ln.length), _fmt(ln.voltage),
                            _fmt(ln.static_rating)])
        with open(directory / "generators.csv", "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(GEN_HEADER)
            for g in sorted(case.generators, key=lambda g: g.id):
                w.writerow([g.id, g.bus, g.fuel, _fmt(g.p_max), _fmt(g.p_min),
                            _fmt(g.q_max), _fmt(g.q_min), _fmt(g.cost.c0),
                            _fmt(g.cost.c1), _fmt(g.cost.c2),
                            _fmt(startup_cost(g.cost, g.p_max)),
                            _fmt(g.cost.shutdown_cost), _fmt(g.ramp_rate),
                            _fmt(g.min_on), _fmt(g.min_off)])
    except OSError as exc:
        raise CaseError(f"cannot write case to {directory}: {exc}") from exc
