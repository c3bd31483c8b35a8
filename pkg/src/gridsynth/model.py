"""Electrical data model: buses, lines, generators, and the assembled case.

All types are immutable values; every constructor validates its own
invariants and `GridCase.validate` checks the cross-references and
connectivity of the whole case.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

FUELS = ("coal", "natural_gas", "nuclear", "hydro", "wind", "solar")
RENEWABLE_FUELS = ("wind", "solar")

DEFAULT_BASE_MVA = 100.0


class CaseError(ValueError):
    """A case file or case structure violates the data-model contract."""


@dataclass(frozen=True)
class Bus:
    """A network node with a geographic location and weather zone."""

    id: int
    latitude: float  # degrees north
    longitude: float  # degrees east
    zone: str
    base_voltage: float  # kV

    def __post_init__(self) -> None:
        if not -90.0 <= self.latitude <= 90.0:
            raise CaseError(f"bus {self.id}: latitude {self.latitude} outside [-90, 90]")
        if not -180.0 <= self.longitude <= 180.0:
            raise CaseError(f"bus {self.id}: longitude {self.longitude} outside [-180, 180]")
        if not self.zone:
            raise CaseError(f"bus {self.id}: empty zone name")


@dataclass(frozen=True)
class Line:
    """A transmission branch between two buses."""

    id: int
    from_bus: int
    to_bus: int
    reactance: float  # per unit on the case base
    conductor: str  # conductor-catalog key
    length: float  # km
    voltage: float  # kV line-to-line
    static_rating: float  # MVA

    def __post_init__(self) -> None:
        if self.from_bus == self.to_bus:
            raise CaseError(f"line {self.id}: from_bus equals to_bus ({self.from_bus})")
        if self.reactance <= 0:
            raise CaseError(f"line {self.id}: reactance {self.reactance} must be > 0")
        if self.length <= 0:
            raise CaseError(f"line {self.id}: length {self.length} must be > 0")
        if self.static_rating <= 0:
            raise CaseError(f"line {self.id}: static_rating {self.static_rating} must be > 0")


@dataclass(frozen=True)
class GeneratorCostSpec:
    """Cost coefficients and startup/shutdown cost ingredients of a unit.

    Startup cost follows the fuel-plus-power decomposition
    ``startup_fuel_per_capacity * p_max * fuel_price + startup_power * startup_power_cost``;
    a flat dollar figure is encoded as ``startup_power=<dollars>, startup_power_cost=1``.
    """

    c0: float = 0.0  # $/h
    c1: float = 0.0  # $/h/MW
    c2: float = 0.0  # $/h/MW^2
    startup_fuel_per_capacity: float = 0.0  # MMBtu/MW
    fuel_price: float = 0.0  # $/MMBtu
    startup_power: float = 0.0  # MW
    startup_power_cost: float = 0.0  # $/MW
    shutdown_cost: float = 0.0  # $

    def __post_init__(self) -> None:
        if self.c2 < 0:
            raise CaseError(f"cost spec: c2 {self.c2} must be >= 0 (convex cost)")
        for name in ("startup_fuel_per_capacity", "fuel_price", "startup_power",
                     "startup_power_cost", "shutdown_cost"):
            if getattr(self, name) < 0:
                raise CaseError(f"cost spec: {name} must be >= 0")


@dataclass(frozen=True)
class Generator:
    """A generating unit attached to a bus."""

    id: int
    bus: int
    fuel: str
    p_max: float  # MW
    p_min: float  # MW
    q_max: float  # MVar
    q_min: float  # MVar
    cost: GeneratorCostSpec = field(default_factory=GeneratorCostSpec)
    ramp_rate: float = 0.0  # MW/min
    min_on: float = 0.0  # hours
    min_off: float = 0.0  # hours

    def __post_init__(self) -> None:
        if self.fuel not in FUELS:
            raise CaseError(f"generator {self.id}: unknown fuel {self.fuel!r}")
        if not 0.0 <= self.p_min <= self.p_max:
            raise CaseError(
                f"generator {self.id}: need 0 <= p_min <= p_max, got "
                f"p_min={self.p_min}, p_max={self.p_max}"
            )
        if self.ramp_rate < 0:
            raise CaseError(f"generator {self.id}: ramp_rate must be >= 0")
        if self.min_on < 0 or self.min_off < 0:
            raise CaseError(f"generator {self.id}: min_on/min_off must be >= 0")
        if self.fuel in RENEWABLE_FUELS and self.p_min != 0.0:
            raise CaseError(f"generator {self.id}: {self.fuel} units must have p_min = 0")

    @property
    def is_renewable(self) -> bool:
        return self.fuel in RENEWABLE_FUELS


@dataclass(frozen=True)
class GridCase:
    """A validated electrical test case."""

    buses: tuple[Bus, ...]
    lines: tuple[Line, ...]
    generators: tuple[Generator, ...]
    reference_bus: int = -1  # -1: lowest bus id
    base_mva: float = DEFAULT_BASE_MVA

    def __post_init__(self) -> None:
        if not self.buses:
            raise CaseError("case has no buses")
        if self.reference_bus == -1:
            object.__setattr__(self, "reference_bus", min(b.id for b in self.buses))
        self.validate()

    def validate(self) -> None:
        bus_ids = [b.id for b in self.buses]
        seen: set[int] = set()
        for bid in bus_ids:
            if bid in seen:
                raise CaseError(f"duplicate bus id {bid}")
            seen.add(bid)
        for dup_kind, items in (("line", self.lines), ("generator", self.generators)):
            ids: set[int] = set()
            for item in items:
                if item.id in ids:
                    raise CaseError(f"duplicate {dup_kind} id {item.id}")
                ids.add(item.id)
        for ln in self.lines:
            for end in (ln.from_bus, ln.to_bus):
                if end not in seen:
                    raise CaseError(f"line {ln.id}: references missing bus {end}")
        for g in self.generators:
            if g.bus not in seen:
                raise CaseError(f"generator {g.id}: references missing bus {g.bus}")
        if self.reference_bus not in seen:
            raise CaseError(f"reference bus {self.reference_bus} not in case")
        islands = connected_components(seen, [(l.from_bus, l.to_bus) for l in self.lines])
        if len(islands) > 1:
            detail = "; ".join(
                "{" + ", ".join(str(b) for b in sorted(comp)) + "}" for comp in islands
            )
            raise CaseError(f"case graph is disconnected: islands {detail}")

    @property
    def zones(self) -> tuple[str, ...]:
        return tuple(sorted({b.zone for b in self.buses}))

    def bus(self, bus_id: int) -> Bus:
        for b in self.buses:
            if b.id == bus_id:
                return b
        raise KeyError(bus_id)

    def line(self, line_id: int) -> Line:
        for ln in self.lines:
            if ln.id == line_id:
                return ln
        raise KeyError(line_id)

    def generator(self, gen_id: int) -> Generator:
        for g in self.generators:
            if g.id == gen_id:
                return g
        raise KeyError(gen_id)

    def generators_at(self, bus_id: int) -> tuple[Generator, ...]:
        return tuple(g for g in self.generators if g.bus == bus_id)

    def with_reference(self, bus_id: int) -> "GridCase":
        return replace(self, reference_bus=bus_id)


def connected_components(nodes: set[int], edges: list[tuple[int, int]]) -> list[set[int]]:
    """Connected components of an undirected graph, largest first."""
    adjacency: dict[int, list[int]] = {n: [] for n in nodes}
    for a, b in edges:
        adjacency[a].append(b)
        adjacency[b].append(a)
    remaining = set(nodes)
    components: list[set[int]] = []
    while remaining:
        start = min(remaining)
        stack = [start]
        comp = {start}
        while stack:
            for nxt in adjacency[stack.pop()]:
                if nxt not in comp:
                    comp.add(nxt)
                    stack.append(nxt)
        remaining -= comp
        components.append(comp)
    components.sort(key=lambda c: (-len(c), min(c)))
    return components
