"""DC security-constrained unit commitment: model build, solve, and analysis.

The MILP commits thermal units (binary on/off with startup/shutdown
indicators, minimum up/down windows, ramp limits with startup/shutdown
allowances, spinning reserve) over a DC network (bus angles, per-line flow
limits, nodal balance).  Quadratic operating cost is linearized with
equal-width chords, so the objective over-estimates the true quadratic by at
most c2*(segment width)^2/4.

Line limits follow the rating mode: one limit per line for a daily rating,
one per line and hour for hourly ratings.  Locational marginal prices are
the nodal-balance duals of the dispatch LP at the fixed optimal commitment.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from datetime import date, datetime, timedelta
from pathlib import Path

import numpy as np

from . import lp as lpmod
from .genparams import startup_cost
from .milp import LinearProgram, MilpResult, solve_milp
from .model import Generator, GridCase
from .profiles import ProfileError, ProfileSet

RAMP_MINUTES_PER_HOUR = 60.0


class ScucError(ValueError):
    """The instance violates the model contract."""


@dataclass(frozen=True)
class InitialState:
    """Commitment state of a unit at the hour before the horizon."""

    on: bool = False
    hours: float = 1e6  # how long the unit has been in that state
    power: float | None = None  # MW; defaults to p_min when on, 0 when off

    def initial_power(self, gen: Generator) -> float:
        if self.power is not None:
            return self.power
        return gen.p_min if self.on else 0.0


@dataclass(frozen=True)
class ScucOptions:
    """Model-shape knobs; defaults match the documented conventions."""

    segments: int = 3  # chords of the quadratic cost
    reserve_fraction: float = 0.03  # of hourly load
    shed_penalty: float | None = None  # $/MWh; None forbids shedding
    gap: float = 1e-4
    time_limit: float | None = None

    def __post_init__(self) -> None:
        if self.segments < 1:
            raise ScucError("need at least one cost segment")
        if self.reserve_fraction < 0:
            raise ScucError("reserve_fraction must be >= 0")


@dataclass(frozen=True, eq=False)
class ScucInstance:
    """A fully specified commitment problem over T hours."""

    case: GridCase
    horizon: int
    load: dict[int, np.ndarray]  # bus id -> MW per hour
    availability: dict[int, np.ndarray]  # renewable gen id -> MW per hour
    line_limits: dict[int, float | np.ndarray]  # scalar (daily) or per-hour
    mode: str = "daily"
    start: datetime | None = None
    initial: dict[int, InitialState] = field(default_factory=dict)
    options: ScucOptions = ScucOptions()

    def __post_init__(self) -> None:
        t = self.horizon
        if t < 1:
            raise ScucError("horizon must be >= 1")
        if self.mode not in ("daily", "hourly"):
            raise ScucError(f"mode must be 'daily' or 'hourly', got {self.mode!r}")
        bus_ids = {b.id for b in self.case.buses}
        for bus, series in self.load.items():
            if bus not in bus_ids:
                raise ScucError(f"load series references missing bus {bus}")
            if len(series) != t:
                raise ScucError(f"load series for bus {bus} has wrong length")
        for g in self.case.generators:
            if g.is_renewable:
                if g.id not in self.availability:
                    raise ScucError(f"renewable generator {g.id} has no availability")
                if len(self.availability[g.id]) != t:
                    raise ScucError(f"availability for generator {g.id} has wrong length")
        line_ids = {l.id for l in self.case.lines}
        for line in line_ids:
            if line not in self.line_limits:
                raise ScucError(f"line {line} has no limit")
            lim = self.line_limits[line]
            if self.mode == "daily":
                if np.ndim(lim) != 0:
                    raise ScucError(f"daily mode expects one limit for line {line}")
                if lim <= 0:
                    raise ScucError(f"line {line}: limit must be > 0")
            else:
                arr = np.asarray(lim)
                if arr.shape != (t,):
                    raise ScucError(f"hourly mode expects {t} limits for line {line}")
                if np.any(arr <= 0):
                    raise ScucError(f"line {line}: limits must be > 0")

    def bus_load(self, bus: int) -> np.ndarray:
        series = self.load.get(bus)
        if series is None:
            return np.zeros(self.horizon)
        return np.asarray(series, dtype=float)

    def total_load(self) -> np.ndarray:
        total = np.zeros(self.horizon)
        for series in self.load.values():
            total = total + np.asarray(series, dtype=float)
        return total

    def limit_series(self, line: int) -> np.ndarray:
        lim = self.line_limits[line]
        if np.ndim(lim) == 0:
            return np.full(self.horizon, float(lim))
        return np.asarray(lim, dtype=float)

    def state_of(self, gen: Generator) -> InitialState:
        return self.initial.get(gen.id, InitialState())

    def thermal_units(self) -> list[Generator]:
        return [g for g in self.case.generators if not g.is_renewable]

    def renewable_units(self) -> list[Generator]:
        return [g for g in self.case.generators if g.is_renewable]

    def timestamps(self) -> list[str]:
        if self.start is None:
            return [f"t{t + 1}" for t in range(self.horizon)]
        return [(self.start + timedelta(hours=t)).strftime("%Y-%m-%dT%H:%M:%SZ")
                for t in range(self.horizon)]


def instance_from_profiles(case: GridCase, loads: ProfileSet,
                           availability: ProfileSet, ratings: ProfileSet,
                           day: date, mode: str,
                           options: ScucOptions = ScucOptions(),
                           initial: dict[int, InitialState] | None = None
                           ) -> ScucInstance:
    """Slice one day out of hourly load/availability profiles plus a rating set.

    Daily-mode ratings are keyed by date; hourly-mode ratings by hour stamp.
    """
    day_str = day.strftime("%Y-%m-%d")
    hour_idx = [i for i, p in enumerate(loads.periods) if p.startswith(day_str)]
    if len(hour_idx) != 24:
        raise ScucError(f"load profiles cover {len(hour_idx)} hours of {day_str}")
    load = {bus: loads.series(bus)[hour_idx] for bus in loads.assets}
    avail = {}
    for g in case.generators:
        if g.is_renewable:
            series = availability.series(g.id)
            if availability.periods != loads.periods:
                raise ScucError("availability and load profiles disagree on periods")
            avail[g.id] = series[hour_idx]
    limits: dict[int, float | np.ndarray] = {}
    if mode == "daily":
        try:
            di = ratings.periods.index(day_str)
        except ValueError:
            raise ScucError(f"daily ratings missing {day_str}") from None
        for ln in case.lines:
            limits[ln.id] = float(ratings.series(ln.id)[di])
    else:
        rate_idx = [i for i, p in enumerate(ratings.periods) if p.startswith(day_str)]
        if len(rate_idx) != 24:
            raise ScucError(f"hourly ratings cover {len(rate_idx)} hours of {day_str}")
        for ln in case.lines:
            limits[ln.id] = ratings.series(ln.id)[rate_idx]
    return ScucInstance(case=case, horizon=24, load=load, availability=avail,
                        line_limits=limits, mode=mode,
                        start=datetime(day.year, day.month, day.day),
                        initial=initial or {}, options=options)


@dataclass
class ScucIndex:
    """Column/row positions used to read solutions back out of the MILP."""

    u: dict[tuple[int, int], int] = field(default_factory=dict)
    su: dict[tuple[int, int], int] = field(default_factory=dict)
    sd: dict[tuple[int, int], int] = field(default_factory=dict)
    p: dict[tuple[int, int], int] = field(default_factory=dict)
    seg: dict[tuple[int, int], list[int]] = field(default_factory=dict)
    theta: dict[tuple[int, int], int] = field(default_factory=dict)
    shed: dict[tuple[int, int], int] = field(default_factory=dict)
    balance_rows: dict[tuple[int, int], int] = field(default_factory=dict)
    flow_rows: dict[tuple[int, int], int] = field(default_factory=dict)


@dataclass
class ScucMilp:
    """Built MILP plus the maps back to the physical model."""

    prob: LinearProgram
    index: ScucIndex
    instance: ScucInstance


def _segment_breaks(gen: Generator, segments: int) -> np.ndarray:
    return np.linspace(gen.p_min, gen.p_max, segments + 1)


def _commit_cost(gen: Generator) -> float:
    c = gen.cost
    return c.c0 + c.c1 * gen.p_min + c.c2 * gen.p_min**2


def _segment_slopes(gen: Generator, segments: int) -> np.ndarray:
    breaks = _segment_breaks(gen, segments)
    return gen.cost.c1 + gen.cost.c2 * (breaks[:-1] + breaks[1:])


def _forced_commitment(gen: Generator, state: InitialState, t: int) -> tuple[float, float]:
    """Bounds on u implied by an unfinished minimum up/down obligation."""
    if state.on:
        remaining = math.ceil(gen.min_on - state.hours)
        if t < remaining:
            return 1.0, 1.0
    else:
        remaining = math.ceil(gen.min_off - state.hours)
        if t < remaining:
            return 0.0, 0.0
    return 0.0, 1.0


def build_scuc(instance: ScucInstance) -> ScucMilp:
    """Assemble the commitment MILP for an instance."""
    case = instance.case
    opts = instance.options
    horizon = instance.horizon
    thermal = instance.thermal_units()
    renewables = instance.renewable_units()
    prob = LinearProgram()
    ix = ScucIndex()

    for g in thermal:
        state = instance.state_of(g)
        breaks = _segment_breaks(g, opts.segments)
        slopes = _segment_slopes(g, opts.segments)
        su_cost = startup_cost(g.cost, g.p_max)
        for t in range(horizon):
            lo_u, hi_u = _forced_commitment(g, state, t)
            ix.u[g.id, t] = prob.add_col(
                f"u_g{g.id}_t{t + 1}", lo_u, hi_u, obj=_commit_cost(g),
                integer=True, priority=0)
            ix.su[g.id, t] = prob.add_col(
                f"su_g{g.id}_t{t + 1}", 0.0, 1.0, obj=su_cost, integer=True,
                priority=1)
            ix.sd[g.id, t] = prob.add_col(
                f"sd_g{g.id}_t{t + 1}", 0.0, 1.0, obj=g.cost.shutdown_cost,
                integer=True, priority=1)
            ix.p[g.id, t] = prob.add_col(f"p_g{g.id}_t{t + 1}", 0.0, g.p_max)
            if g.p_max > g.p_min:
                ix.seg[g.id, t] = [
                    prob.add_col(f"seg{s + 1}_g{g.id}_t{t + 1}", 0.0,
                                 breaks[s + 1] - breaks[s], obj=float(slopes[s]))
                    for s in range(opts.segments)
                ]
            else:
                ix.seg[g.id, t] = []
    for g in renewables:
        avail = np.asarray(instance.availability[g.id], dtype=float)
        for t in range(horizon):
            ix.p[g.id, t] = prob.add_col(f"p_g{g.id}_t{t + 1}", 0.0,
                                         max(float(avail[t]), 0.0))
    for b in case.buses:
        for t in range(horizon):
            if b.id == case.reference_bus:
                ix.theta[b.id, t] = prob.add_col(f"th_b{b.id}_t{t + 1}", 0.0, 0.0)
            else:
                ix.theta[b.id, t] = prob.add_col(f"th_b{b.id}_t{t + 1}",
                                                 -np.inf, np.inf)
    if opts.shed_penalty is not None:
        for b in case.buses:
            for t in range(horizon):
                ix.shed[b.id, t] = prob.add_col(f"sh_b{b.id}_t{t + 1}", 0.0,
                                                np.inf, obj=opts.shed_penalty)

    for g in thermal:
        state = instance.state_of(g)
        u0 = 1.0 if state.on else 0.0
        p0 = state.initial_power(g)
        ramp_hourly = RAMP_MINUTES_PER_HOUR * g.ramp_rate
        up_window = max(1, math.ceil(g.min_on))
        down_window = max(1, math.ceil(g.min_off))
        for t in range(horizon):
            if ix.seg[g.id, t]:
                prob.add_row(
                    f"pdef_g{g.id}_t{t + 1}",
                    [(ix.p[g.id, t], 1.0), (ix.u[g.id, t], -g.p_min)]
                    + [(s, -1.0) for s in ix.seg[g.id, t]],
                    0.0, 0.0, row_class="dispatch-definition")
                prob.add_row(
                    f"cap_g{g.id}_t{t + 1}",
                    [(s, 1.0) for s in ix.seg[g.id, t]]
                    + [(ix.u[g.id, t], -(g.p_max - g.p_min))],
                    -np.inf, 0.0, row_class="capacity")
            else:
                prob.add_row(
                    f"pdef_g{g.id}_t{t + 1}",
                    [(ix.p[g.id, t], 1.0), (ix.u[g.id, t], -g.p_min)],
                    0.0, 0.0, row_class="dispatch-definition")
            # commitment logic: u_t - u_{t-1} = su_t - sd_t, never both at once
            entries = [(ix.u[g.id, t], 1.0), (ix.su[g.id, t], -1.0),
                       (ix.sd[g.id, t], 1.0)]
            rhs = 0.0
            if t == 0:
                rhs = u0
            else:
                entries.append((ix.u[g.id, t - 1], -1.0))
            prob.add_row(f"logic_g{g.id}_t{t + 1}", entries, rhs, rhs,
                         row_class="commitment-logic")
            prob.add_row(f"excl_g{g.id}_t{t + 1}",
                         [(ix.su[g.id, t], 1.0), (ix.sd[g.id, t], 1.0)],
                         -np.inf, 1.0, row_class="commitment-logic")
            # minimum up: recent startups keep the unit on
            window = range(max(0, t - up_window + 1), t + 1)
            prob.add_row(
                f"minup_g{g.id}_t{t + 1}",
                [(ix.su[g.id, tau], 1.0) for tau in window]
                + [(ix.u[g.id, t], -1.0)],
                -np.inf, 0.0, row_class="min-up")
            window = range(max(0, t - down_window + 1), t + 1)
            prob.add_row(
                f"mindn_g{g.id}_t{t + 1}",
                [(ix.sd[g.id, tau], 1.0) for tau in window]
                + [(ix.u[g.id, t], 1.0)],
                -np.inf, 1.0, row_class="min-down")
            # ramps: |p_t - p_{t-1}| <= hourly rate, plus an allowance that
            # lets a starting (stopping) unit reach (leave) p_min
            if t == 0:
                prob.add_row(
                    f"rampup_g{g.id}_t{t + 1}",
                    [(ix.p[g.id, t], 1.0), (ix.su[g.id, t], -g.p_min)],
                    -np.inf, p0 + ramp_hourly, row_class="ramp-up")
                prob.add_row(
                    f"rampdn_g{g.id}_t{t + 1}",
                    [(ix.p[g.id, t], -1.0), (ix.sd[g.id, t], -g.p_min)],
                    -np.inf, ramp_hourly - p0, row_class="ramp-down")
            else:
                prob.add_row(
                    f"rampup_g{g.id}_t{t + 1}",
                    [(ix.p[g.id, t], 1.0), (ix.p[g.id, t - 1], -1.0),
                     (ix.su[g.id, t], -g.p_min)],
                    -np.inf, ramp_hourly, row_class="ramp-up")
                prob.add_row(
                    f"rampdn_g{g.id}_t{t + 1}",
                    [(ix.p[g.id, t - 1], 1.0), (ix.p[g.id, t], -1.0),
                     (ix.sd[g.id, t], -g.p_min)],
                    -np.inf, ramp_hourly, row_class="ramp-down")

    if opts.reserve_fraction > 0 and thermal:
        total_load = instance.total_load()
        for t in range(horizon):
            entries = []
            for g in thermal:
                entries.append((ix.u[g.id, t], g.p_max))
                entries.append((ix.p[g.id, t], -1.0))
            prob.add_row(f"resv_t{t + 1}", entries,
                         opts.reserve_fraction * float(total_load[t]), np.inf,
                         row_class="reserve")

    base = case.base_mva
    for b in case.buses:
        for t in range(horizon):
            entries: dict[int, float] = {}
            for g in case.generators:
                if g.bus == b.id:
                    entries[ix.p[g.id, t]] = entries.get(ix.p[g.id, t], 0.0) + 1.0
            for ln in case.lines:
                bb = base / ln.reactance
                if ln.from_bus == b.id:
                    entries[ix.theta[ln.from_bus, t]] = entries.get(
                        ix.theta[ln.from_bus, t], 0.0) - bb
                    entries[ix.theta[ln.to_bus, t]] = entries.get(
                        ix.theta[ln.to_bus, t], 0.0) + bb
                elif ln.to_bus == b.id:
                    entries[ix.theta[ln.from_bus, t]] = entries.get(
                        ix.theta[ln.from_bus, t], 0.0) + bb
                    entries[ix.theta[ln.to_bus, t]] = entries.get(
                        ix.theta[ln.to_bus, t], 0.0) - bb
            if (b.id, t) in ix.shed:
                entries[ix.shed[b.id, t]] = 1.0
            load = float(instance.bus_load(b.id)[t])
            ix.balance_rows[b.id, t] = prob.add_row(
                f"bal_b{b.id}_t{t + 1}", list(entries.items()), load, load,
                row_class="power-balance")

    for ln in case.lines:
        limits = instance.limit_series(ln.id)
        bb = base / ln.reactance
        for t in range(horizon):
            lim = float(limits[t])
            ix.flow_rows[ln.id, t] = prob.add_row(
                f"flow_k{ln.id}_t{t + 1}",
                [(ix.theta[ln.from_bus, t], bb), (ix.theta[ln.to_bus, t], -bb)],
                -lim, lim, row_class="line-limit")

    return ScucMilp(prob=prob, index=ix, instance=instance)


@dataclass(eq=False)
class ScucSolution:
    """Commitment, dispatch, network state, and prices for one instance."""

    status: str  # 'optimal' | 'feasible' | 'infeasible'
    objective: float = np.nan
    gap: float = 0.0
    commitment: dict[int, np.ndarray] = field(default_factory=dict)
    startup: dict[int, np.ndarray] = field(default_factory=dict)
    shutdown: dict[int, np.ndarray] = field(default_factory=dict)
    dispatch: dict[int, np.ndarray] = field(default_factory=dict)
    angles: dict[int, np.ndarray] = field(default_factory=dict)
    flows: dict[int, np.ndarray] = field(default_factory=dict)
    shed: dict[int, np.ndarray] = field(default_factory=dict)
    lmp: dict[int, np.ndarray] = field(default_factory=dict)
    infeasible_hint: str = ""

    @property
    def feasible(self) -> bool:
        return self.status in ("optimal", "feasible")

    def renewable_energy(self, case: GridCase) -> float:
        """Total renewable dispatch over the horizon, MWh."""
        return float(sum(self.dispatch[g.id].sum()
                         for g in case.generators if g.is_renewable))


def _extract_solution(milp: ScucMilp, result: MilpResult) -> ScucSolution:
    if result.status == "infeasible" or result.x is None:
        return ScucSolution(status="infeasible",
                            infeasible_hint=result.infeasible_hint)
    instance = milp.instance
    ix = milp.index
    x = result.x
    horizon = instance.horizon
    sol = ScucSolution(status=result.status, objective=float(result.objective),
                       gap=float(result.gap))
    for g in instance.thermal_units():
        state = instance.state_of(g)
        u = np.array([round(x[ix.u[g.id, t]]) for t in range(horizon)], dtype=int)
        prev = np.concatenate([[1 if state.on else 0], u[:-1]])
        diff = u - prev
        sol.commitment[g.id] = u
        sol.startup[g.id] = (diff > 0).astype(int)
        sol.shutdown[g.id] = (diff < 0).astype(int)
        sol.dispatch[g.id] = np.array([x[ix.p[g.id, t]] for t in range(horizon)])
    for g in instance.renewable_units():
        sol.dispatch[g.id] = np.array([x[ix.p[g.id, t]] for t in range(horizon)])
    for b in instance.case.buses:
        sol.angles[b.id] = np.array([x[ix.theta[b.id, t]] for t in range(horizon)])
        if (b.id, 0) in ix.shed:
            sol.shed[b.id] = np.array([x[ix.shed[b.id, t]] for t in range(horizon)])
    base = instance.case.base_mva
    for ln in instance.case.lines:
        sol.flows[ln.id] = (base / ln.reactance) * (
            sol.angles[ln.from_bus] - sol.angles[ln.to_bus])
    return sol


def solve_scuc(milp: ScucMilp, gap: float | None = None,
               time_limit: float | None = None,
               compute_lmp: bool = True) -> ScucSolution:
    """Solve the built MILP and map the answer back to the physical model."""
    opts = milp.instance.options
    result = solve_milp(milp.prob,
                        gap=opts.gap if gap is None else gap,
                        time_limit=opts.time_limit if time_limit is None else time_limit)
    sol = _extract_solution(milp, result)
    if sol.feasible and compute_lmp:
        sol.lmp = lmp(milp.instance, sol, milp=milp, warm=result.basis)
    return sol


def lmp(instance: ScucInstance, solution: ScucSolution,
        milp: ScucMilp | None = None,
        warm: lpmod.LpBasis | None = None) -> dict[int, np.ndarray]:
    """Nodal prices: balance duals of the dispatch LP at fixed commitment."""
    if not solution.feasible:
        raise ScucError("cannot price an infeasible solution")
    if milp is None:
        milp = build_scuc(instance)
    prob, ix = milp.prob, milp.index
    lower = np.asarray(prob.lower, dtype=float)
    upper = np.asarray(prob.upper, dtype=float)
    horizon = instance.horizon
    for g in instance.thermal_units():
        state = instance.state_of(g)
        u = solution.commitment[g.id]
        prev = np.concatenate([[1 if state.on else 0], u[:-1]])
        su = np.maximum(u - prev, 0)
        sd = np.maximum(prev - u, 0)
        for t in range(horizon):
            for col, val in ((ix.u[g.id, t], u[t]), (ix.su[g.id, t], su[t]),
                             (ix.sd[g.id, t], sd[t])):
                lower[col] = float(val)
                upper[col] = float(val)
    res = lpmod.solve_lp(np.asarray(prob.obj, dtype=float), lower, upper,
                         prob.dense_matrix(),
                         np.asarray(prob.row_lower, dtype=float),
                         np.asarray(prob.row_upper, dtype=float), warm=warm)
    if res.status != lpmod.OPTIMAL:
        raise ScucError(
            f"dispatch LP at fixed commitment is {res.status}; "
            "the commitment should have been feasible")
    prices: dict[int, np.ndarray] = {}
    for b in instance.case.buses:
        prices[b.id] = np.array([res.duals[ix.balance_rows[b.id, t]]
                                 for t in range(horizon)])
    return prices


@dataclass(frozen=True)
class CongestionReport:
    """Per-hour congested-line classification."""

    full_lines: tuple[tuple[int, ...], ...]  # per hour: lines at 100% loading
    near_lines: tuple[tuple[int, ...], ...]  # per hour: lines in [90%, 100%)
    anclph: float  # average flagged line-count per hour

    @property
    def horizon(self) -> int:
        return len(self.full_lines)


def congestion(instance: ScucInstance, solution: ScucSolution,
               tol: float = 1e-6) -> CongestionReport:
    """Classify line-hours at or near their limit."""
    if not solution.feasible:
        raise ScucError("cannot classify congestion of an infeasible solution")
    full: list[tuple[int, ...]] = []
    near: list[tuple[int, ...]] = []
    flagged = 0
    for t in range(instance.horizon):
        full_t, near_t = [], []
        for ln in instance.case.lines:
            limit = float(instance.limit_series(ln.id)[t])
            loading = abs(float(solution.flows[ln.id][t]))
            if loading >= (1.0 - tol) * limit:
                full_t.append(ln.id)
            elif loading >= 0.9 * limit:
                near_t.append(ln.id)
        full.append(tuple(full_t))
        near.append(tuple(near_t))
        flagged += len(full_t) + len(near_t)
    return CongestionReport(full_lines=tuple(full), near_lines=tuple(near),
                            anclph=flagged / instance.horizon)


def average_lmp(instance: ScucInstance, solution: ScucSolution,
                load_weighted: bool = False) -> float:
    """Mean price over bus-hours, optionally weighted by nodal load."""
    prices = solution.lmp or lmp(instance, solution)
    if not load_weighted:
        return float(np.mean([prices[b.id] for b in instance.case.buses]))
    num = 0.0
    den = 0.0
    for b in instance.case.buses:
        w = instance.bus_load(b.id)
        num += float(np.sum(w * prices[b.id]))
        den += float(np.sum(w))
    return num / den if den > 0 else float(np.mean(
        [prices[b.id] for b in instance.case.buses]))


@dataclass(frozen=True)
class DlrComparison:
    """Side-by-side daily-vs-hourly rating study for one day."""

    daily: ScucSolution
    hourly: ScucSolution
    metrics: dict[str, tuple[float, float, float]]  # name -> (daily, hourly, delta %)

    @property
    def complete(self) -> bool:
        return self.daily.feasible and self.hourly.feasible


def _delta_pct(a: float, b: float) -> float:
    if a == 0:
        return 0.0 if b == 0 else math.inf
    return 100.0 * (b - a) / abs(a)


def compare_dlr(case: GridCase, loads: ProfileSet, availability: ProfileSet,
                ratings_daily: ProfileSet, ratings_hourly: ProfileSet,
                day: date, options: ScucOptions = ScucOptions(),
                initial: dict[int, InitialState] | None = None,
                gap: float | None = None) -> DlrComparison:
    """Solve the same day under daily and hourly ratings and compare."""
    solutions = {}
    instances = {}
    for mode, ratings in (("daily", ratings_daily), ("hourly", ratings_hourly)):
        inst = instance_from_profiles(case, loads, availability, ratings, day,
                                      mode, options=options, initial=initial)
        instances[mode] = inst
        solutions[mode] = solve_scuc(build_scuc(inst), gap=gap)
    metrics: dict[str, tuple[float, float, float]] = {}
    if all(s.feasible for s in solutions.values()):
        cost = (solutions["daily"].objective, solutions["hourly"].objective)
        renew = (solutions["daily"].renewable_energy(case),
                 solutions["hourly"].renewable_energy(case))
        avg = (average_lmp(instances["daily"], solutions["daily"]),
               average_lmp(instances["hourly"], solutions["hourly"]))
        avg_lw = (average_lmp(instances["daily"], solutions["daily"], True),
                  average_lmp(instances["hourly"], solutions["hourly"], True))
        anclph = (congestion(instances["daily"], solutions["daily"]).anclph,
                  congestion(instances["hourly"], solutions["hourly"]).anclph)
        metrics = {
            "total_cost_usd": (*cost, _delta_pct(*cost)),
            "renewable_generation_mwh": (*renew, _delta_pct(*renew)),
            "average_lmp_usd_per_mwh": (*avg, _delta_pct(*avg)),
            "average_lmp_load_weighted_usd_per_mwh": (*avg_lw, _delta_pct(*avg_lw)),
            "anclph": (*anclph, _delta_pct(*anclph)),
        }
    return DlrComparison(daily=solutions["daily"], hourly=solutions["hourly"],
                         metrics=metrics)


def _pwl_cost(gen: Generator, p: float, segments: int) -> float:
    """Piecewise-linear operating cost implied by the chord model at output p."""
    cost = _commit_cost(gen)
    if gen.p_max > gen.p_min:
        breaks = _segment_breaks(gen, segments)
        slopes = _segment_slopes(gen, segments)
        rest = p - gen.p_min
        for s in range(segments):
            width = breaks[s + 1] - breaks[s]
            take = min(max(rest, 0.0), width)
            cost += float(slopes[s]) * take
            rest -= take
    return cost


def validate_solution(instance: ScucInstance, solution: ScucSolution,
                      tol: float = 1e-6) -> list[str]:
    """Replay every model constraint against a solution; returns violations.

    This is an independent code path from the MILP builder: constraints are
    checked directly from the instance data.
    """
    if not solution.feasible:
        return ["solution not feasible"]
    problems: list[str] = []
    horizon = instance.horizon
    case = instance.case

    recomputed = 0.0
    for g in instance.thermal_units():
        state = instance.state_of(g)
        u = solution.commitment[g.id]
        su = solution.startup[g.id]
        sd = solution.shutdown[g.id]
        p = solution.dispatch[g.id]
        if not np.all((u == 0) | (u == 1)):
            problems.append(f"gen {g.id}: non-binary commitment")
        prev_u = 1 if state.on else 0
        p_prev = state.initial_power(g)
        ramp = RAMP_MINUTES_PER_HOUR * g.ramp_rate
        up_window = max(1, math.ceil(g.min_on))
        down_window = max(1, math.ceil(g.min_off))
        forced_on = math.ceil(g.min_on - state.hours) if state.on else 0
        forced_off = 0 if state.on else math.ceil(g.min_off - state.hours)
        for t in range(horizon):
            if u[t] - (u[t - 1] if t else prev_u) != su[t] - sd[t]:
                problems.append(f"gen {g.id} t{t + 1}: commitment logic broken")
            if t < forced_on and u[t] != 1:
                problems.append(f"gen {g.id} t{t + 1}: initial min-on ignored")
            if t < forced_off and u[t] != 0:
                problems.append(f"gen {g.id} t{t + 1}: initial min-off ignored")
            if np.sum(su[max(0, t - up_window + 1):t + 1]) > u[t]:
                problems.append(f"gen {g.id} t{t + 1}: min-up violated")
            if np.sum(sd[max(0, t - down_window + 1):t + 1]) > 1 - u[t]:
                problems.append(f"gen {g.id} t{t + 1}: min-down violated")
            if not (g.p_min * u[t] - tol <= p[t] <= g.p_max * u[t] + tol):
                problems.append(f"gen {g.id} t{t + 1}: dispatch outside limits")
            if p[t] - p_prev > ramp + g.p_min * su[t] + tol:
                problems.append(f"gen {g.id} t{t + 1}: ramp-up violated")
            if p_prev - p[t] > ramp + g.p_min * sd[t] + tol:
                problems.append(f"gen {g.id} t{t + 1}: ramp-down violated")
            recomputed += _pwl_cost(g, float(p[t]), instance.options.segments) * u[t]
            recomputed += startup_cost(g.cost, g.p_max) * su[t]
            recomputed += g.cost.shutdown_cost * sd[t]
            p_prev = p[t]

    for g in instance.renewable_units():
        avail = np.asarray(instance.availability[g.id], dtype=float)
        p = solution.dispatch[g.id]
        if np.any(p < -tol) or np.any(p > avail + tol):
            problems.append(f"gen {g.id}: renewable dispatch outside availability")

    if instance.options.reserve_fraction > 0 and instance.thermal_units():
        total_load = instance.total_load()
        for t in range(horizon):
            headroom = sum(
                g.p_max * solution.commitment[g.id][t] - solution.dispatch[g.id][t]
                for g in instance.thermal_units())
            if headroom < instance.options.reserve_fraction * total_load[t] - tol:
                problems.append(f"t{t + 1}: reserve shortfall")

    base = case.base_mva
    for ln in case.lines:
        limits = instance.limit_series(ln.id)
        expected = (base / ln.reactance) * (
            solution.angles[ln.from_bus] - solution.angles[ln.to_bus])
        if np.max(np.abs(expected - solution.flows[ln.id])) > tol:
            problems.append(f"line {ln.id}: flow inconsistent with angles")
        if np.any(np.abs(solution.flows[ln.id]) > limits + 1e-6):
            problems.append(f"line {ln.id}: limit exceeded")

    for b in case.buses:
        load = instance.bus_load(b.id)
        for t in range(horizon):
            inj = sum(solution.dispatch[g.id][t] for g in case.generators
                      if g.bus == b.id)
            for ln in case.lines:
                if ln.from_bus == b.id:
                    inj -= solution.flows[ln.id][t]
                elif ln.to_bus == b.id:
                    inj += solution.flows[ln.id][t]
            if b.id in solution.shed:
                inj += solution.shed[b.id][t]
            if abs(inj - load[t]) > 1e-6:
                problems.append(f"bus {b.id} t{t + 1}: balance residual {inj - load[t]:.2e}")

    if solution.shed:
        recomputed += instance.options.shed_penalty * float(
            sum(s.sum() for s in solution.shed.values()))
    if solution.angles and abs(
            solution.angles[case.reference_bus]).max() > tol:
        problems.append("reference bus angle not zero")
    if np.isfinite(solution.objective):
        rel = abs(recomputed - solution.objective) / max(1.0, abs(solution.objective))
        if rel > 1e-6:
            problems.append(
                f"objective mismatch: reported {solution.objective:.6f}, "
                f"replayed {recomputed:.6f}")
    return problems


def write_solution_csvs(instance: ScucInstance, solution: ScucSolution,
                        directory: str | Path) -> list[Path]:
    """Write commitments, dispatch, flows, and LMP CSVs; returns the paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    stamps = instance.timestamps()
    written = []

    path = directory / "commitments.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["gen_id", "timestamp", "committed", "startup", "shutdown"])
        for g in instance.thermal_units():
            for t in range(instance.horizon):
                w.writerow([g.id, stamps[t], int(solution.commitment[g.id][t]),
                            int(solution.startup[g.id][t]),
                            int(solution.shutdown[g.id][t])])
    written.append(path)

    path = directory / "dispatch.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["gen_id", "timestamp", "dispatch_mw"])
        for g in instance.case.generators:
            for t in range(instance.horizon):
                w.writerow([g.id, stamps[t], repr(float(solution.dispatch[g.id][t]))])
    written.append(path)

    path = directory / "flows.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["line_id", "timestamp", "flow_mw", "limit_mva"])
        for ln in instance.case.lines:
            limits = instance.limit_series(ln.id)
            for t in range(instance.horizon):
                w.writerow([ln.id, stamps[t], repr(float(solution.flows[ln.id][t])),
                            repr(float(limits[t]))])
    written.append(path)

    path = directory / "lmps.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["bus_id", "timestamp", "lmp_usd_per_mwh"])
        for b in instance.case.buses:
            series = solution.lmp.get(b.id)
            for t in range(instance.horizon):
                value = float(series[t]) if series is not None else math.nan
                w.writerow([b.id, stamps[t], repr(value)])
    written.append(path)
    return written


ScucInstance.from_profiles = staticmethod(instance_from_profiles)
