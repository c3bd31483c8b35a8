"""Mixed-integer linear program container and a deterministic branch and bound.

The search is best-bound-first over the integer columns, branching on the
most fractional variable of the highest-priority class (lowest priority
number first, then lowest column index), with a rounding heuristic to seed
the incumbent.  Everything is deterministic for a fixed problem: no
randomized tie-breaking anywhere.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field

import numpy as np

from . import lp

INT_TOL = 1e-6


class MilpError(ValueError):
    """The problem description is malformed."""


@dataclass
class LinearProgram:
    """Column/row container built incrementally by model builders."""

    col_names: list[str] = field(default_factory=list)
    obj: list[float] = field(default_factory=list)
    lower: list[float] = field(default_factory=list)
    upper: list[float] = field(default_factory=list)
    integer: list[bool] = field(default_factory=list)
    priority: list[int] = field(default_factory=list)
    row_names: list[str] = field(default_factory=list)
    row_classes: list[str] = field(default_factory=list)
    row_entries: list[list[tuple[int, float]]] = field(default_factory=list)
    row_lower: list[float] = field(default_factory=list)
    row_upper: list[float] = field(default_factory=list)

    def add_col(self, name: str, lower: float = 0.0, upper: float = np.inf,
                obj: float = 0.0, integer: bool = False, priority: int = 0) -> int:
        if lower > upper:
            raise MilpError(f"column {name}: lower {lower} > upper {upper}")
        self.col_names.append(name)
        self.obj.append(obj)
        self.lower.append(lower)
        self.upper.append(upper)
        self.integer.append(integer)
        self.priority.append(priority)
        return len(self.col_names) - 1

    def add_row(self, name: str, entries: list[tuple[int, float]],
                lower: float = -np.inf, upper: float = np.inf,
                row_class: str = "") -> int:
        if lower > upper:
            raise MilpError(f"row {name}: lower {lower} > upper {upper}")
        merged: dict[int, float] = {}
        for col, coef in entries:
            if not 0 <= col < len(self.col_names):
                raise MilpError(f"row {name}: column index {col} out of range")
            merged[col] = merged.get(col, 0.0) + coef
        self.row_names.append(name)
        self.row_classes.append("" if row_class is None else row_class)
        self.row_entries.append(sorted(merged.items()))
        self.row_lower.append(lower)
        self.row_upper.append(upper)
        return len(self.row_names) - 1

    @property
    def ncols(self) -> int:
        return len(self.col_names)

    @property
    def nrows(self) -> int:
        return len(self.row_names)

    def dense_matrix(self) -> np.ndarray:
        a = np.zeros((self.nrows, self.ncols))
        for i, entries in enumerate(self.row_entries):
            for j, coef in entries:
                a[i, j] = coef
        return a

    def integer_columns(self) -> np.ndarray:
        return np.flatnonzero(np.asarray(self.integer, dtype=bool))


@dataclass
class MilpResult:
    status: str  # 'optimal' | 'feasible' | 'infeasible'
    x: np.ndarray | None = None
    objective: float | None = None
    gap: float = 0.0
    best_bound: float = -np.inf
    nodes: int = 0
    infeasible_hint: str = ""
    basis: lp.LpBasis | None = None


def _lp_solve(prob: LinearProgram, a: np.ndarray, lower: np.ndarray,
              upper: np.ndarray, warm: lp.LpBasis | None = None) -> lp.LpResult:
    return lp.solve_lp(np.asarray(prob.obj, dtype=float), lower, upper, a,
                       np.asarray(prob.row_lower, dtype=float),
                       np.asarray(prob.row_upper, dtype=float), warm=warm)


def _fractional(x: np.ndarray, int_cols: np.ndarray) -> np.ndarray:
    vals = x[int_cols]
    return int_cols[np.abs(vals - np.round(vals)) > INT_TOL]


def _branch_column(prob: LinearProgram, x: np.ndarray,
                   fractional: np.ndarray) -> int:
    best = None
    for col in fractional:
        frac = x[col] - np.floor(x[col])
        score = (prob.priority[col], -min(frac, 1.0 - frac), col)
        if best is None or score < best[0]:
            best = (score, col)
    return int(best[1])


def _hint(prob: LinearProgram, rows: list[int]) -> str:
    classes = []
    for r in rows:
        cls = prob.row_classes[r] or prob.row_names[r]
        if cls and cls not in classes:
            classes.append(cls)
    return classes[0] if classes else "bounds"


def solve_milp(prob: LinearProgram, gap: float = 1e-4,
               time_limit: float | None = None,
               node_limit: int | None = None) -> MilpResult:
    """Branch and bound over the integer columns of `prob`."""
    a = prob.dense_matrix()
    base_lower = np.asarray(prob.lower, dtype=float)
    base_upper = np.asarray(prob.upper, dtype=float)
    int_cols = prob.integer_columns()
    start = time.monotonic()

    root = _lp_solve(prob, a, base_lower, base_upper)
    if root.status == lp.INFEASIBLE:
        return MilpResult(status="infeasible", nodes=1,
                          infeasible_hint=_hint(prob, root.infeasible_rows))
    if root.status != lp.OPTIMAL:
        raise MilpError(f"root relaxation {root.status}")

    incumbent: np.ndarray | None = None
    inc_obj = np.inf
    inc_basis: lp.LpBasis | None = None
    priorities = sorted({prob.priority[c] for c in int_cols})

    def try_rounding(x: np.ndarray, node_lower: np.ndarray | None = None,
                     node_upper: np.ndarray | None = None,
                     warm: lp.LpBasis | None = None) -> None:
        """Fix integer classes to rounded values one priority level at a time.

        Lower-priority integers (e.g. indicator variables tied to the fixed
        ones through equalities) re-optimize freely at each stage, which
        keeps logic-linked groups consistent.
        """
        nonlocal incumbent, inc_obj, inc_basis
        for mode in ("nearest", "ceil"):
            lo = (base_lower if node_lower is None else node_lower).copy()
            hi = (base_upper if node_upper is None else node_upper).copy()
            guess = x
            res = None
            for level in priorities:
                cols = int_cols[[prob.priority[c] == level for c in int_cols]]
                if mode == "nearest":
                    vals = np.round(guess[cols])
                else:
                    vals = np.ceil(guess[cols] - INT_TOL)
                vals = np.clip(vals, lo[cols], hi[cols])
                lo[cols] = vals
                hi[cols] = vals
                res = _lp_solve(prob, a, lo, hi, warm)
                if res.status != lp.OPTIMAL:
                    res = None
                    break
                guess = res.x
                warm = res.basis
            if res is not None and not _fractional(res.x, int_cols).size \
                    and res.objective < inc_obj - 1e-12:
                incumbent = res.x.copy()
                incumbent[int_cols] = np.round(incumbent[int_cols])
                inc_obj = res.objective
                inc_basis = res.basis
                break

    frac = _fractional(root.x, int_cols)
    if frac.size == 0:
        x = root.x.copy()
        x[int_cols] = np.round(x[int_cols])
        return MilpResult(status="optimal", x=x, objective=root.objective,
                          gap=0.0, best_bound=root.objective, nodes=1,
                          basis=root.basis)
    try_rounding(root.x, warm=root.basis)

    seq = 0
    heap: list = []
    nodes = 1

    def push(bound: float, overrides: dict[int, tuple[float, float]],
             warm: lp.LpBasis | None) -> None:
        nonlocal seq
        seq += 1
        heapq.heappush(heap, (bound, seq, overrides, warm))

    col = _branch_column(prob, root.x, frac)
    push(root.objective, {col: (base_lower[col], float(np.floor(root.x[col])))},
         root.basis)
    push(root.objective, {col: (float(np.ceil(root.x[col])), base_upper[col])},
         root.basis)

    def rel_gap(best_bound: float) -> float:
        if not np.isfinite(inc_obj):
            return np.inf
        return (inc_obj - best_bound) / max(1.0, abs(inc_obj))

    status = "optimal"
    best_bound = root.objective
    while heap:
        best_bound = heap[0][0]
        if incumbent is not None and rel_gap(best_bound) <= gap:
            break
        if time_limit is not None and time.monotonic() - start > time_limit:
            status = "feasible"
            break
        if node_limit is not None and nodes >= node_limit:
            status = "feasible"
            break
        bound, _, overrides, warm = heapq.heappop(heap)
        if incumbent is not None and bound >= inc_obj - 1e-12:
            continue
        lo = base_lower.copy()
        hi = base_upper.copy()
        contradictory = False
        for c, (l, h) in overrides.items():
            lo[c] = max(lo[c], l)
            hi[c] = min(hi[c], h)
            if lo[c] > hi[c]:
                contradictory = True
                break
        if contradictory:
            continue
        nodes += 1
        res = _lp_solve(prob, a, lo, hi, warm)
        if res.status != lp.OPTIMAL:
            continue
        if incumbent is not None and res.objective >= inc_obj - 1e-12:
            continue
        frac = _fractional(res.x, int_cols)
        if frac.size == 0:
            x = res.x.copy()
            x[int_cols] = np.round(x[int_cols])
            incumbent = x
            inc_obj = res.objective
            inc_basis = res.basis
            continue
        if frac.size <= 2 or nodes % 16 == 0:
            try_rounding(res.x, lo, hi, res.basis)
            if incumbent is not None and res.objective >= inc_obj - 1e-12:
                continue
        col = _branch_column(prob, res.x, frac)
        down = dict(overrides)
        down[col] = (lo[col], float(np.floor(res.x[col])))
        up = dict(overrides)
        up[col] = (float(np.ceil(res.x[col])), hi[col])
        push(res.objective, down, res.basis)
        push(res.objective, up, res.basis)

    if incumbent is None:
        if heap:
            return MilpResult(status="feasible", nodes=nodes,
                              best_bound=best_bound,
                              infeasible_hint="search stopped before finding "
                                              "an integer solution")
        return MilpResult(status="infeasible", nodes=nodes,
                          infeasible_hint="integrality")
    final_bound = heap[0][0] if heap else inc_obj
    final_bound = min(final_bound, inc_obj)
    g = rel_gap(final_bound)
    if status == "optimal" and heap and g > gap:
        status = "feasible"
    return MilpResult(status=status, x=incumbent, objective=inc_obj,
                      gap=max(g, 0.0), best_bound=final_bound, nodes=nodes,
                      basis=inc_basis)
