"""Dense bounded-variable primal simplex with row duals.

Solves  min c'x  subject to  row_lower <= A x <= row_upper,
lower <= x <= upper  (any bound may be infinite; equality rows have
row_lower == row_upper).

Each row gets one slack column so the working matrix is [A | I]; the basis
starts at the slack identity (or a caller-supplied warm basis) and an
artificial-free phase 1 drives any out-of-bound basic values back inside
their bounds by minimizing the total violation.  Entering columns follow
Dantzig's rule with an automatic switch to Bland's rule after a run of
degenerate steps.  Duals are read off the slack reduced costs: y_i is the
objective change per unit increase of row i's right-hand side.

The tableau is kept in Fortran order and updated in place with a BLAS
rank-1 call; phase-2 reduced costs are updated incrementally from the pivot
row and recomputed from scratch at refactorizations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg.blas import dger

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
ITERATION_LIMIT = "iteration_limit"

FEAS_TOL = 1e-9
OPT_TOL = 1e-9
PIVOT_TOL = 1e-9
DEGENERATE_STEP = 1e-10
BLAND_TRIGGER = 60
REFRESH_EVERY = 4000


@dataclass
class LpBasis:
    """A restartable basis snapshot."""

    basis: np.ndarray  # column index basic in each row
    at_upper: np.ndarray  # nonbasic rest position per column


@dataclass
class LpResult:
    status: str
    x: np.ndarray | None = None  # structural values
    objective: float | None = None
    duals: np.ndarray | None = None  # per row, d objective / d rhs
    reduced_costs: np.ndarray | None = None  # per structural column
    dual_objective: float | None = None
    iterations: int = 0
    infeasible_rows: list[int] = field(default_factory=list)
    basis: LpBasis | None = None


class _Tableau:
    def __init__(self, c, lower, upper, a, row_lower, row_upper,
                 warm: LpBasis | None):
        m, n = a.shape
        self.m, self.n = m, n
        self.ncols = n + m
        slack_lo = np.zeros(m)
        slack_hi = np.zeros(m)
        rhs = np.zeros(m)
        finite_hi = np.isfinite(row_upper)
        finite_lo = np.isfinite(row_lower)
        for i in range(m):
            if finite_hi[i]:
                rhs[i] = row_upper[i]
                slack_lo[i] = 0.0
                slack_hi[i] = row_upper[i] - row_lower[i] if finite_lo[i] else np.inf
            elif finite_lo[i]:
                rhs[i] = row_lower[i]
                slack_lo[i] = -np.inf
                slack_hi[i] = 0.0
            else:
                slack_lo[i] = -np.inf
                slack_hi[i] = np.inf
        self.rhs = rhs
        self.lower = np.concatenate([lower, slack_lo])
        self.upper = np.concatenate([upper, slack_hi])
        self.c = np.concatenate([c, np.zeros(m)])
        self.t0 = np.asfortranarray(np.hstack([a, np.eye(m)]))
        self.free = ~np.isfinite(self.lower) & ~np.isfinite(self.upper)

        if warm is not None and warm.basis.shape == (m,):
            self.basis = warm.basis.copy()
            self.at_upper = warm.at_upper.copy() & np.isfinite(self.upper)
        else:
            self.basis = np.arange(n, n + m)
            self.at_upper = ~np.isfinite(self.lower) & np.isfinite(self.upper)
        self.in_basis = np.zeros(self.ncols, dtype=bool)
        self.in_basis[self.basis] = True
        self.xn = np.where(self.at_upper, self.upper,
                           np.where(np.isfinite(self.lower), self.lower,
                                    np.where(np.isfinite(self.upper),
                                             self.upper, 0.0)))
        self.tab = None
        self.xb = None
        self.refactorize()

    def refactorize(self) -> None:
        b = self.t0[:, self.basis]
        self.tab = np.asfortranarray(np.linalg.solve(b, self.t0))
        nb = ~self.in_basis
        self.xb = np.linalg.solve(b, self.rhs - self.t0[:, nb] @ self.xn[nb])

    def values(self) -> np.ndarray:
        x = self.xn.copy()
        x[self.basis] = self.xb
        return x

    def violation_weights(self) -> np.ndarray:
        lb = self.lower[self.basis]
        ub = self.upper[self.basis]
        w = np.zeros(self.m)
        w[self.xb > ub + FEAS_TOL] = 1.0
        w[self.xb < lb - FEAS_TOL] = -1.0
        return w

    def infeasibility(self) -> float:
        lb = self.lower[self.basis]
        ub = self.upper[self.basis]
        return float(np.maximum(self.xb - ub, 0.0).sum()
                     + np.maximum(lb - self.xb, 0.0).sum())

    def phase2_costs(self) -> np.ndarray:
        d = self.c - self.c[self.basis] @ self.tab
        d[self.in_basis] = 0.0
        return d

    def phase1_costs(self, w: np.ndarray) -> np.ndarray:
        d = -(w @ self.tab)
        d[self.in_basis] = 0.0
        return d

    def snapshot(self) -> LpBasis:
        return LpBasis(basis=self.basis.copy(), at_upper=self.at_upper.copy())


def _entering(d: np.ndarray, tab: _Tableau, bland: bool) -> int:
    """Index of the entering column, or -1 when none improves."""
    movable = ~tab.in_basis & (tab.upper - tab.lower > 0)
    up_ok = movable & ~tab.at_upper & (d < -OPT_TOL)
    down_ok = movable & (tab.at_upper | tab.free) & (d > OPT_TOL)
    eligible = up_ok | down_ok
    idx = np.flatnonzero(eligible)
    if idx.size == 0:
        return -1
    if bland:
        return int(idx[0])
    return int(idx[np.argmax(np.abs(d[idx]))])


def _ratio_test(tab: _Tableau, j: int, sigma: float, phase1: bool
                ) -> tuple[float, int, float]:
    """Largest step for entering column j moving in direction sigma.

    Returns (t, blocking_row, bound_hit); blocking_row -1 means the entering
    column's own opposite bound blocks (a bound flip), -2 means unbounded.
    """
    delta = -sigma * tab.tab[:, j]  # d xb / d t
    lb = tab.lower[tab.basis]
    ub = tab.upper[tab.basis]
    xb = tab.xb

    up = delta > PIVOT_TOL
    down = delta < -PIVOT_TOL
    steps = np.full(tab.m, np.inf)
    hits = np.zeros(tab.m)
    if phase1:
        above = xb > ub + FEAS_TOL
        below = xb < lb - FEAS_TOL
        normal = ~above & ~below
        sel = above & down  # infeasible high blocks at ub on the way down
        steps[sel] = (xb[sel] - ub[sel]) / (-delta[sel])
        hits[sel] = ub[sel]
        sel = below & up
        steps[sel] = (lb[sel] - xb[sel]) / delta[sel]
        hits[sel] = lb[sel]
    else:
        normal = np.ones(tab.m, dtype=bool)
    sel = normal & up & np.isfinite(ub)
    steps[sel] = (ub[sel] - xb[sel]) / delta[sel]
    hits[sel] = ub[sel]
    sel = normal & down & np.isfinite(lb)
    steps[sel] = (xb[sel] - lb[sel]) / (-delta[sel])
    hits[sel] = lb[sel]
    steps = np.maximum(steps, 0.0)

    t_rows = float(steps.min()) if tab.m else np.inf
    span = tab.upper[j] - tab.lower[j]
    # an equal-step bound flip stays preferred over a pivot
    if np.isfinite(span) and span <= t_rows + 1e-12:
        return float(span), -1, 0.0
    if not np.isfinite(t_rows):
        return np.inf, -2, 0.0
    # ties between rows resolve to the stablest (largest) pivot element
    tied = np.flatnonzero(steps <= t_rows + 1e-12)
    r = int(tied[np.argmax(np.abs(delta[tied]))])
    return float(steps[r]), r, float(hits[r])


def _pivot(tab: _Tableau, j: int, r: int, sigma: float, t: float,
           leave_bound: float) -> None:
    enter_val = tab.xn[j] + sigma * t
    if t != 0.0:
        tab.xb -= t * sigma * tab.tab[:, j]
    leaving = tab.basis[r]
    tab.xn[leaving] = leave_bound
    tab.at_upper[leaving] = bool(np.isfinite(tab.upper[leaving])
                                 and leave_bound == tab.upper[leaving])
    tab.in_basis[leaving] = False
    tab.basis[r] = j
    tab.in_basis[j] = True
    tab.xb[r] = enter_val
    piv = tab.tab[r, j]
    prow = tab.tab[r] / piv
    col = tab.tab[:, j].copy()
    col[r] = 0.0
    # in-place rank-1 update: tab -= col * prow'
    tab.tab = dger(-1.0, col, prow, a=tab.tab, overwrite_a=1)
    tab.tab[r] = prow
    tab.tab[:, j] = 0.0
    tab.tab[r, j] = 1.0


def _flip(tab: _Tableau, j: int, sigma: float, t: float) -> None:
    if t != 0.0:
        tab.xb -= t * sigma * tab.tab[:, j]
    tab.xn[j] = tab.xn[j] + sigma * t
    tab.at_upper[j] = not tab.at_upper[j]


def solve_lp(c, lower, upper, a, row_lower, row_upper,
             maxiter: int = 200000, warm: LpBasis | None = None) -> LpResult:
    """Solve the bounded LP; see module docstring for conventions."""
    c = np.asarray(c, dtype=float)
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    a = np.asarray(a, dtype=float)
    row_lower = np.asarray(row_lower, dtype=float)
    row_upper = np.asarray(row_upper, dtype=float)
    if np.any(lower > upper + FEAS_TOL):
        return LpResult(status=INFEASIBLE)
    if a.size == 0:
        a = a.reshape((len(row_lower), len(c)))

    try:
        tab = _Tableau(c, lower, upper, a, row_lower, row_upper, warm)
    except np.linalg.LinAlgError:
        tab = _Tableau(c, lower, upper, a, row_lower, row_upper, None)
    iterations = 0
    degenerate_run = 0
    bland = False
    refreshed = 0
    was_phase1 = True
    d = None

    while iterations < maxiter:
        w = tab.violation_weights()
        phase1 = bool(np.any(w != 0.0))
        if phase1:
            d = tab.phase1_costs(w)
        elif was_phase1 or d is None:
            d = tab.phase2_costs()
        was_phase1 = phase1

        j = _entering(d, tab, bland)
        if j < 0:
            if phase1:
                if tab.infeasibility() > 1e-7 * max(1.0, float(np.abs(tab.rhs).max())):
                    bad = [int(r) for r in range(tab.m)
                           if not (tab.lower[tab.basis[r]] - 1e-7
                                   <= tab.xb[r]
                                   <= tab.upper[tab.basis[r]] + 1e-7)]
                    return LpResult(status=INFEASIBLE, iterations=iterations,
                                    infeasible_rows=bad,
                                    basis=tab.snapshot())
                # violations below tolerance: clamp and carry on in phase 2
                tab.xb = np.clip(tab.xb, tab.lower[tab.basis] - FEAS_TOL,
                                 tab.upper[tab.basis] + FEAS_TOL)
                was_phase1 = True
                continue
            # apparent optimum: refresh once to confirm against drift
            if refreshed < 3:
                tab.refactorize()
                refreshed += 1
                if np.any(tab.violation_weights() != 0.0):
                    was_phase1 = True
                    continue
                d = tab.phase2_costs()
                if _entering(d, tab, False) >= 0:
                    continue
            return _result(tab, iterations)

        sigma = 1.0 if d[j] < 0 else -1.0
        t, r, bound = _ratio_test(tab, j, sigma, phase1)
        if r == -2:
            if phase1:
                # cannot happen with an improving direction; numerical fallback
                tab.refactorize()
                refreshed += 1
                d = None
                was_phase1 = True
                if refreshed > 5:
                    return LpResult(status=INFEASIBLE, iterations=iterations)
                continue
            return LpResult(status=UNBOUNDED, iterations=iterations)
        if t < DEGENERATE_STEP:
            degenerate_run += 1
            if degenerate_run > BLAND_TRIGGER:
                bland = True
        else:
            degenerate_run = 0
            bland = False
        if r == -1:
            _flip(tab, j, sigma, t)
        else:
            dj = d[j]
            _pivot(tab, j, r, sigma, t, bound)
            if not phase1:
                # incremental reduced costs from the updated pivot row
                d -= dj * tab.tab[r]
                d[tab.in_basis] = 0.0
        iterations += 1
        if iterations % REFRESH_EVERY == 0:
            tab.refactorize()
            d = None
            was_phase1 = True

    return LpResult(status=ITERATION_LIMIT, iterations=iterations)


def _result(tab: _Tableau, iterations: int) -> LpResult:
    x = tab.values()
    obj = float(tab.c[:tab.n] @ x[:tab.n])
    d = tab.phase2_costs()
    duals = -d[tab.n:]
    dual_obj = float(duals @ tab.rhs + d @ x)
    return LpResult(status=OPTIMAL, x=x[:tab.n].copy(), objective=obj,
                    duals=duals.copy(), reduced_costs=d[:tab.n].copy(),
                    dual_objective=dual_obj, iterations=iterations,
                    basis=tab.snapshot())
