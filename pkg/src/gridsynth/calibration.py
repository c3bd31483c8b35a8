"""Fit wind-farm coefficients and capacities to an hourly production target.

Minimizes the squared error between total modeled wind production and the
target series over the hour-of-day coefficients k (periodic over 24 hours,
cyclic hour-to-hour step of at most 1e-4, non-negative) and the farm
capacities (within +-50 MW of their anchors, non-negative).

The solver is projected gradient with an Armijo backtracking line search in
a diagonally scaled space (k and capacity live on wildly different scales);
the k-block projection onto the intersection of the step slabs and the
non-negativity box is computed with Dykstra's alternating projections.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .renewables import (CAPACITY_SHIFT_LIMIT, K_STEP_LIMIT, WindFarmSpec,
                         with_calibration)

_K_SCALE = 1e-4
_C_SCALE = CAPACITY_SHIFT_LIMIT


@dataclass(frozen=True, eq=False)
class CalibrationProblem:
    """Farms, their hub-height speeds, and the hourly target totals."""

    farms: tuple[WindFarmSpec, ...]
    hub_speeds: np.ndarray  # (n_farms, H) m/s
    targets: np.ndarray  # (H,) MW
    hour_offset: int = 0  # hour of day of the first sample

    def __post_init__(self) -> None:
        speeds = np.asarray(self.hub_speeds, dtype=float)
        targets = np.asarray(self.targets, dtype=float)
        if speeds.ndim != 2 or speeds.shape[0] != len(self.farms):
            raise ValueError("hub_speeds must be (n_farms, horizon)")
        if targets.shape != (speeds.shape[1],):
            raise ValueError("targets length must match the speed horizon")
        if targets.shape[0] % 24 != 0:
            raise ValueError("horizon must be a whole number of days")
        if np.any(targets < 0):
            raise ValueError("targets must be >= 0")
        object.__setattr__(self, "hub_speeds", speeds)
        object.__setattr__(self, "targets", targets)

    @property
    def horizon(self) -> int:
        return self.targets.shape[0]


@dataclass(frozen=True, eq=False)
class CalibrationResult:
    farms: tuple[WindFarmSpec, ...]
    objective: float
    initial_objective: float
    iterations: int
    converged: bool

    def production(self, problem: CalibrationProblem) -> np.ndarray:
        """Total calibrated production series for the problem's speeds."""
        k = np.stack([f.hourly_coeff for f in self.farms])
        c = np.array([f.capacity for f in self.farms])
        return _forward(k, c, problem)[1]


def _masks(problem: CalibrationProblem) -> tuple[np.ndarray, np.ndarray]:
    v = problem.hub_speeds
    cut_in = np.array([f.cut_in for f in problem.farms])[:, None]
    rated = np.array([f.rated for f in problem.farms])[:, None]
    cut_out = np.array([f.cut_out for f in problem.farms])[:, None]
    band1 = (v >= cut_in) & (v < rated)
    band2 = (v >= rated) & (v < cut_out)
    return band1, band2


def _forward(k: np.ndarray, c: np.ndarray,
             problem: CalibrationProblem) -> tuple[np.ndarray, np.ndarray]:
    """Per-farm and total production for coefficient matrix k and capacities c."""
    band1, band2 = _masks(problem)
    hod = (np.arange(problem.horizon) + problem.hour_offset) % 24
    cubic = k[:, hod] * c[:, None] * problem.hub_speeds**3
    per_farm = np.where(band1, np.minimum(cubic, c[:, None]), 0.0)
    per_farm += np.where(band2, c[:, None], 0.0)
    return per_farm, per_farm.sum(axis=0)


def _gradient(k: np.ndarray, c: np.ndarray, problem: CalibrationProblem,
              residual: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    band1, band2 = _masks(problem)
    v3 = problem.hub_speeds**3
    hod = (np.arange(problem.horizon) + problem.hour_offset) % 24
    unclipped = band1 & (k[:, hod] * v3 < 1.0)
    r = residual[None, :]
    dk_contrib = np.where(unclipped, 2.0 * r * c[:, None] * v3, 0.0)
    grad_k = np.zeros_like(k)
    for d in range(24):
        grad_k[:, d] = dk_contrib[:, hod == d].sum(axis=1)
    dc = np.where(unclipped, k[:, hod] * v3, 0.0)
    dc += np.where(band2 | (band1 & ~unclipped), 1.0, 0.0)
    grad_c = (2.0 * r * dc).sum(axis=1)
    return grad_k, grad_c


_EVEN_PAIRS = np.arange(0, 24, 2)  # slabs (0,1), (2,3), ... are disjoint
_ODD_PAIRS = np.arange(1, 24, 2)  # slabs (1,2), (3,4), ..., (23,0) are disjoint


def _project_pairs(x: np.ndarray, first: np.ndarray, limit: float) -> np.ndarray:
    """Project rows onto the product of disjoint slabs |x_d - x_{d+1}| <= limit."""
    second = (first + 1) % 24
    out = x.copy()
    diff = x[:, first] - x[:, second]
    excess = np.maximum(np.abs(diff) - limit, 0.0)
    shift = 0.5 * excess * np.sign(diff)
    out[:, first] -= shift
    out[:, second] += shift
    return out


def project_k(k: np.ndarray, step_limit: float = K_STEP_LIMIT,
              sweeps: int = 500, tol: float = 1e-16) -> np.ndarray:
    """Euclidean projection of each row onto {k >= 0, cyclic |k_d - k_{d+1}| <= limit}.

    Dykstra's algorithm over three convex sets: the even-indexed slab pairs,
    the odd-indexed slab pairs (each group is a product of disjoint slabs
    with a closed-form projection), and the non-negativity box.
    """
    x = np.atleast_2d(np.array(k, dtype=float))
    incr = [np.zeros_like(x) for _ in range(3)]
    for _ in range(sweeps):
        x_before = x.copy()
        for s, proj in enumerate((
            lambda y: _project_pairs(y, _EVEN_PAIRS, step_limit),
            lambda y: _project_pairs(y, _ODD_PAIRS, step_limit),
            lambda y: np.maximum(y, 0.0),
        )):
            y = x + incr[s]
            x = proj(y)
            incr[s] = y - x
        if np.max(np.abs(x - x_before)) < tol:
            break
    return x.reshape(np.shape(k))


def _project(k: np.ndarray, c: np.ndarray, c_lo: np.ndarray,
             c_hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return project_k(k), np.clip(c, c_lo, c_hi)


def calibrate(problem: CalibrationProblem, tol: float = 1e-8,
              max_iter: int = 10000) -> CalibrationResult:
    """Run the projected-gradient fit; the objective never increases."""
    k = np.stack([f.hourly_coeff for f in problem.farms]).astype(float)
    c0 = np.array([f.initial_capacity for f in problem.farms], dtype=float)
    c_lo = np.maximum(c0 - CAPACITY_SHIFT_LIMIT, 0.0)
    c_hi = c0 + CAPACITY_SHIFT_LIMIT
    c = np.clip(np.array([f.capacity for f in problem.farms], dtype=float),
                c_lo, c_hi)
    k, c = _project(k, c, c_lo, c_hi)

    def objective(kk: np.ndarray, cc: np.ndarray) -> tuple[float, np.ndarray]:
        _, total = _forward(kk, cc, problem)
        residual = total - problem.targets
        return float(residual @ residual), residual

    f, residual = objective(k, c)
    initial_objective = f
    step = 1.0
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        grad_k, grad_c = _gradient(k, c, problem, residual)
        # scaled-space gradient step: effective metric diag(scale^2)
        gk = grad_k * _K_SCALE**2
        gc = grad_c * _C_SCALE**2
        accepted = False
        while step >= 1e-18:
            k_new, c_new = _project(k - step * gk, c - step * gc, c_lo, c_hi)
            f_new, res_new = objective(k_new, c_new)
            fall = (np.sum(grad_k * (k_new - k)) + np.sum(grad_c * (c_new - c)))
            if f_new <= f + 1e-4 * fall and f_new <= f:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            converged = True
            break
        decrease = f - f_new
        k, c, residual = k_new, c_new, res_new
        f = f_new
        step = min(step * 2.0, 1e6)
        if decrease <= tol * max(f, 1e-30):
            converged = True
            break

    farms = tuple(with_calibration(farm, k[i], c[i])
                  for i, farm in enumerate(problem.farms))
    return CalibrationResult(farms=farms, objective=f,
                             initial_objective=initial_objective,
                             iterations=iterations, converged=converged)
