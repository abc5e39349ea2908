"""Optimality certificates and independent checks."""

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .geometry import as_vector
from .problem import gradient_eps, objective_eps

FEASIBILITY_TOL = 1e-10


@dataclass(frozen=True)
class OptimalityReport:
    residual: float
    eps_used: float
    probe_step: float
    tolerance: float

    @property
    def certified(self):
        return self.residual <= self.tolerance


def optimality_residual(p, x, eps, probe_step=1.0, tol=1e-6):
    """Projected-gradient fixed-point residual ``||x - P_S(x - t grad D_eps(x))||_inf``.

    Zero exactly when ``x`` minimizes ``D_eps`` over ``S``.
    """
    x = p.check_point(x)
    if not eps > 0:
        raise ValueError("eps must be positive")
    if not probe_step > 0:
        raise ValueError("probe_step must be positive")
    gap = p.constraint.distance(x)
    if gap > FEASIBILITY_TOL:
        raise ValueError(f"point is not in the constraint set (distance {gap:.3g})")
    y = p.constraint.project(x - probe_step * gradient_eps(p, x, eps))
    return OptimalityReport(float(np.max(np.abs(x - y))), float(eps), float(probe_step), tol)


def finite_difference_gradient(p, x, eps, h=1e-6):
    """Central differences of ``D_eps``, one coordinate at a time."""
    x = p.check_point(x)
    g = np.empty_like(x)
    for j in range(x.size):
        e = np.zeros_like(x)
        e[j] = h
        g[j] = (objective_eps(p, x + e, eps) - objective_eps(p, x - e, eps)) / (2 * h)
    return g


class EmptyGridError(ValueError):
    pass


def grid_spacing(box_lower, box_upper, resolution):
    lo = as_vector(box_lower)
    hi = as_vector(box_upper, lo.size)
    return float(np.max((hi - lo) / (resolution - 1)))


def grid_search_oracle(p, box_lower, box_upper, resolution):
    """Exhaustive minimum of ``D`` over a regular grid, for ``d <= 3``.

    A grid point counts as feasible when its distance to ``S`` is at most the
    largest axis spacing. Ties go to the lexicographically smallest grid index.
    Returns ``(point, value)``.
    """
    lo = as_vector(box_lower, p.dim)
    hi = as_vector(box_upper, p.dim)
    if p.dim > 3:
        raise ValueError("grid search supports d <= 3 only")
    resolution = int(resolution)
    if not 2 <= resolution <= 2001:
        raise ValueError("resolution must lie in [2, 2001]")
    if np.any(hi <= lo):
        raise ValueError("box must have upper > lower on every axis")
    h = grid_spacing(lo, hi, resolution)
    s = p.constraint
    idx, val = K.grid_search(p._kinds, p._prms, p._gammas, s._kind, s._params,
                             lo, hi, resolution, h)
    if idx < 0:
        raise EmptyGridError("no grid point lies within one spacing of the constraint set")
    digits = np.unravel_index(int(idx), (resolution,) * p.dim)
    step = (hi - lo) / (resolution - 1)
    return lo + np.array(digits) * step, float(val)
