"""Majorization-minimization solver with epsilon continuation.

Each MM step projects every iterate onto the target sets, averages those
projections with weights ``gamma_i / sqrt(d(x, C_i)**2 + eps)`` and projects
the average onto the constraint set. With singleton targets and no
constraint this is Weiszfeld's iteration.
"""

import enum
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from . import _kernels as K
from .problem import HeronProblem, objective, objective_eps


class Status(enum.Enum):
    CONVERGED = "Converged"
    MAX_ITERATIONS = "MaxIterations"
    SINGULAR_WEIGHT = "SingularWeight"


class SingularWeightError(ArithmeticError):
    """An iterate sits on a target set while ``eps == 0``."""


@dataclass(frozen=True)
class Fixed:
    eps: float = 0.0

    def __post_init__(self):
        if not self.eps >= 0:
            raise ValueError("eps must be nonnegative")


@dataclass(frozen=True)
class PowerLeg:
    """Legs with ``eps = max(start * decay**(leg - 1), floor)``, then ``eps = 0``.

    The defaults give ``eps_m = max(10**-m, 1e-16)``.
    """

    start: float = 1e-1
    decay: float = 1e-1
    floor: float = 1e-16
    inner_tol: float = 1e-10

    def __post_init__(self):
        if not self.start > 0:
            raise ValueError("start must be positive")
        if not 0 < self.decay < 1:
            raise ValueError("decay must lie in (0, 1)")
        if not 0 <= self.floor <= self.start:
            raise ValueError("floor must satisfy 0 <= floor <= start")
        if not self.inner_tol > 0:
            raise ValueError("inner_tol must be positive")

    def legs(self):
        leg = 1
        while True:
            eps = self.start * self.decay ** (leg - 1)
            # powers of decay drift by an ulp; snap onto the floor
            if eps <= self.floor * (1 + 1e-9):
                eps = self.floor
            yield eps
            if eps <= self.floor:
                return
            leg += 1


@dataclass(frozen=True)
class SolverConfig:
    max_iterations: int = 10_000
    step_tolerance: float = 1e-10
    schedule: object = field(default_factory=Fixed)
    record_trajectory: bool = False

    def __post_init__(self):
        if int(self.max_iterations) < 1:
            raise ValueError("max_iterations must be >= 1")
        if not self.step_tolerance > 0:
            raise ValueError("step_tolerance must be positive")


@dataclass(frozen=True)
class Record:
    iteration: int
    x: np.ndarray
    eps: float
    objective: float
    objective_eps: float
    step_norm: float


class Trajectory(list):
    """Iterate records; row 1 is the starting point."""

    def points(self):
        return np.array([r.x for r in self])

    def record(self, p, iteration, x, eps, step_norm):
        self.append(Record(iteration, x.copy(), float(eps), objective(p, x),
                           objective_eps(p, x, eps), float(step_norm)))


@dataclass
class SolveResult:
    x: np.ndarray
    status: Status
    iterations: int
    trajectory: Optional[Trajectory] = None
    # continuation only: (eps, leg solution, steps spent in the leg)
    legs: List[Tuple[float, np.ndarray, int]] = field(default_factory=list)

    @property
    def converged(self):
        return self.status is Status.CONVERGED


def _require_bounded(p):
    if not p.is_bounded:
        raise ValueError("refusing to solve: neither the constraint nor any target is bounded")


def mm_step(p, x, eps):
    """One MM update from ``x``.

    Raises :class:`SingularWeightError` when ``eps == 0`` and ``x`` lies
    within 1e-13 of some target.
    """
    if not eps >= 0:
        raise ValueError("eps must be nonnegative")
    x = p.check_point(x)
    s = p.constraint
    y, singular = K.mm_step(p._kinds, p._prms, p._gammas, s._kind, s._params, x, float(eps))
    if singular:
        raise SingularWeightError(f"iterate {x} lies in a target set with eps = 0")
    return y


def mm_weights(p, x, eps):
    """Convex-combination coefficients used by :func:`mm_step` (``eps > 0``)."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    return K.mm_weights(p._kinds, p._prms, p._gammas, p.check_point(x), float(eps))


def _fixed_eps_loop(p, x, eps, tol, max_steps, traj, it):
    """Iterate MM at one eps. ``it`` is the index of ``x``.

    Returns (x, status, steps taken).
    """
    s = p.constraint
    args = (p._kinds, p._prms, p._gammas, s._kind, s._params)
    for n in range(1, max_steps + 1):
        y, singular = K.mm_step(*args, x, eps)
        if singular:
            return x, Status.SINGULAR_WEIGHT, n - 1
        step = float(np.max(np.abs(y - x)))
        x = y
        if traj is not None:
            traj.record(p, it + n, x, eps, step)
        if step <= tol:
            return x, Status.CONVERGED, n
    return x, Status.MAX_ITERATIONS, max_steps


def mm_solve_fixed_eps(p, x0, eps, cfg=None):
    """Run MM at a fixed ``eps`` until the sup-norm step drops to ``cfg.step_tolerance``.

    ``x0`` is used as given: every iterate after the first is a projection
    onto ``S``, so only the starting row may be infeasible. A singular
    weight ends the run with status ``SINGULAR_WEIGHT`` and the last valid
    iterate (projected onto ``S`` if that is still the start).
    """
    cfg = cfg or SolverConfig()
    _require_bounded(p)
    if not eps >= 0:
        raise ValueError("eps must be nonnegative")
    x0 = p.check_point(x0)
    traj = Trajectory() if cfg.record_trajectory else None
    if traj is not None:
        traj.record(p, 1, x0, eps, 0.0)
    x, status, steps = _fixed_eps_loop(p, x0, float(eps), cfg.step_tolerance,
                                       int(cfg.max_iterations), traj, 1)
    if steps == 0:
        x = p.constraint.project(x)
    return SolveResult(x, status, steps, traj)


def mm_solve_continuation(p, x0, cfg=None):
    """Solve a sequence of smoothed problems with shrinking eps.

    Each leg starts from the previous leg's answer and stops at
    ``schedule.inner_tol``. A final eps = 0 leg polishes the floor-leg
    answer to ``cfg.step_tolerance``; if it meets a singular weight the
    floor-leg answer is returned as converged (the polish steps still count
    and stay in the trajectory). ``max_iterations`` bounds
    the total step count across legs.
    """
    cfg = cfg or SolverConfig(schedule=PowerLeg())
    sched = cfg.schedule
    if not isinstance(sched, PowerLeg):
        raise TypeError("continuation needs a PowerLeg schedule")
    _require_bounded(p)
    x = p.check_point(x0)
    traj = Trajectory() if cfg.record_trajectory else None
    budget = int(cfg.max_iterations)
    used = 0
    legs = []
    eps_list = list(sched.legs())
    if traj is not None:
        traj.record(p, 1, x, eps_list[0], 0.0)
    for eps in eps_list:
        x, status, steps = _fixed_eps_loop(p, x, eps, sched.inner_tol, budget - used,
                                           traj, used + 1)
        used += steps
        legs.append((eps, x.copy(), steps))
        if status is not Status.CONVERGED:
            if used == 0:
                x = p.constraint.project(x)
            return SolveResult(x, status, used, traj, legs)
        if used >= budget:
            return SolveResult(x, Status.MAX_ITERATIONS, used, traj, legs)
    if legs[-1][0] == 0.0:
        return SolveResult(x, Status.CONVERGED, used, traj, legs)

    floor_x = x
    x, status, steps = _fixed_eps_loop(p, x, 0.0, cfg.step_tolerance, budget - used,
                                       traj, used + 1)
    used += steps
    legs.append((0.0, x.copy(), steps))
    if status is Status.SINGULAR_WEIGHT:
        # the trajectory keeps the abandoned polish steps for inspection
        return SolveResult(floor_x, Status.CONVERGED, used, traj, legs)
    return SolveResult(x, status, used, traj, legs)


def solve(p, x0, cfg=None):
    """Dispatch on the schedule type."""
    cfg = cfg or SolverConfig()
    if isinstance(cfg.schedule, PowerLeg):
        return mm_solve_continuation(p, x0, cfg)
    return mm_solve_fixed_eps(p, x0, cfg.schedule.eps, cfg)
