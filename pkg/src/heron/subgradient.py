"""Projected subgradient baseline.

``x_{m+1} = P_S[x_m - eta_m * sum_i gamma_i v_i]`` where ``v_i`` is the unit
vector from ``P_{C_i}(x_m)`` to ``x_m``, or zero when ``x_m`` is in ``C_i``.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .mm import SolveResult, SolverConfig, Status, Trajectory, _require_bounded


@dataclass(frozen=True)
class Harmonic:
    """``eta_m = scale / m``."""

    scale: float = 1.0

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("scale must be positive")


@dataclass(frozen=True)
class Custom:
    """Explicit step sizes; ``steps[m-1]`` is used for step ``m``."""

    steps: tuple

    def __post_init__(self):
        steps = tuple(float(s) for s in self.steps)
        if not steps or any(not (np.isfinite(s) and s > 0) for s in steps):
            raise ValueError("step sizes must be positive and finite")
        object.__setattr__(self, "steps", steps)


def decade_checkpoints(last):
    """Iterate indices 1, 10, 100, ... up to ``last``, plus ``last`` itself."""
    marks = []
    m = 1
    while m < last:
        marks.append(m)
        m *= 10
    marks.append(last)
    return marks


def subgradient_step(p, x, eta):
    if not eta > 0:
        raise ValueError("eta must be positive")
    s = p.constraint
    return K.subgradient_step(p._kinds, p._prms, p._gammas, s._kind, s._params,
                              p.check_point(x), float(eta))


def subgradient_solve(p, x0, rule=None, cfg=None, checkpoints=None, stop_on_step=False):
    """Run ``cfg.max_iterations`` subgradient steps from ``x0``.

    Runs the whole budget unless ``stop_on_step`` is set, in which case a
    sup-norm step at or below ``cfg.step_tolerance`` ends the run early.
    When ``cfg.record_trajectory`` is set, iterates are recorded at the
    given ``checkpoints`` (iterate indices, 1 = start), defaulting to
    decades. Status is ``MAX_ITERATIONS`` when the budget is spent.
    """
    rule = rule or Harmonic()
    cfg = cfg or SolverConfig()
    _require_bounded(p)
    x = p.check_point(x0)
    steps = int(cfg.max_iterations)
    last = steps + 1
    if isinstance(rule, Custom):
        if len(rule.steps) < steps:
            raise ValueError(f"need {steps} step sizes, got {len(rule.steps)}")
        scale, etas = 0.0, np.array(rule.steps)
    else:
        scale, etas = rule.scale, np.zeros(0)
    tol = cfg.step_tolerance if stop_on_step else 0.0

    traj = None
    if cfg.record_trajectory:
        traj = Trajectory()
        marks = sorted({m for m in (checkpoints or decade_checkpoints(last)) if 1 <= m <= last})
    else:
        marks = [last]
    if not marks or marks[-1] != last:
        marks.append(last)

    s = p.constraint
    args = (p._kinds, p._prms, p._gammas, s._kind, s._params)
    m, step = 1, 0.0
    status = Status.MAX_ITERATIONS
    for mark in marks:
        if mark > m:
            x, m, step = K.subgradient_run(*args, x, m, mark, scale, etas, tol)
        if traj is not None and (not traj or traj[-1].iteration != m):
            traj.record(p, m, x, 0.0, step)
        if tol > 0 and m > 1 and step <= tol:
            status = Status.CONVERGED
            break
    if m == 1:
        x = s.project(x)
    return SolveResult(x, status, m - 1, traj)
