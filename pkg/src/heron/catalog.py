"""The four worked instances, with their starting points and solver settings."""

from dataclasses import dataclass

import numpy as np

from .geometry import Ball, Box, Singleton, WholeSpace
from .mm import Fixed, PowerLeg
from .problem import HeronProblem, TargetTerm


@dataclass(frozen=True)
class Example:
    name: str
    problem: HeronProblem
    start: np.ndarray
    schedule: object
    # box used by the grid oracle
    oracle_box: tuple
    optimum: object = None


def _cubes_ball():
    centers = [(0, -4, 0), (-4, 2, -3), (-3, -4, 2), (-5, 4, 4), (-1, 8, 1)]
    p = HeronProblem(Ball((0, 2, 0), 1.0),
                     tuple(TargetTerm(Box.cube(c, 2.0), 1.0) for c in centers))
    return Example("cubes-ball", p, np.array([0.0, 2.0, 0.0]), Fixed(0.0),
                   ((-1.0, 1.0, -1.0), (1.0, 3.0, 1.0)))


def _three_disks():
    p = HeronProblem(WholeSpace(2),
                     tuple(TargetTerm(Ball(c, 1.0), 1.0) for c in [(0, 2), (2, 0), (-2, 0)]))
    return Example("three-disks", p, np.array([5.0, 7.0]), PowerLeg(),
                   ((-3.0, -3.0), (3.0, 3.0)), np.array([0.0, 1.0]))


def _collinear_disks():
    # centres at (+-3, 0) keep the start outside both disks
    p = HeronProblem(Ball((0, 0), 1.0),
                     tuple(TargetTerm(Ball(c, 1.0), 1.0) for c in [(3, 0), (-3, 0)]))
    return Example("collinear-disks", p, np.array([1.5, 0.25]), Fixed(0.0),
                   ((-1.5, -1.5), (1.5, 1.5)))


def _kuhn():
    pts = [((59, 0), 5.0), ((20, 0), 5.0), ((-20, 48), 13.0), ((-20, -48), 13.0)]
    p = HeronProblem(WholeSpace(2), tuple(TargetTerm(Singleton(c), w) for c, w in pts))
    return Example("kuhn", p, np.array([44.0, 0.0]), PowerLeg(),
                   ((-5.0, -5.0), (60.0, 5.0)), np.array([0.0, 0.0]))


_BUILDERS = {
    "cubes-ball": _cubes_ball,
    "three-disks": _three_disks,
    "collinear-disks": _collinear_disks,
    "kuhn": _kuhn,
}


def builtin_examples():
    """All catalog entries keyed by name."""
    return {name: build() for name, build in _BUILDERS.items()}


def get_example(name):
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {sorted(_BUILDERS)}") from None
