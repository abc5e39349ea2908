import numpy as np
import pytest

from heron.catalog import get_example
from heron.geometry import Ball, Box, Singleton, WholeSpace
from heron.mm import Fixed, SolverConfig, Status, solve
from heron.problem import HeronProblem, TargetTerm


def test_four_entries(catalog):
    assert sorted(catalog) == ["collinear-disks", "cubes-ball", "kuhn", "three-disks"]


def test_cubes_ball(cubes_ball):
    p = cubes_ball.problem
    assert len(p.targets) == 5 and p.dim == 3
    assert p.constraint == Ball((0, 2, 0), 1.0)
    assert p.targets[0].set == Box([-1, -5, -1], [1, -3, 1])
    assert np.array_equal(cubes_ball.start, [0, 2, 0])


def test_kuhn(kuhn):
    assert np.array_equal(kuhn.problem.weights, [5, 5, 13, 13])
    assert [t.set for t in kuhn.problem.targets] == [
        Singleton((59, 0)), Singleton((20, 0)), Singleton((-20, 48)), Singleton((-20, -48))]
    assert kuhn.problem.constraint == WholeSpace(2)


def test_three_disks(three_disks):
    assert [t.set.center.tolist() for t in three_disks.problem.targets] == [[0, 2], [2, 0], [-2, 0]]
    assert np.array_equal(three_disks.start, [5, 7])


def test_collinear_disks(collinear):
    p = collinear.problem
    assert p.constraint == Ball((0, 0), 1.0)
    assert [t.set.center.tolist() for t in p.targets] == [[3, 0], [-3, 0]]
    assert np.array_equal(collinear.start, [1.5, 0.25])


def test_disks_at_two_trap_the_start():
    # with centres at (+-2, 0) the start lies inside the right disk, so an
    # eps = 0 run cannot take a single step
    p = HeronProblem(Ball((0, 0), 1.0), (TargetTerm(Ball((2, 0), 1.0)), TargetTerm(Ball((-2, 0), 1.0))))
    res = solve(p, (1.5, 0.25), SolverConfig(schedule=Fixed(0.0)))
    assert res.status is Status.SINGULAR_WEIGHT and res.iterations == 0


def test_unknown_name():
    with pytest.raises(KeyError, match="unknown example"):
        get_example("five-squares")


def test_fresh_objects():
    a, b = get_example("kuhn"), get_example("kuhn")
    assert a.problem == b.problem and a.start is not b.start
