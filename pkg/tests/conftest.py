import numpy as np
import pytest

from heron.catalog import builtin_examples, get_example
from heron.geometry import (Ball, Box, Halfspace, Hyperplane, L1Ball, Simplex, Singleton,
                            WholeSpace)
from heron.problem import HeronProblem, TargetTerm


@pytest.fixture(scope="session")
def catalog():
    return builtin_examples()


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


@pytest.fixture(scope="session")
def three_disks():
    return get_example("three-disks")


@pytest.fixture(scope="session")
def kuhn():
    return get_example("kuhn")


@pytest.fixture(scope="session")
def cubes_ball():
    return get_example("cubes-ball")


@pytest.fixture(scope="session")
def collinear():
    return get_example("collinear-disks")


def random_set(rng, d, kind):
    if kind == "singleton":
        return Singleton(rng.normal(size=d) * 3)
    if kind == "ball":
        return Ball(rng.normal(size=d) * 3, rng.uniform(0.2, 2.0))
    if kind == "box":
        lo = rng.normal(size=d) * 3
        return Box(lo, lo + rng.uniform(0.0, 2.0, size=d))
    if kind == "halfspace":
        return Halfspace(rng.normal(size=d), rng.normal())
    if kind == "hyperplane":
        return Hyperplane(rng.normal(size=d), rng.normal())
    if kind == "simplex":
        return Simplex(rng.uniform(0.5, 3.0), d)
    if kind == "l1ball":
        return L1Ball(rng.normal(size=d) * 2, rng.uniform(0.2, 2.0))
    return WholeSpace(d)


SET_KINDS = ["singleton", "ball", "box", "halfspace", "hyperplane", "simplex", "l1ball", "whole"]
TARGET_KINDS = ["singleton", "ball", "box", "halfspace", "l1ball", "simplex"]


def random_problem(rng, d=None, k=None):
    """Random bounded instance with d <= 5 and k <= 6."""
    d = d or int(rng.integers(1, 6))
    k = k or int(rng.integers(1, 7))
    targets = []
    for _ in range(k):
        kind = TARGET_KINDS[rng.integers(len(TARGET_KINDS))]
        targets.append(TargetTerm(random_set(rng, d, kind), rng.uniform(0.2, 3.0)))
    ckind = ["whole", "ball", "box", "halfspace"][rng.integers(4)]
    constraint = random_set(rng, d, ckind)
    if not constraint.bounded and not any(t.set.bounded for t in targets):
        targets[0] = TargetTerm(random_set(rng, d, "ball"), 1.0)
    return HeronProblem(constraint, tuple(targets))


def points_inside(s, rng, n):
    """Points of ``s``: projections of scattered points plus, for the
    solid sets, interior samples."""
    d = s.dim
    pts = [s.project(rng.normal(size=d) * 4) for _ in range(n)]
    if isinstance(s, Ball):
        for i in range(0, n, 2):
            u = rng.normal(size=d)
            pts[i] = s.center + u / np.linalg.norm(u) * s.radius * rng.uniform() ** (1 / d)
    elif isinstance(s, Box):
        for i in range(0, n, 2):
            pts[i] = rng.uniform(s.lower, s.upper)
    return pts


# acceptance lines, echoed in the terminal summary
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
