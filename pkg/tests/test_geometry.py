import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SET_KINDS, points_inside, random_set
from heron.geometry import (Ball, Box, DimensionError, Halfspace, Hyperplane, L1Ball, Simplex,
                            Singleton, WholeSpace, as_vector, contains, distance, project)


# --- brute-force oracles -------------------------------------------------

def simplex_by_enumeration(y, scale):
    """Nearest point over every face {x_i = 0 off A, sum x_A = scale}."""
    d = len(y)
    best, best_dist = None, np.inf
    for r in range(1, d + 1):
        for A in itertools.combinations(range(d), r):
            A = list(A)
            x = np.zeros(d)
            x[A] = y[A] - (y[A].sum() - scale) / len(A)
            if np.all(x >= -1e-15):
                dist = np.linalg.norm(y - x)
                if dist < best_dist:
                    best, best_dist = np.maximum(x, 0), dist
    return best


def l1ball_by_enumeration(y, center, radius):
    z = y - center
    if np.abs(z).sum() <= radius:
        return y.copy()
    d = len(y)
    best, best_dist = None, np.inf
    for signs in itertools.product((-1.0, 1.0), repeat=d):
        s = np.array(signs)
        for r in range(1, d + 1):
            for A in itertools.combinations(range(d), r):
                A = list(A)
                # face: x_i = 0 off A, sum_A s_i x_i = radius, s_i x_i >= 0
                x = np.zeros(d)
                x[A] = z[A] - s[A] * ((s[A] * z[A]).sum() - radius) / len(A)
                if np.all(s[A] * x[A] >= -1e-15):
                    dist = np.linalg.norm(z - x)
                    if dist < best_dist:
                        best, best_dist = x, dist
    return center + best


def segment_grid_oracle(f, lo, hi, tol=1e-8):
    """Minimize a unimodal f on [lo, hi] by repeated grid refinement."""
    while hi - lo > tol:
        ts = np.linspace(lo, hi, 101)
        i = int(np.argmin([f(t) for t in ts]))
        lo, hi = ts[max(i - 1, 0)], ts[min(i + 1, 100)]
    return 0.5 * (lo + hi)


# --- operation examples ----------------------------------------------------

def test_ball_projection_radial():
    assert np.array_equal(project(Ball((0, 2, 0), 1), (0, 4, 0)), [0, 3, 0])


def test_cube_projection_clamps():
    cube = Box([-1, -5, -1], [1, -3, 1])
    assert cube == Box.cube((0, -4, 0), 2.0)
    assert np.array_equal(project(cube, (0, 2, 0)), [0, -3, 0])
    assert distance(cube, (0, 2, 0)) == 5.0


def test_simplex_projection_matches_segment_oracle():
    y = np.array([0.9, 0.7])
    t = segment_grid_oracle(lambda t: np.sum((y - (t, 1 - t)) ** 2), 0.0, 1.0)
    np.testing.assert_allclose(project(Simplex(1.0, 2), y), [t, 1 - t], atol=1e-8)


def test_ball_distance_closed_form():
    assert distance(Ball((0, 2), 1), (5, 7)) == pytest.approx(5 * np.sqrt(2) - 1, abs=1e-14)


@pytest.mark.parametrize("kind", SET_KINDS)
def test_distance_zero_on_members(kind, rng):
    s = random_set(rng, 3, kind)
    for x in points_inside(s, rng, 20):
        assert distance(s, x) <= 1e-12
    if kind in ("box", "singleton", "whole"):
        x = s.project(rng.normal(size=3))
        assert distance(s, x) == 0.0


def test_contains_examples():
    assert contains(Ball((0, 0), 1), (1, 0), 0.0)
    assert not contains(Ball((0, 0), 1), (1.1, 0), 0.05)
    assert contains(Halfspace((1, 0), 0), (-3, 9), 0.0)
    with pytest.raises(ValueError):
        contains(Ball((0, 0), 1), (0, 0), -1.0)


def test_dimension_mismatch_raises():
    with pytest.raises(DimensionError):
        project(Ball((0, 0), 1), (1, 2, 3))
    with pytest.raises(DimensionError):
        distance(Box([0, 0], [1, 1]), (1,))
    with pytest.raises(DimensionError):
        contains(WholeSpace(2), (1, 2, 3), 0.0)


@pytest.mark.parametrize("bad", [
    lambda: Ball((0, 0), 0.0),
    lambda: Ball((0, 0), -1.0),
    lambda: Box([0, 1], [1, 0]),
    lambda: Halfspace((0, 0), 1.0),
    lambda: Hyperplane((0, 0), 1.0),
    lambda: Simplex(0.0, 2),
    lambda: L1Ball((0, 0), 0.0),
    lambda: WholeSpace(0),
    lambda: Singleton((np.nan, 0)),
    lambda: Box([0, 0], [1, 1, 1]),
])
def test_invalid_sets_rejected(bad):
    with pytest.raises(ValueError):
        bad()


def test_as_vector_rejects_nonfinite():
    with pytest.raises(ValueError):
        as_vector([1.0, np.inf])
    with pytest.raises(ValueError):
        as_vector([])


def test_sets_are_immutable():
    b = Ball((0, 0), 1)
    with pytest.raises(AttributeError):
        b.radius = 2.0
    with pytest.raises(ValueError):
        b.center[0] = 1.0


def test_boundedness_flags():
    assert Ball((0,), 1).bounded and Box([0], [1]).bounded and Simplex(1, 2).bounded
    assert L1Ball((0,), 1).bounded and Singleton((0,)).bounded
    assert not Halfspace((1,), 0).bounded
    assert not Hyperplane((1,), 0).bounded
    assert not WholeSpace(1).bounded


# --- properties ----------------------------------------------------------

EXACT_KINDS = {"box", "singleton", "whole"}


@pytest.mark.parametrize("kind", SET_KINDS)
def test_idempotence(kind, rng):
    for _ in range(1000):
        d = int(rng.integers(1, 6))
        s = random_set(rng, d, kind)
        p = s.project(rng.normal(size=d) * 5)
        pp = s.project(p)
        if kind in EXACT_KINDS:
            assert np.array_equal(p, pp)
        else:
            assert np.max(np.abs(p - pp)) <= 1e-14 * max(1.0, np.max(np.abs(p)))


@pytest.mark.parametrize("kind", SET_KINDS)
def test_nonexpansive(kind, rng):
    for _ in range(1000):
        d = int(rng.integers(1, 6))
        s = random_set(rng, d, kind)
        x, y = rng.normal(size=d) * 5, rng.normal(size=d) * 5
        assert np.linalg.norm(s.project(x) - s.project(y)) <= np.linalg.norm(x - y) + 1e-12


@pytest.mark.parametrize("kind", SET_KINDS)
def test_variational_inequality(kind, rng):
    for _ in range(10):
        d = int(rng.integers(1, 6))
        s = random_set(rng, d, kind)
        x = rng.normal(size=d) * 5
        p = s.project(x)
        for q in points_inside(s, rng, 100):
            assert np.dot(x - p, q - p) <= 1e-10


@pytest.mark.parametrize("kind", SET_KINDS)
def test_distance_is_norm_of_residual(kind, rng):
    for _ in range(200):
        d = int(rng.integers(1, 6))
        s = random_set(rng, d, kind)
        x = rng.normal(size=d) * 5
        assert abs(s.distance(x) - np.linalg.norm(x - s.project(x))) <= 1e-14 * max(1, s.distance(x))


coords = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@settings(max_examples=300, deadline=None)
@given(st.lists(coords, min_size=1, max_size=3), st.floats(0.1, 5.0))
def test_simplex_matches_enumeration(y, scale):
    y = np.array(y)
    np.testing.assert_allclose(Simplex(scale, y.size).project(y),
                               simplex_by_enumeration(y, scale), atol=1e-8)


@settings(max_examples=300, deadline=None)
@given(st.lists(coords, min_size=1, max_size=3), st.floats(0.1, 5.0), st.data())
def test_l1ball_matches_enumeration(y, radius, data):
    y = np.array(y)
    c = np.array(data.draw(st.lists(coords, min_size=y.size, max_size=y.size)))
    np.testing.assert_allclose(L1Ball(c, radius).project(y),
                               l1ball_by_enumeration(y, c, radius), atol=1e-8)


def test_hyperplane_and_halfspace_closed_forms():
    h = Hyperplane((3.0, 4.0), 5.0)
    x = np.array([3.0, 4.0])
    # <n,x> - b = 20, ||n||^2 = 25
    np.testing.assert_allclose(h.project(x), x - 0.8 * np.array([3.0, 4.0]), atol=1e-15)
    assert Halfspace((3.0, 4.0), 5.0).distance(x) == pytest.approx(4.0)
    assert np.array_equal(Halfspace((3.0, 4.0), 50.0).project(x), x)


def test_equality_and_hash():
    assert Ball((0, 1), 2) == Ball([0.0, 1.0], 2.0)
    assert hash(Ball((0, 1), 2)) == hash(Ball([0.0, 1.0], 2.0))
    assert Ball((0, 1), 2) != L1Ball((0, 1), 2)
    assert Halfspace((1, 0), 0) != Hyperplane((1, 0), 0)
