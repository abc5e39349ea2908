"""Compiled projection, objective and iteration kernels.

Every convex set is packed as an integer kind code plus a float parameter
row of width ``2*d + 1``:

=========== ===============================================
kind        parameter row
=========== ===============================================
SINGLETON   point[0:d]
BALL        center[0:d], radius at [d]
BOX         lower[0:d], upper[d:2d]
HALFSPACE   normal[0:d], offset at [d]   (<normal, x> <= offset)
HYPERPLANE  normal[0:d], offset at [d]   (<normal, x> == offset)
SIMPLEX     scale at [0]                 (x >= 0, sum(x) == scale)
L1BALL      center[0:d], radius at [d]
WHOLE       unused
=========== ===============================================

The pure-Python wrappers in :mod:`heron.geometry` and :mod:`heron.problem`
call into these; the solvers run their inner loops here.
"""

import math

import numpy as np
from numba import njit

SINGLETON = 0
BALL = 1
BOX = 2
HALFSPACE = 3
HYPERPLANE = 4
SIMPLEX = 5
L1BALL = 6
WHOLE = 7

# d(x, C_i) below this is treated as x in C_i
MEMBERSHIP_TOL = 1e-13


@njit(cache=True)
def _simplex_into(y, scale, out):
    # sort-and-threshold projection onto {x >= 0, sum(x) == scale}
    d = y.shape[0]
    u = np.sort(y)[::-1]
    csum = 0.0
    theta = 0.0
    for j in range(d):
        csum += u[j]
        t = (csum - scale) / (j + 1)
        if u[j] - t > 0.0:
            theta = t
    for i in range(d):
        v = y[i] - theta
        out[i] = v if v > 0.0 else 0.0


@njit(cache=True)
def _l1ball_into(prm, x, out):
    # kept out of project_into: the scratch allocation slows the hot path
    d = x.shape[0]
    r = prm[d]
    y = np.empty(d)
    tot = 0.0
    for i in range(d):
        y[i] = abs(x[i] - prm[i])
        tot += y[i]
    if tot <= r:
        for i in range(d):
            out[i] = x[i]
    else:
        _simplex_into(y, r, out)
        for i in range(d):
            out[i] = prm[i] + np.sign(x[i] - prm[i]) * out[i]


@njit(cache=True)
def project_into(kind, prm, x, out):
    """Write the projection of ``x`` into ``out`` (no allocation except simplex/l1)."""
    d = x.shape[0]
    if kind == SINGLETON:
        for i in range(d):
            out[i] = prm[i]
    elif kind == BALL:
        r = prm[d]
        sq = 0.0
        for i in range(d):
            t = x[i] - prm[i]
            sq += t * t
        n = math.sqrt(sq)
        if n <= r:
            for i in range(d):
                out[i] = x[i]
        else:
            scale = r / n
            for i in range(d):
                out[i] = prm[i] + (x[i] - prm[i]) * scale
    elif kind == BOX:
        for i in range(d):
            v = x[i]
            if v < prm[i]:
                v = prm[i]
            if v > prm[d + i]:
                v = prm[d + i]
            out[i] = v
    elif kind == HALFSPACE or kind == HYPERPLANE:
        s = 0.0
        nn = 0.0
        for i in range(d):
            s += prm[i] * x[i]
            nn += prm[i] * prm[i]
        s -= prm[d]
        if kind == HALFSPACE and s <= 0.0:
            for i in range(d):
                out[i] = x[i]
        else:
            f = s / nn
            for i in range(d):
                out[i] = x[i] - f * prm[i]
    elif kind == SIMPLEX:
        _simplex_into(x, prm[0], out)
    elif kind == L1BALL:
        _l1ball_into(prm, x, out)
    else:
        for i in range(d):
            out[i] = x[i]


@njit(cache=True)
def project(kind, prm, x):
    out = np.empty(x.shape[0])
    project_into(kind, prm, x, out)
    return out


@njit(cache=True)
def sqdist(kind, prm, x, buf):
    project_into(kind, prm, x, buf)
    s = 0.0
    for i in range(x.shape[0]):
        t = x[i] - buf[i]
        s += t * t
    return s


@njit(cache=True)
def distance(kind, prm, x):
    return math.sqrt(sqdist(kind, prm, x, np.empty(x.shape[0])))


@njit(cache=True)
def _objective(kinds, prms, gammas, x, eps, buf):
    total = 0.0
    for i in range(kinds.shape[0]):
        sq = sqdist(kinds[i], prms[i], x, buf)
        if eps == 0.0:
            total += gammas[i] * math.sqrt(sq)
        else:
            total += gammas[i] * math.sqrt(sq + eps)
    return total


@njit(cache=True)
def objective_eps(kinds, prms, gammas, x, eps):
    return _objective(kinds, prms, gammas, x, eps, np.empty(x.shape[0]))


@njit(cache=True)
def gradient_eps(kinds, prms, gammas, x, eps):
    g = np.zeros(x.shape[0])
    for i in range(kinds.shape[0]):
        diff = x - project(kinds[i], prms[i], x)
        sq = np.sum(diff * diff)
        if sq > 0.0:
            g += (gammas[i] / math.sqrt(sq + eps)) * diff
    return g


@njit(cache=True)
def mm_step(kinds, prms, gammas, skind, sprm, x, eps):
    """One MM update. Returns (new point, singular flag)."""
    k = kinds.shape[0]
    d = x.shape[0]
    ps = np.empty((k, d))
    w = np.empty(k)
    for i in range(k):
        project_into(kinds[i], prms[i], x, ps[i])
        sq = 0.0
        for j in range(d):
            t = x[j] - ps[i, j]
            sq += t * t
        if eps == 0.0:
            dist = math.sqrt(sq)
            if dist < MEMBERSHIP_TOL:
                return x.copy(), True
            w[i] = gammas[i] / dist
        else:
            w[i] = gammas[i] / math.sqrt(sq + eps)
    wsum = 0.0
    for i in range(k):
        wsum += w[i]
    z = np.zeros(d)
    for i in range(k):
        z += (w[i] / wsum) * ps[i]
    return project(skind, sprm, z), False


@njit(cache=True)
def mm_weights(kinds, prms, gammas, x, eps):
    k = kinds.shape[0]
    w = np.empty(k)
    for i in range(k):
        dist = distance(kinds[i], prms[i], x)
        w[i] = gammas[i] / math.sqrt(dist * dist + eps)
    return w / np.sum(w)


@njit(cache=True)
def subgradient_step(kinds, prms, gammas, skind, sprm, x, eta):
    v = np.zeros(x.shape[0])
    for i in range(kinds.shape[0]):
        diff = x - project(kinds[i], prms[i], x)
        dist = math.sqrt(np.sum(diff * diff))
        if dist > MEMBERSHIP_TOL:
            v += (gammas[i] / dist) * diff
    return project(skind, sprm, x - eta * v)


@njit(cache=True)
def subgradient_run(kinds, prms, gammas, skind, sprm, x, m_start, m_stop,
                    scale, etas, step_tol):
    """Advance from iterate ``m_start`` to iterate ``m_stop``.

    Step m uses ``etas[m-1]`` when ``etas`` is nonempty, else ``scale/m``.
    Stops early when ``step_tol > 0`` and a sup-norm step falls below it.
    Returns (x, reached iterate index, last step norm).
    """
    step = 0.0
    m = m_start
    while m < m_stop:
        if etas.shape[0] > 0:
            eta = etas[m - 1]
        else:
            eta = scale / m
        xn = subgradient_step(kinds, prms, gammas, skind, sprm, x, eta)
        step = np.max(np.abs(xn - x))
        x = xn
        m += 1
        if step_tol > 0.0 and step <= step_tol:
            break
    return x, m, step


@njit(cache=True)
def batch_sqdist(kind, prm, pts, out):
    """Squared distances of each row of ``pts`` to one set.

    The kind dispatch sits outside the point loop; per-point calls into a
    generic dispatcher cost several times the arithmetic.
    """
    n, d = pts.shape
    if kind == BALL:
        r = prm[d]
        for j in range(n):
            sq = 0.0
            for i in range(d):
                t = pts[j, i] - prm[i]
                sq += t * t
            nrm = math.sqrt(sq)
            if nrm <= r:
                out[j] = 0.0
            else:
                scale = r / nrm
                acc = 0.0
                for i in range(d):
                    t = pts[j, i] - (prm[i] + (pts[j, i] - prm[i]) * scale)
                    acc += t * t
                out[j] = acc
    elif kind == BOX:
        for j in range(n):
            acc = 0.0
            for i in range(d):
                v = pts[j, i]
                if v < prm[i]:
                    v = prm[i]
                if v > prm[d + i]:
                    v = prm[d + i]
                t = pts[j, i] - v
                acc += t * t
            out[j] = acc
    elif kind == SINGLETON:
        for j in range(n):
            acc = 0.0
            for i in range(d):
                t = pts[j, i] - prm[i]
                acc += t * t
            out[j] = acc
    elif kind == WHOLE:
        for j in range(n):
            out[j] = 0.0
    else:
        buf = np.empty(d)
        for j in range(n):
            out[j] = sqdist(kind, prm, pts[j], buf)


@njit(cache=True)
def grid_search(kinds, prms, gammas, skind, sprm, lower, upper, resolution,
                feas_tol):
    """Exhaustive argmin of the objective over feasible grid points.

    Works one slab (fixed first coordinate) at a time. Points are visited in
    row-major order and only a strictly smaller value replaces the
    incumbent, so ties resolve to the smallest flat index.
    """
    d = lower.shape[0]
    spacing = (upper - lower) / (resolution - 1)
    per_slab = resolution ** (d - 1)
    pts = np.empty((per_slab, d))
    for j in range(per_slab):
        rem = j
        for ax in range(d - 1, 0, -1):
            pts[j, ax] = lower[ax] + (rem % resolution) * spacing[ax]
            rem //= resolution
    feas_sq = feas_tol * feas_tol
    ssq = np.empty(per_slab)
    tsq = np.empty(per_slab)
    tot = np.empty(per_slab)
    best_val = np.inf
    best_idx = -1
    for s in range(resolution):
        x0 = lower[0] + s * spacing[0]
        for j in range(per_slab):
            pts[j, 0] = x0
        batch_sqdist(skind, sprm, pts, ssq)
        tot[:] = 0.0
        # targets in order 1..k, matching the summation order of _objective
        for k in range(kinds.shape[0]):
            batch_sqdist(kinds[k], prms[k], pts, tsq)
            g = gammas[k]
            for j in range(per_slab):
                tot[j] += g * math.sqrt(tsq[j])
        for j in range(per_slab):
            if ssq[j] <= feas_sq and tot[j] < best_val:
                best_val = tot[j]
                best_idx = s * per_slab + j
    return best_idx, best_val
