"""Closed convex sets with exact Euclidean projections.

Points are plain 1-D ``float64`` numpy arrays. Every set is immutable and
knows its dimension, whether it is bounded, and how to project onto itself.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K


class DimensionError(ValueError):
    """Raised when a point and a set disagree on dimension."""


def as_vector(x, dim=None):
    """Return ``x`` as a finite 1-D float64 array, optionally checking ``dim``."""
    v = np.array(x, dtype=np.float64).reshape(-1)
    if v.size == 0:
        raise ValueError("vector must have at least one coordinate")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"vector has non-finite coordinates: {v}")
    if dim is not None and v.size != dim:
        raise DimensionError(f"expected dimension {dim}, got {v.size}")
    return v


@dataclass(frozen=True, eq=False)
class ConvexSet:
    """Base class. Subclasses fill ``_kind`` and ``_params`` on construction."""

    _kind: int = field(init=False, repr=False)
    _params: np.ndarray = field(init=False, repr=False)

    kind_name = ""
    bounded = True

    def _pack(self, kind, dim, *chunks):
        prm = np.zeros(2 * dim + 1)
        flat = np.concatenate([np.atleast_1d(np.asarray(c, dtype=np.float64)) for c in chunks]) \
            if chunks else np.zeros(0)
        prm[:flat.size] = flat
        prm.setflags(write=False)
        object.__setattr__(self, "_kind", kind)
        object.__setattr__(self, "_params", prm)

    @property
    def dim(self):
        return (self._params.size - 1) // 2

    def _check(self, x):
        return as_vector(x, self.dim)

    def project(self, x):
        return K.project(self._kind, self._params, self._check(x))

    def distance(self, x):
        return float(K.distance(self._kind, self._params, self._check(x)))

    def contains(self, x, tol=0.0):
        if tol < 0:
            raise ValueError("tol must be nonnegative")
        return self.distance(x) <= tol

    def __eq__(self, other):
        return (type(self) is type(other) and self._kind == other._kind
                and np.array_equal(self._params, other._params))

    def __hash__(self):
        return hash((self._kind, self._params.tobytes()))


def _frozen(v):
    v = v.copy()
    v.setflags(write=False)
    return v


@dataclass(frozen=True, eq=False)
class Singleton(ConvexSet):
    point: np.ndarray

    kind_name = "singleton"

    def __post_init__(self):
        p = _frozen(as_vector(self.point))
        object.__setattr__(self, "point", p)
        self._pack(K.SINGLETON, p.size, p)


@dataclass(frozen=True, eq=False)
class Ball(ConvexSet):
    center: np.ndarray
    radius: float

    kind_name = "ball"

    def __post_init__(self):
        c = _frozen(as_vector(self.center))
        r = float(self.radius)
        if not (np.isfinite(r) and r > 0):
            raise ValueError(f"ball radius must be positive, got {self.radius}")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", r)
        self._pack(K.BALL, c.size, c, r)


@dataclass(frozen=True, eq=False)
class Box(ConvexSet):
    lower: np.ndarray
    upper: np.ndarray

    kind_name = "box"

    def __post_init__(self):
        lo = _frozen(as_vector(self.lower))
        hi = _frozen(as_vector(self.upper, lo.size))
        if np.any(lo > hi):
            raise ValueError("box requires lower <= upper componentwise")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        self._pack(K.BOX, lo.size, lo, hi)

    @classmethod
    def cube(cls, center, side):
        c = as_vector(center)
        return cls(c - side / 2, c + side / 2)


@dataclass(frozen=True, eq=False)
class Halfspace(ConvexSet):
    """The set ``{x : <normal, x> <= offset}``."""

    normal: np.ndarray
    offset: float

    kind_name = "halfspace"
    bounded = False
    _code = K.HALFSPACE

    def __post_init__(self):
        n = _frozen(as_vector(self.normal))
        if not np.any(n):
            raise ValueError("normal must be nonzero")
        b = float(self.offset)
        if not np.isfinite(b):
            raise ValueError("offset must be finite")
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "offset", b)
        self._pack(self._code, n.size, n, b)


@dataclass(frozen=True, eq=False)
class Hyperplane(Halfspace):
    """The set ``{x : <normal, x> == offset}``."""

    kind_name = "hyperplane"
    _code = K.HYPERPLANE


@dataclass(frozen=True, eq=False)
class Simplex(ConvexSet):
    """The scaled probability simplex ``{x >= 0 : sum(x) == scale}``."""

    scale: float
    ndim: int

    kind_name = "simplex"

    def __post_init__(self):
        s = float(self.scale)
        if not (np.isfinite(s) and s > 0):
            raise ValueError(f"simplex scale must be positive, got {self.scale}")
        if int(self.ndim) < 1:
            raise ValueError("simplex dimension must be >= 1")
        object.__setattr__(self, "scale", s)
        object.__setattr__(self, "ndim", int(self.ndim))
        self._pack(K.SIMPLEX, self.ndim, s)


@dataclass(frozen=True, eq=False)
class L1Ball(ConvexSet):
    center: np.ndarray
    radius: float

    kind_name = "l1ball"

    def __post_init__(self):
        c = _frozen(as_vector(self.center))
        r = float(self.radius)
        if not (np.isfinite(r) and r > 0):
            raise ValueError(f"l1 ball radius must be positive, got {self.radius}")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", r)
        self._pack(K.L1BALL, c.size, c, r)


@dataclass(frozen=True, eq=False)
class WholeSpace(ConvexSet):
    ndim: int

    kind_name = "whole"
    bounded = False

    def __post_init__(self):
        if int(self.ndim) < 1:
            raise ValueError("dimension must be >= 1")
        object.__setattr__(self, "ndim", int(self.ndim))
        self._pack(K.WHOLE, self.ndim)


def project(s, x):
    """Nearest point of ``s`` to ``x``."""
    return s.project(x)


def distance(s, x):
    """Euclidean distance from ``x`` to ``s``."""
    return s.distance(x)


def contains(s, x, tol=0.0):
    return s.contains(x, tol)
