"""Generalized Heron instances and their objectives.

The problem is to minimize ``D(x) = sum_i gamma_i * d(x, C_i)`` over a
closed convex set ``S``. The smoothed objective replaces each distance by
``sqrt(d(x, C_i)**2 + eps)``.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .geometry import ConvexSet, DimensionError, as_vector


@dataclass(frozen=True, eq=False)
class TargetTerm:
    set: ConvexSet
    weight: float = 1.0

    def __post_init__(self):
        w = float(self.weight)
        if not (np.isfinite(w) and w > 0):
            raise ValueError(f"nonpositive weight: {self.weight}")
        object.__setattr__(self, "weight", w)

    def __eq__(self, other):
        return (isinstance(other, TargetTerm) and self.set == other.set
                and self.weight == other.weight)

    def __hash__(self):
        return hash((self.set, self.weight))


class UnboundedProblemWarning(UserWarning):
    pass


@dataclass(frozen=True, eq=False)
class HeronProblem:
    """Constraint set ``S`` plus weighted target sets ``C_i``.

    Construction only warns when neither ``S`` nor any target is bounded;
    the solvers refuse such instances.
    """

    constraint: ConvexSet
    targets: tuple

    def __post_init__(self):
        targets = tuple(t if isinstance(t, TargetTerm) else TargetTerm(*t)
                        for t in self.targets)
        if not targets:
            raise ValueError("at least one target is required")
        d = self.constraint.dim
        for t in targets:
            if t.set.dim != d:
                raise DimensionError(
                    f"target dimension {t.set.dim} differs from constraint dimension {d}")
        object.__setattr__(self, "targets", targets)
        kinds = np.array([t.set._kind for t in targets], dtype=np.int64)
        prms = np.array([t.set._params for t in targets])
        gammas = np.array([t.weight for t in targets])
        for a in (kinds, prms, gammas):
            a.setflags(write=False)
        object.__setattr__(self, "_kinds", kinds)
        object.__setattr__(self, "_prms", prms)
        object.__setattr__(self, "_gammas", gammas)
        if not self.is_bounded:
            warnings.warn("neither the constraint nor any target set is bounded; "
                          "a minimizer may not exist", UnboundedProblemWarning, stacklevel=3)

    @property
    def dim(self):
        return self.constraint.dim

    @property
    def weights(self):
        return self._gammas

    @property
    def is_bounded(self):
        return self.constraint.bounded or any(t.set.bounded for t in self.targets)

    def scaled(self, c):
        """Same problem with every weight multiplied by ``c``."""
        return HeronProblem(self.constraint,
                            tuple(TargetTerm(t.set, t.weight * c) for t in self.targets))

    def check_point(self, x):
        return as_vector(x, self.dim)

    def __eq__(self, other):
        return (isinstance(other, HeronProblem) and self.constraint == other.constraint
                and self.targets == other.targets)

    def __hash__(self):
        return hash((self.constraint, self.targets))


def objective(p, x):
    """``D(x)``; ``x`` need not lie in the constraint set."""
    return float(K.objective_eps(p._kinds, p._prms, p._gammas, p.check_point(x), 0.0))


def objective_eps(p, x, eps):
    """``D_eps(x) = sum_j gamma_j * sqrt(d(x, C_j)**2 + eps)``."""
    if not eps >= 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    return float(K.objective_eps(p._kinds, p._prms, p._gammas, p.check_point(x), float(eps)))


def gradient_eps(p, x, eps):
    """Exact gradient of ``D_eps``; requires ``eps > 0``.

    Targets that contain ``x`` contribute nothing.
    """
    if not eps > 0:
        raise ValueError(f"gradient requires eps > 0, got {eps}")
    return K.gradient_eps(p._kinds, p._prms, p._gammas, p.check_point(x), float(eps))
