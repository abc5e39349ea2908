"""Problem documents and trajectory CSV files.

A problem document is line oriented::

    heron-problem 1
    dimension = 2

    [constraint]            # optional, defaults to the whole space
    kind = ball
    center = 0, 0
    radius = 1

    [target]                # one stanza per target set
    kind = singleton
    point = 3, 0
    weight = 1              # optional, defaults to 1

    [solver]                # optional
    method = mm             # mm | subgradient
    start = 1.5, 0.25
    eps_start = 0           # 0 = fixed eps = 0; > 0 = continuation
    eps_decay = 0.1
    eps_floor = 1e-16
    inner_tol = 1e-10
    max_iterations = 1000
    tolerance = 1e-10

``#`` starts a comment. Set kinds and their keys:

=========== =====================
kind        keys
=========== =====================
singleton   point
ball        center, radius
box         lower, upper
halfspace   normal, offset
hyperplane  normal, offset
simplex     scale
l1ball      center, radius
whole       (none)
=========== =====================
"""

import csv
import math
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from .geometry import Ball, Box, Halfspace, Hyperplane, L1Ball, Simplex, Singleton, WholeSpace
from .mm import Record, Trajectory
from .problem import HeronProblem, TargetTerm

FORMAT_VERSION = 1
HEADER = "heron-problem"

SET_KEYS = {
    "singleton": ("point",),
    "ball": ("center", "radius"),
    "box": ("lower", "upper"),
    "halfspace": ("normal", "offset"),
    "hyperplane": ("normal", "offset"),
    "simplex": ("scale",),
    "l1ball": ("center", "radius"),
    "whole": (),
}
VECTOR_KEYS = {"point", "center", "lower", "upper", "normal", "start"}
SOLVER_KEYS = ("method", "start", "eps_start", "eps_decay", "eps_floor", "inner_tol",
               "max_iterations", "tolerance")


class ProblemParseError(ValueError):
    """Malformed problem document. ``code`` names the failure class."""

    def __init__(self, code, message, line=0, column=0):
        self.code = code
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{where}{message} [{code}]")


@dataclass
class SolverSettings:
    method: str = "mm"
    start: Optional[np.ndarray] = None
    eps_start: Optional[float] = None
    eps_decay: Optional[float] = None
    eps_floor: Optional[float] = None
    inner_tol: Optional[float] = None
    max_iterations: Optional[int] = None
    tolerance: Optional[float] = None

    def __eq__(self, other):
        if not isinstance(other, SolverSettings):
            return NotImplemented
        for f in fields(self):
            a, b = getattr(self, f.name), getattr(other, f.name)
            if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
                if a is None or b is None or not np.array_equal(a, b):
                    return False
            elif a != b:
                return False
        return True

    def is_default(self):
        return self == SolverSettings()


@dataclass
class _Entry:
    value: str
    line: int
    column: int


class _Stanza(dict):
    def __init__(self, name, line):
        super().__init__()
        self.name = name
        self.line = line


def _split(text):
    """Check the header and group key/value lines into stanzas."""
    header = None
    top = _Stanza("", 0)
    stanzas = [top]
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        if header is None:
            parts = body.split()
            if len(parts) != 2 or parts[0] != HEADER:
                raise ProblemParseError("bad-header", f"expected '{HEADER} {FORMAT_VERSION}'",
                                        lineno, indent + 1)
            if parts[1] != str(FORMAT_VERSION):
                raise ProblemParseError("bad-header", f"unsupported format version {parts[1]!r}",
                                        lineno, indent + 1 + len(parts[0]) + 1)
            header = lineno
            continue
        if body.startswith("["):
            if not body.endswith("]"):
                raise ProblemParseError("syntax", "unterminated section header", lineno, indent + 1)
            name = body[1:-1].strip()
            if name not in ("constraint", "target", "solver"):
                raise ProblemParseError("unknown-section", f"unknown section [{name}]",
                                        lineno, indent + 1)
            if name != "target" and any(s.name == name for s in stanzas):
                raise ProblemParseError("duplicate-section", f"section [{name}] repeated",
                                        lineno, indent + 1)
            stanzas.append(_Stanza(name, lineno))
            continue
        if "=" not in body:
            raise ProblemParseError("syntax", "expected 'key = value'", lineno, indent + 1)
        key, value = body.split("=", 1)
        key = key.strip()
        vcol = line.index("=") + 2 + (len(value) - len(value.lstrip()))
        if not key:
            raise ProblemParseError("syntax", "missing key", lineno, indent + 1)
        if key in stanzas[-1]:
            raise ProblemParseError("duplicate-key", f"key {key!r} repeated", lineno, indent + 1)
        stanzas[-1][key] = _Entry(value.strip(), lineno, vcol)
    if header is None:
        raise ProblemParseError("bad-header", "empty document", 1, 1)
    return stanzas


def _number(entry):
    try:
        v = float(entry.value)
    except ValueError:
        raise ProblemParseError("malformed-number", f"not a number: {entry.value!r}",
                                entry.line, entry.column) from None
    if not math.isfinite(v):
        raise ProblemParseError("malformed-number", f"number must be finite: {entry.value!r}",
                                entry.line, entry.column)
    return v


def _vector(entry, dim):
    parts = [p.strip() for p in entry.value.split(",")]
    out = []
    for p in parts:
        out.append(_number(_Entry(p, entry.line, entry.column)))
    if len(out) != dim:
        raise ProblemParseError("dimension-mismatch",
                                f"expected {dim} coordinates, got {len(out)}",
                                entry.line, entry.column)
    return np.array(out)


def _require(stanza, key):
    if key not in stanza:
        raise ProblemParseError("missing-key", f"[{stanza.name}] needs {key!r}", stanza.line, 1)
    return stanza[key]


def _build_set(stanza, dim, allowed_extra=()):
    kind_entry = _require(stanza, "kind")
    kind = kind_entry.value
    if kind not in SET_KEYS:
        raise ProblemParseError("unknown-set-kind", f"unknown set kind {kind!r}",
                                kind_entry.line, kind_entry.column)
    keys = SET_KEYS[kind]
    for key, entry in stanza.items():
        if key != "kind" and key not in keys and key not in allowed_extra:
            raise ProblemParseError("unknown-key", f"{kind} does not take {key!r}",
                                    entry.line, 1)
    vals = {}
    for key in keys:
        entry = _require(stanza, key)
        vals[key] = _vector(entry, dim) if key in VECTOR_KEYS else _number(entry)
    for key in ("radius", "scale"):
        if key in vals and vals[key] <= 0:
            e = stanza[key]
            raise ProblemParseError(f"nonpositive-{key}", f"nonpositive {key}: {e.value}",
                                    e.line, e.column)
    try:
        if kind == "singleton":
            return Singleton(vals["point"])
        if kind == "ball":
            return Ball(vals["center"], vals["radius"])
        if kind == "box":
            return Box(vals["lower"], vals["upper"])
        if kind == "halfspace":
            return Halfspace(vals["normal"], vals["offset"])
        if kind == "hyperplane":
            return Hyperplane(vals["normal"], vals["offset"])
        if kind == "simplex":
            return Simplex(vals["scale"], dim)
        if kind == "l1ball":
            return L1Ball(vals["center"], vals["radius"])
        return WholeSpace(dim)
    except ValueError as err:
        raise ProblemParseError("invalid-set", str(err), stanza.line, 1) from None


def _solver_settings(stanza, dim):
    settings = SolverSettings()
    for key, entry in stanza.items():
        if key not in SOLVER_KEYS:
            raise ProblemParseError("unknown-key", f"[solver] does not take {key!r}",
                                    entry.line, 1)
        if key == "method":
            if entry.value not in ("mm", "subgradient"):
                raise ProblemParseError("bad-solver-setting",
                                        f"method must be mm or subgradient, got {entry.value!r}",
                                        entry.line, entry.column)
            settings.method = entry.value
        elif key == "start":
            settings.start = _vector(entry, dim)
        elif key == "max_iterations":
            v = _number(entry)
            if v < 1 or v != int(v):
                raise ProblemParseError("bad-solver-setting", "max_iterations must be a positive integer",
                                        entry.line, entry.column)
            settings.max_iterations = int(v)
        else:
            v = _number(entry)
            if v < 0 or (v == 0 and key != "eps_start" and key != "eps_floor"):
                raise ProblemParseError("bad-solver-setting", f"{key} out of range: {entry.value}",
                                        entry.line, entry.column)
            setattr(settings, key, v)
    return settings


def parse_problem(text):
    """Parse a document into ``(HeronProblem, SolverSettings)``."""
    stanzas = _split(text)
    top = stanzas[0]
    for key, entry in top.items():
        if key != "dimension":
            raise ProblemParseError("unknown-key", f"unexpected top-level key {key!r}",
                                    entry.line, 1)
    if "dimension" not in top:
        raise ProblemParseError("missing-key", "document needs 'dimension'", 1, 1)
    dim_entry = top["dimension"]
    dim = _number(dim_entry)
    if dim < 1 or dim != int(dim):
        raise ProblemParseError("dimension-mismatch", "dimension must be a positive integer",
                                dim_entry.line, dim_entry.column)
    dim = int(dim)

    constraint = WholeSpace(dim)
    targets = []
    settings = SolverSettings()
    for st in stanzas[1:]:
        if st.name == "constraint":
            constraint = _build_set(st, dim)
        elif st.name == "solver":
            settings = _solver_settings(st, dim)
        else:
            s = _build_set(st, dim, allowed_extra=("weight",))
            weight = 1.0
            if "weight" in st:
                weight = _number(st["weight"])
                if weight <= 0:
                    e = st["weight"]
                    raise ProblemParseError("nonpositive-weight", f"nonpositive weight: {e.value}",
                                            e.line, e.column)
            targets.append(TargetTerm(s, weight))
    if not targets:
        raise ProblemParseError("no-targets", "document has no [target] stanza")
    return HeronProblem(constraint, tuple(targets)), settings


def _fmt(v):
    return repr(float(v))


def _fmt_vec(v):
    return ", ".join(_fmt(c) for c in v)


def _set_lines(s):
    lines = [f"kind = {s.kind_name}"]
    for key in SET_KEYS[s.kind_name]:
        val = getattr(s, key)
        lines.append(f"{key} = {_fmt_vec(val) if key in VECTOR_KEYS else _fmt(val)}")
    return lines


def serialize_problem(p, settings=None):
    """Canonical document text; ``parse_problem`` inverts it exactly."""
    out = [f"{HEADER} {FORMAT_VERSION}", f"dimension = {p.dim}", "", "[constraint]"]
    out += _set_lines(p.constraint)
    for t in p.targets:
        out += ["", "[target]"] + _set_lines(t.set) + [f"weight = {_fmt(t.weight)}"]
    if settings is not None and not settings.is_default():
        out += ["", "[solver]", f"method = {settings.method}"]
        for key in SOLVER_KEYS[1:]:
            val = getattr(settings, key)
            if val is None:
                continue
            if key == "start":
                out.append(f"start = {_fmt_vec(val)}")
            elif key == "max_iterations":
                out.append(f"max_iterations = {val}")
            else:
                out.append(f"{key} = {_fmt(val)}")
    return "\n".join(out) + "\n"


def read_problem(path):
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())


def _g17(v):
    return format(float(v), ".17g")


def trajectory_header(dim):
    return ["iteration", "eps"] + [f"x{i + 1}" for i in range(dim)] + \
        ["objective", "objective_eps", "step_norm"]


def write_trajectory(traj, fh):
    """Write records as CSV with 17 significant digits per scalar."""
    if not traj:
        raise ValueError("empty trajectory")
    dim = traj[0].x.size
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(trajectory_header(dim))
    for r in traj:
        w.writerow([r.iteration, _g17(r.eps)] + [_g17(c) for c in r.x]
                   + [_g17(r.objective), _g17(r.objective_eps), _g17(r.step_norm)])


def save_trajectory(traj, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        write_trajectory(traj, fh)


def read_trajectory(fh):
    rows = list(csv.reader(fh))
    if not rows:
        raise ValueError("empty trajectory file")
    head = rows[0]
    dim = len(head) - 5
    if dim < 1 or head != trajectory_header(dim):
        raise ValueError(f"unexpected trajectory header: {head}")
    traj = Trajectory()
    for row in rows[1:]:
        vals = [float(v) for v in row[1:]]
        traj.append(Record(int(row[0]), np.array(vals[1:1 + dim]), vals[0],
                           vals[1 + dim], vals[2 + dim], vals[3 + dim]))
    return traj


def load_trajectory(path):
    with open(path, encoding="utf-8", newline="") as fh:
        return read_trajectory(fh)
