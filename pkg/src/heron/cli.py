"""Command-line entry point.

Exit codes: 0 converged, 1 bad input, 2 iteration budget spent,
3 singular weight, 4 optimality check not certified.
"""

import argparse
import sys

import numpy as np

from . import io
from .catalog import builtin_examples, get_example
from .diagnostics import EmptyGridError, grid_search_oracle, optimality_residual
from .mm import Fixed, PowerLeg, SolverConfig, Status
from .mm import solve as mm_solve
from .problem import objective
from .subgradient import Harmonic, subgradient_solve

EXIT_CODES = {Status.CONVERGED: 0, Status.MAX_ITERATIONS: 2, Status.SINGULAR_WEIGHT: 3}
EXIT_INPUT = 1
EXIT_NOT_CERTIFIED = 4


def _floats(text):
    try:
        return np.array([float(v) for v in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _box(text):
    if ":" not in text:
        raise argparse.ArgumentTypeError("expected LOWER:UPPER, e.g. --box=-3,-3:3,3")
    lo, hi = text.split(":", 1)
    return _floats(lo), _floats(hi)


def _fmt_point(x):
    return "(" + ", ".join(f"{c:.14f}" for c in x) + ")"


def _add_solver_flags(sp):
    sp.add_argument("--method", choices=["mm", "subgrad", "subgradient"])
    sp.add_argument("--start", type=_floats, help="starting point, e.g. --start=1.5,0.25")
    sp.add_argument("--eps-start", type=float,
                    help="0 runs MM at eps = 0; a positive value starts eps continuation")
    sp.add_argument("--eps-decay", type=float)
    sp.add_argument("--eps-floor", type=float)
    sp.add_argument("--inner-tol", type=float)
    sp.add_argument("--max-iter", type=int)
    sp.add_argument("--tol", type=float)
    sp.add_argument("--trajectory", metavar="CSV", help="write iterates to this file")


def _pick(*vals):
    for v in vals:
        if v is not None:
            return v
    return None


def _schedule(args, settings, default):
    eps_start = _pick(args.eps_start, settings.eps_start)
    if eps_start is None:
        return default
    if eps_start == 0:
        return Fixed(0.0)
    floor = _pick(args.eps_floor, settings.eps_floor, 1e-16)
    return PowerLeg(start=eps_start,
                    decay=_pick(args.eps_decay, settings.eps_decay, 1e-1),
                    floor=min(floor, eps_start),
                    inner_tol=_pick(args.inner_tol, settings.inner_tol, 1e-10))


def _run(problem, settings, args, start, schedule, out):
    method = _pick(args.method, settings.method, "mm")
    method = "subgradient" if method.startswith("subgrad") else "mm"
    start = _pick(args.start, settings.start, start)
    if start is None:
        start = np.zeros(problem.dim)
    cfg = SolverConfig(max_iterations=_pick(args.max_iter, settings.max_iterations, 10_000),
                       step_tolerance=_pick(args.tol, settings.tolerance, 1e-10),
                       schedule=_schedule(args, settings, schedule),
                       record_trajectory=args.trajectory is not None)
    if method == "mm":
        res = mm_solve(problem, start, cfg)
    else:
        res = subgradient_solve(problem, start, Harmonic(), cfg)
    print(f"method: {method}", file=out)
    print(f"status: {res.status.value}", file=out)
    print(f"iterations: {res.iterations}", file=out)
    print(f"x: {_fmt_point(res.x)}", file=out)
    print(f"objective: {objective(problem, res.x):.17g}", file=out)
    if args.trajectory:
        io.save_trajectory(res.trajectory, args.trajectory)
        print(f"trajectory: {args.trajectory} ({len(res.trajectory)} rows)", file=out)
    return EXIT_CODES[res.status]


def cmd_solve(args, out):
    problem, settings = io.read_problem(args.file)
    return _run(problem, settings, args, None, PowerLeg(), out)


def cmd_example(args, out):
    if args.all == (args.name is not None):
        raise ValueError("give exactly one of NAME or --all")
    if args.all and args.trajectory:
        raise ValueError("--trajectory needs a single example")
    names = list(builtin_examples()) if args.all else [args.name]
    code = 0
    for name in names:
        ex = get_example(name)
        print(f"example: {name}", file=out)
        code = max(code, _run(ex.problem, io.SolverSettings(), args, ex.start, ex.schedule, out))
    return code


def cmd_check(args, out):
    problem, _ = io.read_problem(args.file)
    rep = optimality_residual(problem, args.point, args.eps, args.probe_step, args.tol)
    print(f"residual: {rep.residual:.17g}", file=out)
    print(f"eps_used: {rep.eps_used:.17g}", file=out)
    print(f"probe_step: {rep.probe_step:.17g}", file=out)
    print(f"certified: {str(rep.certified).lower()}", file=out)
    return 0 if rep.certified else EXIT_NOT_CERTIFIED


def cmd_oracle(args, out):
    problem, _ = io.read_problem(args.file)
    lo, hi = args.box
    x, val = grid_search_oracle(problem, lo, hi, args.resolution)
    print(f"x: {_fmt_point(x)}", file=out)
    print(f"objective: {val:.17g}", file=out)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="heron", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="solve a problem document")
    sp.add_argument("file")
    _add_solver_flags(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("example", help="run a built-in example")
    sp.add_argument("name", nargs="?", choices=list(builtin_examples()))
    sp.add_argument("--all", action="store_true", help="run every example")
    _add_solver_flags(sp)
    sp.set_defaults(func=cmd_example)

    sp = sub.add_parser("check", help="optimality residual at a point")
    sp.add_argument("file")
    sp.add_argument("--point", type=_floats, required=True)
    sp.add_argument("--eps", type=float, default=1e-12)
    sp.add_argument("--probe-step", type=float, default=1.0)
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("oracle", help="exhaustive grid search (d <= 3)")
    sp.add_argument("file")
    sp.add_argument("--box", type=_box, required=True, help="LOWER:UPPER, e.g. --box=-3,-3:3,3")
    sp.add_argument("--resolution", type=int, default=601)
    sp.set_defaults(func=cmd_oracle)
    return ap


def run_cli(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else 0
    try:
        return args.func(args, out)
    except (OSError, ValueError, KeyError, TypeError, EmptyGridError) as err:
        print(f"heron: error: {err}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
