"""Command line front end.

Eight subcommands: eig-drift and eig-weber solve single eigenvalue problems
with a finite-difference cross check, taylor prints the exact expansion
coefficients, verify runs the invariant suite, figure1/figure2/sharpness
write CSV sweeps, diameter prints the two diameter bounds.

Exit codes: 0 success, 1 verification failure, 2 invalid arguments or
config, 3 solver failure.  Error messages go to stderr.  Sweep rows are
computed in parallel (``--jobs`` or the DRIFTSPEC_JOBS environment
variable) but always written in index order, so output files are
byte-identical across runs; floats are formatted with 12 significant
digits.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .ode_eigen import SolverError, fd_oracle_eigenvalue
from .drift_spectra import (
    DriftEigenQuery,
    WeberEigenQuery,
    drift_problem,
    lambda_bar,
    neumann_drift_eigenvalue,
    soliton_diameter_bounds,
    weber_dirichlet_eigenvalue,
    weber_problem,
)
from .perturbation import MAX_ORDER, evaluate_series, perturbation_coefficients
from .model_manifold import (
    ProfileSpec,
    bakry_emery_report,
    build_manifold,
    profile_table,
    symmetric_neumann_eigenvalue,
)
from . import verification

_FMT = "%.12g"


def _fmt(x) -> str:
    return _FMT % float(x)


def _resolve_jobs(requested: Optional[int]) -> int:
    if requested is not None:
        if requested < 1:
            raise ValueError("--jobs must be >= 1")
        return requested
    env = os.environ.get("DRIFTSPEC_JOBS")
    if env:
        jobs = int(env)
        if jobs < 1:
            raise ValueError("DRIFTSPEC_JOBS must be >= 1")
        return jobs
    return min(8, os.cpu_count() or 1)


def _map_ordered(fn: Callable, items: Sequence, jobs: int) -> List:
    """Apply fn to items, possibly in parallel, preserving input order."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    chunk = max(1, len(items) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def _write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence[float]]) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _apply_config(args: argparse.Namespace, defaults: Dict[str, object]) -> None:
    """Fill unset options from the JSON config, then from hard defaults.

    Precedence: explicit command line flags, then config file keys, then
    defaults.  All optional flags use None as their argparse default so an
    explicitly passed value is distinguishable.
    """
    cfg: Dict[str, object] = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            cfg = json.load(fh)
        if not isinstance(cfg, dict):
            raise ValueError("config file must hold a JSON object")
        unknown = sorted(set(cfg) - set(defaults))
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
    for key, default in defaults.items():
        if getattr(args, key, None) is None:
            setattr(args, key, cfg.get(key, default))


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise ValueError(f"missing required option(s): {', '.join('--' + n for n in missing)}")


# ---------------------------------------------------------------------------
# sweep row workers (module level so process pools can pickle them)


def _figure1_row(i: int) -> Tuple[float, float, float, float]:
    b = 0.5 * i
    lam = weber_dirichlet_eigenvalue(WeberEigenQuery(b=b, D=math.pi)).eigenvalue
    return (b, lam, 1.0, math.sqrt(b))


def _figure2_row(i: int) -> Tuple[float, float, float, float, float]:
    a = 0.05 * i
    lam = lambda_bar(a, math.pi)
    return (a, lam, 0.5 * a + 1.0, a, 2.0 * a)


def _sharpness_row(params: Tuple[int, float, float, float, float, int]):
    n, a, D, r, delta, grid_points = params
    m = build_manifold(ProfileSpec(n=n, r=r, delta=delta, D=D, a=a, grid_points=grid_points))
    margin = bakry_emery_report(m, a).margin
    lam = symmetric_neumann_eigenvalue(m).eigenvalue
    lower = lambda_bar(a, m.diameter)
    upper = lambda_bar(a, m.diameter - math.pi * r - 2.0 * delta)
    return (r, delta, margin, m.diameter, lam, lower, upper)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_eig_drift(args: argparse.Namespace) -> int:
    _apply_config(args, {"a": None, "D": None, "tol": 1e-10})
    _require(args, "a", "D")
    sol = neumann_drift_eigenvalue(DriftEigenQuery(a=args.a, D=args.D, tol=args.tol))
    oracle = fd_oracle_eigenvalue(drift_problem(args.a, args.D))
    print(f"lambda_bar(a={_fmt(args.a)}, D={_fmt(args.D)}) = {_fmt(sol.eigenvalue)}")
    print(f"fd_oracle = {_fmt(oracle)}")
    print(f"cross_check_diff = {abs(sol.eigenvalue - oracle):.3g}")
    print(f"residual = {sol.residual:.3g}")
    return 0


def _cmd_eig_weber(args: argparse.Namespace) -> int:
    _apply_config(args, {"b": None, "D": None, "tol": 1e-10})
    _require(args, "b", "D")
    sol = weber_dirichlet_eigenvalue(WeberEigenQuery(b=args.b, D=args.D, tol=args.tol))
    oracle = fd_oracle_eigenvalue(weber_problem(args.b, args.D))
    print(f"lambda_hat(b={_fmt(args.b)}, D={_fmt(args.D)}) = {_fmt(sol.eigenvalue)}")
    print(f"fd_oracle = {_fmt(oracle)}")
    print(f"cross_check_diff = {abs(sol.eigenvalue - oracle):.3g}")
    print(f"residual = {sol.residual:.3g}")
    return 0


def _cmd_taylor(args: argparse.Namespace) -> int:
    _apply_config(args, {"order": 4, "b": None})
    order = int(args.order)
    if not 0 <= order <= MAX_ORDER:
        raise ValueError(f"--order must be between 0 and {MAX_ORDER}")
    coeffs = perturbation_coefficients(order)
    for k, c in enumerate(coeffs):
        print(f"lambda_{k} = {c.pretty()} = {_fmt(c.evalf())}")
    if args.b is not None:
        print(f"series(b={_fmt(args.b)}, order={order}) = "
              f"{_fmt(evaluate_series('weber_pi', order, b=args.b))}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.list:
        for name in verification.check_names():
            print(name)
        return 0
    results = verification.run_checks(args.names or None)
    for res in results:
        print(res.line())
    failed = sum(1 for r in results if not r.passed)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    if failed:
        print(f"{failed} check(s) failed", file=sys.stderr)
        return 1
    return 0


def _cmd_figure1(args: argparse.Namespace) -> int:
    _apply_config(args, {"out": "figure1.csv", "jobs": None})
    jobs = _resolve_jobs(args.jobs)
    rows = _map_ordered(_figure1_row, range(201), jobs)
    _write_csv(args.out, ("b", "lambda_hat", "bound_one", "bound_sqrt_b"), rows)
    print(f"wrote {args.out} ({len(rows)} rows)")
    return 0


def _cmd_figure2(args: argparse.Namespace) -> int:
    _apply_config(args, {"out": "figure2.csv", "jobs": None})
    jobs = _resolve_jobs(args.jobs)
    rows = _map_ordered(_figure2_row, range(201), jobs)
    _write_csv(args.out, ("a", "lambda_bar", "bound_linear", "bound_a", "line_2a"), rows)
    print(f"wrote {args.out} ({len(rows)} rows)")
    return 0


def _parse_r_list(raw) -> List[float]:
    if isinstance(raw, (list, tuple)):
        values = [float(v) for v in raw]
    else:
        values = [float(tok) for tok in str(raw).split(",") if tok.strip()]
    if not values:
        raise ValueError("--r-list is empty")
    return values


def _cmd_sharpness(args: argparse.Namespace) -> int:
    _apply_config(args, {
        "n": 3, "a": 1.0, "D": math.pi, "r": None, "delta": None,
        "r_list": "0.2,0.1,0.05", "delta_ratio": 0.1,
        "grid_points": 4096, "out": None, "jobs": None,
    })
    n, a, D = int(args.n), float(args.a), float(args.D)
    grid_points = int(args.grid_points)
    if args.r is not None:
        # single-profile mode: tabulate one manifold (r, delta from flags or
        # a ProfileSpec-style config) as a CSV report
        delta = float(args.delta) if args.delta is not None else args.delta_ratio * float(args.r)
        spec = ProfileSpec(n=n, r=float(args.r), delta=delta, D=D, a=a,
                           grid_points=grid_points)
        table = profile_table(build_manifold(spec))
        out = args.out or "profile.csv"
        _write_csv(out, ("s", "k", "y", "yprime", "f", "fprime",
                         "rcf_radial", "rcf_tangential"), table)
        print(f"wrote {out} ({table.shape[0]} rows)")
        return 0
    r_values = _parse_r_list(args.r_list)
    ratio = float(args.delta_ratio)
    params = [(n, a, D, r, ratio * r, grid_points) for r in r_values]
    rows = _map_ordered(_sharpness_row, params, _resolve_jobs(args.jobs))
    out = args.out or "sharpness.csv"
    _write_csv(out, ("r", "delta", "min_rcf_margin", "diameter", "lambda_sym",
                     "lower_sandwich", "upper_sandwich"), rows)
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


def _cmd_diameter(args: argparse.Namespace) -> int:
    _apply_config(args, {"a": None})
    _require(args, "a")
    bounds = soliton_diameter_bounds(float(args.a))
    print(f"basic_bound = {_fmt(bounds.basic)}")
    print(f"improved_bound = {_fmt(bounds.improved)}")
    return 0


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="driftspec",
        description="Eigenvalue comparison toolkit: 1D drift and quadratic-potential "
                    "model problems, exact series, and the capped-cylinder surface.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON file supplying option values")
        p.set_defaults(func=fn)
        return p

    p = add("eig-drift", _cmd_eig_drift,
            "first nonzero Neumann eigenvalue of the linear-drift operator")
    p.add_argument("--a", type=float)
    p.add_argument("--D", type=float)
    p.add_argument("--tol", type=float)

    p = add("eig-weber", _cmd_eig_weber,
            "first Dirichlet eigenvalue of the quadratic-potential operator")
    p.add_argument("--b", type=float)
    p.add_argument("--D", type=float)
    p.add_argument("--tol", type=float)

    p = add("taylor", _cmd_taylor, "exact expansion coefficients in pi^2")
    p.add_argument("--order", type=int)
    p.add_argument("--b", type=float, help="also evaluate the truncated series at b")

    p = add("verify", _cmd_verify, "run the invariant suite")
    p.add_argument("names", nargs="*", help="subset of check names (default: all)")
    p.add_argument("--list", action="store_true", help="list check names and exit")

    p = add("figure1", _cmd_figure1, "CSV sweep of lambda_hat(b, pi) for b in [0, 100]")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int)

    p = add("figure2", _cmd_figure2, "CSV sweep of lambda_bar(a, pi) for a in [0, 10]")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int)

    p = add("sharpness", _cmd_sharpness,
            "capped-cylinder eigenvalue sandwich sweep, or a single profile table")
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=float)
    p.add_argument("--D", type=float)
    p.add_argument("--r", type=float, help="single profile mode: cap radius")
    p.add_argument("--delta", type=float, help="single profile mode: smoothing half-width")
    p.add_argument("--r-list", dest="r_list", help="comma separated cap radii")
    p.add_argument("--delta-ratio", dest="delta_ratio", type=float)
    p.add_argument("--grid-points", dest="grid_points", type=int)
    p.add_argument("--out")
    p.add_argument("--jobs", type=int)

    p = add("diameter", _cmd_diameter, "diameter bounds of the positive-drift soliton")
    p.add_argument("--a", type=float)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code else 0
    try:
        return args.func(args)
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
