"""Capped-cylinder hypersurfaces of revolution with a quadratic-type potential.

The profile is parametrized by arc length s in [0, D].  Its meridian
curvature is 1/r on the polar caps, 0 on the central cylinder, and follows
a fixed C-infinity step across two smoothing bands of half-width delta
centered at pi r / 2 and D - pi r / 2.  Everything else is cumulative:

    theta(s) = integral of k,   y' = cos(theta),   y = integral of cos(theta),

and the potential is tied to the same curvature through

    f'' = a - (a D / pi) k,   f(0) = 0,  f'(0) = 0,

which makes f' = a s - (a D / pi) theta vanish at the middle whenever the
cylinder is present (theta(D/2) = pi/2 exactly).  All quantities extend to
[0, D] by the even/odd reflections in s = D/2.

The cumulatives of the smoothing step live on the fixed band coordinate
x = (s - pi r/2) / delta in [-1, 1], so they are computed once as spline
antiderivatives and reused; only the integral of cos(theta) across the band
depends on the individual manifold.

Downstream operations evaluate the weighted Bakry-Emery tensor, the first
rotationally symmetric Neumann eigenvalue, a plateau test function for the
Rayleigh quotient, and an implicit heat flow checked against the
one-dimensional modulus of continuity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Tuple

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import CubicHermiteSpline, CubicSpline
from scipy.linalg import cho_solve_banded, cholesky_banded

from .ode_eigen import (
    BracketEmpty,
    EigenSolution,
    GridTooCoarse,
    Parity,
    SLProblem,
    SolverError,
    fd_eigenvalue,
    fd_eigenvalue_with_error,
    shoot_eigenvalue,
)
from .drift_spectra import DriftEigenQuery, lambda_bar, neumann_drift_eigenvalue


class SpecInvalid(ValueError):
    """Profile parameters violate a constructive constraint."""


class ReflectionMismatch(SolverError):
    """The built profile fails its reflection identity at s = D/2."""


class PoleSingular(SolverError):
    """A pole-regularized quantity still came out non-finite."""


class CFLFailure(SolverError):
    """Invalid or unusable time-stepping parameters for the heat flow."""


class ModulusViolated(SolverError):
    """The evolved solution broke the modulus-of-continuity bound."""


POLE_WINDOW = 1e-3  # fraction of r inside which pole limits replace 0/0 forms


def _bump(t: np.ndarray) -> np.ndarray:
    out = np.zeros_like(t)
    pos = t > 0.0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def smoothing_function(s):
    """C-infinity step: 1 for s <= -1, 0 for s >= 1, with phi(s) + phi(-s) = 1.

    Concretely phi(s) = 1 - g((s+1)/2) with g(t) = h(t) / (h(t) + h(1-t)) and
    h(t) = exp(-1/t) for t > 0, else 0.
    """
    arr = np.atleast_1d(np.asarray(s, dtype=float))
    t = 0.5 * (arr + 1.0)
    hi = _bump(t)
    lo = _bump(1.0 - t)
    phi = 1.0 - hi / (hi + lo)
    if np.ndim(s) == 0:
        return float(phi[0])
    return phi


@dataclass(frozen=True)
class ProfileSpec:
    """Parameters of the capped-cylinder profile.

    n is the hypersurface dimension, r the cap radius, delta the smoothing
    half-width, D the pole-to-pole arc length, a the curvature-bound
    constant, grid_points the target size of the tabulation grid (the two
    smoothing bands always receive at least 16 intervals each, whatever the
    total).
    """

    n: int
    r: float
    delta: float
    D: float
    a: float
    grid_points: int = 4096

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 2:
            raise SpecInvalid("n must be an integer >= 2")
        for label, v in (("r", self.r), ("delta", self.delta), ("D", self.D)):
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0.0):
                raise SpecInvalid(f"{label} must be a positive real")
        if not math.isfinite(self.a):
            raise SpecInvalid("a must be finite")
        if not self.delta < self.r / 4.0:
            raise SpecInvalid("need delta < r/4")
        if not math.pi * self.r / 2.0 - self.delta < self.D / 2.0:
            raise SpecInvalid("cap plus smoothing band does not fit: need pi r/2 - delta < D/2")
        if not isinstance(self.grid_points, int) or self.grid_points < 64:
            raise SpecInvalid("grid_points must be an integer >= 64")


@lru_cache(maxsize=8)
def _step_cumulatives(n_grid: int):
    """Antiderivatives of the smoothing step on the band coordinate.

    Returns (x_grid, Phi, Psi) where Phi(x) = int_{-1}^x phi and Psi is the
    antiderivative of Phi, both as piecewise polynomials normalized so that
    Phi(1) = 1 exactly (the analytic value, forced by the antisymmetry).
    """
    x = np.linspace(-1.0, 1.0, n_grid)
    phi = smoothing_function(x)
    phi_pp = CubicSpline(x, phi).antiderivative()
    total = float(phi_pp(1.0))
    scale = 1.0 / total
    psi_pp = phi_pp.antiderivative()

    def phi_cum(t):
        return scale * phi_pp(t)

    def psi_cum(t):
        return scale * psi_pp(t)

    return x, phi_cum, psi_cum


@dataclass(frozen=True, eq=False)
class ModelManifold:
    """Built profile: breakpoint set, tabulated geometry, and evaluators."""

    spec: ProfileSpec
    breakpoints: Tuple[float, float, float, float]
    s: np.ndarray
    k: np.ndarray
    theta: np.ndarray
    y: np.ndarray
    yprime: np.ndarray
    f: np.ndarray
    fprime: np.ndarray
    fsecond: np.ndarray
    profile_length: float
    diameter: float
    _eval: Callable = field(repr=False)

    def __post_init__(self):
        for arr in (self.s, self.k, self.theta, self.y, self.yprime,
                    self.f, self.fprime, self.fsecond):
            arr.setflags(write=False)

    def profile(self, s) -> Dict[str, np.ndarray]:
        """Evaluate k, theta, y, y', f, f', f'' at arbitrary s in [0, D]."""
        arr = np.asarray(s, dtype=float)
        out = self._eval(np.atleast_1d(arr))
        if arr.ndim == 0:
            return {key: float(val[0]) for key, val in out.items()}
        return out

    def weight(self, s) -> np.ndarray:
        """Volume density y^(n-1) e^(-f) of the rotationally symmetric reduction."""
        p = self.profile(s)
        return p["y"] ** (self.spec.n - 1) * np.exp(-p["f"])

    def drift(self, s) -> np.ndarray:
        """Drift coefficient f' - (n-1) y'/y; singular at the poles."""
        p = self.profile(s)
        if np.any(p["y"] == 0.0):
            raise PoleSingular("drift coefficient evaluated at a pole")
        return p["fprime"] - (self.spec.n - 1) * p["yprime"] / p["y"]


def _construction_grid(spec: ProfileSpec, s1: float, s2eff: float) -> np.ndarray:
    half = 0.5 * spec.D
    segments = [(0.0, s1), (s1, s2eff)]
    if s2eff < half:
        segments.append((s2eff, half))
    target = max(spec.grid_points, 512) // 2
    pieces = []
    for lo, hi in segments:
        count = max(17, int(round(target * (hi - lo) / half)) + 1)
        pieces.append(np.linspace(lo, hi, count))
    halfgrid = np.unique(np.concatenate(pieces))
    return np.concatenate([halfgrid, spec.D - halfgrid[-2::-1]])


def build_manifold(spec: ProfileSpec) -> ModelManifold:
    """Construct the profile tables and evaluators for a valid spec.

    Raises ReflectionMismatch when f'(D/2) fails to vanish to 1e-9; that
    only happens when the band is truncated by the midpoint (the round-pole
    limit r -> D/pi) with a nonzero potential constant.
    """
    r, delta, D, a = spec.r, spec.delta, spec.D, spec.a
    mid_cap = 0.5 * math.pi * r
    s1 = mid_cap - delta
    s2 = mid_cap + delta
    half = 0.5 * D
    s2eff = min(s2, half)

    n_band = max(2049, spec.grid_points + 1)
    x_grid, phi_cum, psi_cum = _step_cumulatives(n_band)

    theta_band = (s1 + delta * phi_cum(x_grid)) / r
    w_pp = CubicSpline(x_grid, np.cos(theta_band)).antiderivative()
    y1 = r * math.sin(s1 / r)
    y2 = y1 + delta * float(w_pp(1.0))
    big_theta2 = s1 * s1 / (2.0 * r) + s1 * (s2 - s1) / r + (delta * delta / r) * float(psi_cum(1.0))
    c_pot = a * D / math.pi

    def evaluate(svals: np.ndarray) -> Dict[str, np.ndarray]:
        svals = np.atleast_1d(svals)
        left = svals <= half
        u = np.where(left, svals, D - svals)
        cap = u <= s1
        cyl = u > s2eff if s2 < half else np.zeros_like(cap)
        band = ~cap & ~cyl

        x = np.clip((u[band] - mid_cap) / delta, -1.0, 1.0)

        k = np.zeros_like(u)
        k[cap] = 1.0 / r
        k[band] = smoothing_function(x) / r

        theta_half = np.empty_like(u)
        theta_half[cap] = u[cap] / r
        theta_half[band] = (s1 + delta * phi_cum(x)) / r
        theta_half[cyl] = 0.5 * math.pi

        y = np.empty_like(u)
        y[cap] = r * np.sin(u[cap] / r)
        y[band] = y1 + delta * w_pp(x)
        y[cyl] = y2

        ydot = np.cos(theta_half)
        ydot[cyl] = 0.0

        big_theta = np.empty_like(u)
        big_theta[cap] = u[cap] ** 2 / (2.0 * r)
        big_theta[band] = (s1 * s1 / (2.0 * r) + s1 * (u[band] - s1) / r
                           + (delta * delta / r) * psi_cum(x))
        big_theta[cyl] = big_theta2 + 0.5 * math.pi * (u[cyl] - s2)

        fp_half = a * u - c_pot * theta_half
        out = {
            "k": k,
            "theta": np.where(left, theta_half, math.pi - theta_half),
            "y": y,
            "yprime": np.where(left, ydot, -ydot),
            "f": 0.5 * a * u * u - c_pot * big_theta,
            "fprime": np.where(left, fp_half, -fp_half),
            "fsecond": a - c_pot * k,
        }
        return out

    fp_mid = float(evaluate(np.array([half]))["fprime"][0])
    if abs(fp_mid) > 1e-9:
        raise ReflectionMismatch(
            f"f'(D/2) = {fp_mid:.3e}; the profile cannot be reflected evenly "
            "(truncated smoothing band with a != 0)")

    grid = _construction_grid(spec, s1, s2eff)
    tab = evaluate(grid)
    m = ModelManifold(
        spec=spec,
        breakpoints=(s1, s2, D - s2, D - s1),
        s=grid,
        k=tab["k"],
        theta=tab["theta"],
        y=tab["y"],
        yprime=tab["yprime"],
        f=tab["f"],
        fprime=tab["fprime"],
        fsecond=tab["fsecond"],
        profile_length=D,
        diameter=D,
        _eval=evaluate,
    )
    if np.any(m.y[1:-1] <= 0.0):
        raise SpecInvalid("profile radius is not positive between the poles")
    return m


# ---------------------------------------------------------------------------
# Bakry-Emery tensor report.


@dataclass(frozen=True, eq=False)
class RcfReport:
    """Sampled eigenvalue branches of the weighted Ricci tensor.

    samples has columns (s, radial, tangential); margin = min - a is the
    worst slack against the target lower bound a.
    """

    samples: np.ndarray
    min_eigenvalue: float
    margin: float

    def __post_init__(self):
        self.samples.setflags(write=False)


def _rcf_branches(m: ModelManifold, svals: np.ndarray):
    spec = m.spec
    n, r = spec.n, spec.r
    p = m.profile(svals)
    u = np.minimum(svals, spec.D - svals)
    window = u < POLE_WINDOW * r
    reg = ~window

    sin_th = np.sin(p["theta"])
    ratio = np.empty_like(u)          # sqrt(1 - y'^2) / y = sin(theta) / y
    ratio[reg] = sin_th[reg] / p["y"][reg]
    ratio[window] = 1.0 / r
    shear = np.empty_like(u)          # (y'/y) f'
    shear[reg] = p["yprime"][reg] * p["fprime"][reg] / p["y"][reg]
    c_cap = spec.a * (1.0 - spec.D / (math.pi * r))
    xw = u[window] / r
    shear[window] = c_cap * (1.0 - xw * xw / 3.0)   # c_cap * x * cot(x) series

    radial = (n - 1) * p["k"] * ratio + p["fsecond"]
    tangential = p["k"] * ratio + (n - 2) * ratio ** 2 + shear
    if not (np.all(np.isfinite(radial)) and np.all(np.isfinite(tangential))):
        raise PoleSingular("non-finite Bakry-Emery branch after pole regularization")
    return radial, tangential


def bakry_emery_report(m: ModelManifold, a: float) -> RcfReport:
    """Evaluate both curvature branches on the construction grid.

    The branches are computed from the tabulated geometry; within 1e-3 * r
    of either pole the 0/0 ratios are replaced by their analytic limits
    (sin(theta)/y -> 1/r and (y'/y) f' -> a (1 - D/(pi r))).  The margin is
    measured against the given constant a.
    """
    radial, tangential = _rcf_branches(m, m.s)
    samples = np.column_stack([m.s, radial, tangential])
    low = float(min(radial.min(), tangential.min()))
    return RcfReport(samples=samples, min_eigenvalue=low, margin=low - a)


def profile_table(m: ModelManifold) -> np.ndarray:
    """Columns (s, k, y, yprime, f, fprime, rcf_radial, rcf_tangential)."""
    radial, tangential = _rcf_branches(m, m.s)
    return np.column_stack([m.s, m.k, m.y, m.yprime, m.f, m.fprime, radial, tangential])


# ---------------------------------------------------------------------------
# Rotationally symmetric spectrum.


def _zero_potential(s):
    return np.zeros_like(np.asarray(s, dtype=float))


def symmetric_problem(m: ModelManifold) -> SLProblem:
    """First-eigenvalue problem of the drift Laplacian on symmetric functions.

    u'' + ((n-1) y'/y - f') u' + lam u = 0 on (0, D), regular at both poles;
    the first nonzero eigenfunction is odd about D/2.
    """
    spec = m.spec
    return SLProblem(
        drift=m.drift,
        potential=_zero_potential,
        weight=m.weight,
        interval=(0.0, m.spec.D),
        parity=Parity.ODD_NEUMANN,
        singular_endpoints=(True, True),
        name=f"manifold(n={spec.n}, r={spec.r:g}, delta={spec.delta:g}, "
             f"D={spec.D:g}, a={spec.a:g})",
    )


def symmetric_neumann_eigenvalue(m: ModelManifold, tol: float = 1e-10) -> EigenSolution:
    """First nonzero eigenvalue over rotationally symmetric functions.

    Seeds the shooting bracket from the finite-volume oracle; when the
    Richardson table declines to extrapolate (strongly graded weights), a
    single fine grid supplies the seed with a generous pad instead.
    """
    problem = symmetric_problem(m)
    try:
        seed, err = fd_eigenvalue_with_error(problem, grid_size=512, refinements=3)
    except GridTooCoarse:
        seed = fd_eigenvalue(problem, 4096)
        err = 1e-4 * (1.0 + abs(seed))
    pad = max(10.0 * err, 1e-7 * (1.0 + abs(seed)))
    last = None
    for _ in range(6):
        try:
            # 8193 samples keep the defect stencil resolving the smoothing
            # bands (its error grows like (h / delta)^4).
            return shoot_eigenvalue(problem, (seed - pad, seed + pad), tol=tol,
                                    n_samples=8193)
        except BracketEmpty as exc:
            last = exc
            pad *= 8.0
    raise last


def rayleigh_upper_bound(m: ModelManifold, lambda_sym: float = None,
                         tol: float = 1e-7) -> float:
    """Rayleigh quotient of the plateau test function.

    The test function equals the one-dimensional drift eigenfunction w of
    the cylinder length L = D - pi r - 2 delta (recentred at D/2) on the
    cylinder and freezes at +/- w(L/2) across the bands and caps, so its
    quotient is guaranteed below lambda_bar(a, L); with lambda_sym supplied
    the variational lower bound is asserted as well.
    """
    spec = m.spec
    if spec.a < 0.0:
        raise ValueError("plateau bound requires a >= 0")
    L = spec.D - math.pi * spec.r - 2.0 * spec.delta
    if L <= 0.0:
        raise ValueError("no cylinder plateau: D - pi r - 2 delta <= 0")
    sol = neumann_drift_eigenvalue(DriftEigenQuery(spec.a, L))
    w = CubicHermiteSpline(sol.s, sol.u, sol.du)
    dw = w.derivative()
    w_end = float(sol.u[-1])

    half = 0.5 * spec.D
    s1, s2 = m.breakpoints[0], m.breakpoints[1]
    cyl_hi = spec.D - s2
    xs_cyl = np.linspace(half, cyl_hi, 4097)
    wt_cyl = m.weight(xs_cyl)
    num = simpson(dw(xs_cyl - half) ** 2 * wt_cyl, x=xs_cyl)
    den = simpson(w(xs_cyl - half) ** 2 * wt_cyl, x=xs_cyl)
    xs_band = np.linspace(cyl_hi, spec.D - s1, 2049)
    xs_cap = np.linspace(spec.D - s1, spec.D, 2049)
    den += w_end ** 2 * (simpson(m.weight(xs_band), x=xs_band)
                         + simpson(m.weight(xs_cap), x=xs_cap))
    quotient = float(num / den)

    lam_L = sol.eigenvalue
    if quotient > lam_L + 1e-9 * (1.0 + abs(lam_L)):
        raise SolverError(
            f"Rayleigh quotient {quotient:.12g} exceeds its plateau bound {lam_L:.12g}")
    if lambda_sym is not None and quotient < lambda_sym - tol:
        raise SolverError(
            f"Rayleigh quotient {quotient:.12g} fell below the symmetric "
            f"eigenvalue {lambda_sym:.12g}")
    return quotient


# ---------------------------------------------------------------------------
# Heat flow against the 1D modulus of continuity.


@dataclass(frozen=True)
class HeatRun:
    initial: str
    modulus_constant: float
    min_slack: float
    worst_time: float
    worst_pair: Tuple[float, float]
    checkpoints: Tuple[float, ...]


@dataclass(frozen=True)
class HeatModulusReport:
    lambda_bar: float
    t_end: float
    dt: float
    space_points: int
    runs: Tuple[HeatRun, ...]


def _heat_matrices(m: ModelManifold, s: np.ndarray):
    h = s[1] - s[0]
    cond = m.weight(s[:-1] + 0.5 * h) / h
    k_diag = np.zeros(s.size)
    k_diag[:-1] += cond
    k_diag[1:] += cond
    mass = m.weight(s) * h
    mass[0] = float(m.weight(np.array([0.25 * h]))[0]) * 0.5 * h
    mass[-1] = float(m.weight(np.array([s[-1] - 0.25 * h]))[0]) * 0.5 * h
    return mass, k_diag, cond


def _initial_data(m: ModelManifold, kind: str, s: np.ndarray) -> np.ndarray:
    D = m.spec.D
    if kind == "generic":
        v0 = -np.cos(math.pi * s / D)
    elif kind == "eigenfunction":
        sol = symmetric_neumann_eigenvalue(m)
        spl = CubicHermiteSpline(sol.s, sol.u, sol.du)
        half = 0.5 * D
        v0 = np.where(s >= half, spl(np.maximum(s, half)),
                      -spl(np.maximum(D - s, half)))
    else:
        raise ValueError(f"unknown initial data kind {kind!r}")
    return v0 / np.max(np.abs(v0))


def _max_lag_diffs(v: np.ndarray) -> np.ndarray:
    out = np.empty(v.size - 1)
    for lag in range(1, v.size):
        out[lag - 1] = np.max(np.abs(v[lag:] - v[:-lag]))
    return out


def heat_modulus_check(m: ModelManifold, t_end: float, space_points: int = 257,
                       dt: float = 1e-3, check_every: float = 0.05,
                       initial: str = "both", slack_tol: float = 1e-8) -> HeatModulusReport:
    """Implicit drift heat flow checked against the 1D modulus bound.

    Evolves v_t = v_ss + ((n-1) y'/y - f') v_s by Crank-Nicolson in the
    finite-volume form and verifies, at each checkpoint time, that

        |v(s2, t) - v(s1, t)| <= 2 C e^(-lambda_bar(a, D) t) omega(|s2 - s1| / 2)

    over all grid pairs, where omega is the increasing half of the 1D model
    eigenfunction and C is fixed from the initial data.  Raises
    ModulusViolated with the offending pair when the bound breaks by more
    than slack_tol.
    """
    if not t_end > 0.0:
        raise ValueError("t_end must be positive")
    if not (isinstance(space_points, int) and space_points >= 33):
        raise ValueError("space_points must be an integer >= 33")
    if not (dt > 0.0 and math.isfinite(dt)):
        raise CFLFailure("dt must be a positive real")
    if not 0.0 < check_every <= t_end:
        raise CFLFailure("check_every must lie in (0, t_end]")
    if dt > check_every:
        raise CFLFailure("dt exceeds the checkpoint spacing")
    if t_end / dt > 2e6:
        raise CFLFailure("step budget exceeded; increase dt")

    spec = m.spec
    D = spec.D
    lam_bar = lambda_bar(spec.a, D)
    model = neumann_drift_eigenvalue(DriftEigenQuery(spec.a, D))
    omega = CubicHermiteSpline(model.s, model.u, model.du)

    s = np.linspace(0.0, D, space_points)
    h = s[1] - s[0]
    mass, k_diag, cond = _heat_matrices(m, s)
    omega_half = np.asarray(omega(np.arange(1, space_points) * (0.5 * h)), dtype=float)

    n_checks = int(math.floor(t_end / check_every + 1e-9))
    times = [j * check_every for j in range(1, n_checks + 1)]
    if not times or t_end - times[-1] > 1e-12:
        times.append(t_end)

    kinds = ("eigenfunction", "generic") if initial == "both" else (initial,)
    runs = []
    for kind in kinds:
        v = _initial_data(m, kind, s)
        c_mod = float(np.max(_max_lag_diffs(v) / (2.0 * omega_half)))
        min_slack = math.inf
        worst_time = 0.0
        worst_pair = (0.0, 0.0)

        t_prev = 0.0
        cached_dt = None
        cho = None
        b_diag = None
        for t_next in times:
            seg = t_next - t_prev
            n_sub = max(1, int(round(seg / dt)))
            dt_eff = seg / n_sub
            if cached_dt is None or abs(dt_eff - cached_dt) > 1e-15 * dt_eff:
                half_dt = 0.5 * dt_eff
                ab = np.zeros((2, space_points))
                ab[0, 1:] = -half_dt * cond
                ab[1, :] = mass + half_dt * k_diag
                cho = cholesky_banded(ab)
                b_diag = mass - half_dt * k_diag
                cached_dt = dt_eff
            for _ in range(n_sub):
                rhs = b_diag * v
                rhs[:-1] += 0.5 * dt_eff * cond * v[1:]
                rhs[1:] += 0.5 * dt_eff * cond * v[:-1]
                v = cho_solve_banded((cho, False), rhs)
            if not np.all(np.isfinite(v)):
                raise CFLFailure(f"heat solution lost finiteness by t = {t_next:g}")

            diffs = _max_lag_diffs(v)
            bound = 2.0 * c_mod * math.exp(-lam_bar * t_next) * omega_half
            slack = bound - diffs
            idx = int(np.argmin(slack))
            if slack[idx] < min_slack:
                min_slack = float(slack[idx])
                worst_time = t_next
                i = int(np.argmax(np.abs(v[idx + 1:] - v[:-(idx + 1)])))
                worst_pair = (float(s[i]), float(s[i + idx + 1]))
            if slack[idx] < -slack_tol:
                i = int(np.argmax(np.abs(v[idx + 1:] - v[:-(idx + 1)])))
                raise ModulusViolated(
                    f"{kind} data: |v({s[i + idx + 1]:.6g}) - v({s[i]:.6g})| exceeds the "
                    f"modulus bound at t = {t_next:g} by {-slack[idx]:.3e}")
            t_prev = t_next
        runs.append(HeatRun(initial=kind, modulus_constant=c_mod,
                            min_slack=min_slack, worst_time=worst_time,
                            worst_pair=worst_pair, checkpoints=tuple(times)))
    return HeatModulusReport(lambda_bar=lam_bar, t_end=t_end, dt=dt,
                             space_points=space_points, runs=tuple(runs))
