"""First-eigenvalue solvers for weighted 1D Sturm-Liouville problems.

Problems are stated in the drift form

    u'' - drift(s) u' + (lam - potential(s)) u = 0,

which is the expanded version of the self-adjoint form
(w u')' + (lam - potential) w u = 0 with w'/w = -drift.

Two independent routes to the first eigenvalue are provided:

* `shoot_eigenvalue`: adaptive Runge-Kutta integration of the reduced
  boundary-value problem plus root-finding on the boundary mismatch.
* `fd_oracle_eigenvalue`: a finite-volume discretization of the
  self-adjoint form, solved as a symmetric tridiagonal eigenproblem by
  Sturm-sequence bisection and sharpened by Richardson extrapolation.

The two routes share no discretization machinery, so their agreement is a
genuine cross-check and the finite-difference value can seed the shooting
bracket.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq


class SolverError(Exception):
    """Base class for eigenvalue-solver failures."""


class BracketEmpty(SolverError):
    """The boundary mismatch has the same sign at both bracket ends."""


class NoConvergence(SolverError):
    """Root iteration hit its cap without meeting the tolerance."""


class StiffFailure(SolverError):
    """The ODE integrator failed (step underflow or non-finite state)."""


class GridTooCoarse(SolverError):
    """Finite-difference eigenvalue estimates are non-monotone across refinements."""


class DegenerateWeight(SolverError):
    """The weight vanishes or goes negative where it must be positive."""


class Parity(enum.Enum):
    """Symmetry class of the sought first eigenfunction.

    ODD_NEUMANN: first nonzero Neumann eigenvalue on a symmetric interval;
        the eigenfunction is odd about the midpoint, so the problem reduces
        to the right half with u(mid) = 0 and u'(hi) = 0.
    EVEN_DIRICHLET: first Dirichlet eigenvalue on a symmetric interval; the
        eigenfunction is even, reducing to u'(mid) = 0 and u(hi) = 0.
    GENERAL: first Dirichlet eigenvalue on the interval as given, with no
        symmetry reduction.
    """

    ODD_NEUMANN = "odd_neumann"
    EVEN_DIRICHLET = "even_dirichlet"
    GENERAL = "general"


@dataclass(frozen=True)
class SLProblem:
    """A first-eigenvalue problem for u'' - drift u' + (lam - potential) u = 0.

    Parameters
    ----------
    drift, potential, weight : callables
        Coefficient functions of the arc-length variable s; each must accept
        scalars and numpy arrays.  `weight` is the positive density w with
        w'/w = -drift (used only by the finite-difference route, which never
        differentiates it).
    interval : (float, float)
        Full interval [s_lo, s_hi].  For the symmetric parities the problem
        data must be symmetric about the midpoint.
    parity : Parity
    singular_endpoints : (bool, bool)
        Flags endpoints where the weight vanishes (poles of a surface of
        revolution).  Only the far endpoint of the reduced interval may be
        singular, and only for ODD_NEUMANN problems: the Neumann condition
        there is replaced by regularity of the solution.
    """

    drift: Callable
    potential: Callable
    weight: Callable
    interval: Tuple[float, float]
    parity: Parity
    singular_endpoints: Tuple[bool, bool] = (False, False)
    name: str = ""

    def __post_init__(self):
        lo, hi = self.interval
        if not lo < hi:
            raise ValueError(f"empty interval {self.interval}")
        if self.singular_endpoints[1] and self.parity is Parity.EVEN_DIRICHLET:
            raise ValueError("a Dirichlet condition cannot sit on a singular endpoint")


@dataclass(frozen=True, eq=False)
class EigenSolution:
    """Eigenvalue plus sampled eigenfunction and diagnostics.

    `samples` has shape (grid_size, 3) with columns (s, u, u'); the rows are
    ascending in s over the reduced interval actually integrated.  `residual`
    is the maximum ODE defect of the samples, measured by a fourth-order
    finite-difference reconstruction of u'' and normalized by sup|u|.
    """

    eigenvalue: float
    samples: np.ndarray
    residual: float
    method: str
    grid_size: int
    bracket: Tuple[float, float]
    mismatch: float

    def __post_init__(self):
        self.samples.setflags(write=False)

    @property
    def s(self):
        return self.samples[:, 0]

    @property
    def u(self):
        return self.samples[:, 1]

    @property
    def du(self):
        return self.samples[:, 2]


def reduced_interval(problem: SLProblem) -> Tuple[float, float]:
    """Interval on which the reduced boundary-value problem is posed."""
    lo, hi = problem.interval
    if problem.parity is Parity.GENERAL:
        return lo, hi
    return 0.5 * (lo + hi), hi


def _check_weight(problem: SLProblem, num: int = 129) -> None:
    x0, x1 = reduced_interval(problem)
    s = np.linspace(x0, x1, num + 2)[1:-1]
    w = np.asarray(problem.weight(s), dtype=float)
    if not np.all(np.isfinite(w)) or np.any(w <= 0.0):
        bad = s[~(np.isfinite(w) & (w > 0.0))][0]
        raise DegenerateWeight(f"weight not positive near s={bad:.6g} in {problem.name or problem}")


def _shooting_setup(problem: SLProblem, tol: float):
    """Return (integrate, mismatch, span) for the reduced problem.

    Regular problems integrate away from the symmetry point.  When the far
    endpoint is a singular pole the integration instead starts a small offset
    inside the pole with the regular branch u = 1, u' = 0 and runs down to
    the symmetry point, where the odd eigenfunction must vanish.
    """
    x0, x1 = reduced_interval(problem)
    drift = problem.drift
    pot = problem.potential
    singular = problem.singular_endpoints[1] and problem.parity is not Parity.GENERAL

    def rhs(s, y, lam):
        u, v = y
        return (v, drift(s) * v - (lam - pot(s)) * u)

    rtol = max(tol * 1e-2, 1e-13)

    if singular:
        eps = 1e-6 * (problem.interval[1] - problem.interval[0])
        span = (x1 - eps, x0)
        y0 = (1.0, 0.0)
    elif problem.parity is Parity.EVEN_DIRICHLET:
        span = (x0, x1)
        y0 = (1.0, 0.0)
    else:
        span = (x0, x1)
        y0 = (0.0, 1.0)

    def integrate(lam, t_eval=None):
        sol = solve_ivp(rhs, span, y0, method="DOP853", rtol=rtol, atol=1e-14,
                        args=(lam,), t_eval=t_eval)
        if not sol.success or not np.all(np.isfinite(sol.y)):
            raise StiffFailure(f"integration failed at lam={lam:.6g}: {sol.message}")
        return sol

    if singular or problem.parity in (Parity.EVEN_DIRICHLET, Parity.GENERAL):
        def mismatch(lam):
            return integrate(lam).y[0, -1]
    else:
        def mismatch(lam):
            return integrate(lam).y[1, -1]

    return integrate, mismatch, span


def _ode_defect(problem: SLProblem, lam: float, s, u, v, trim_hi: int = 0) -> float:
    """Max defect of u'' = drift u' - (lam - potential) u on uniform samples.

    u'' is reconstructed from the sampled u' by a five-point fourth-order
    stencil, so the two samples at each end carry no defect value.  For a
    singular far endpoint the caller passes trim_hi=2 to also drop the two
    stencils that touch the topmost sample, whose u' is the regularized
    initial value imposed at the pole offset rather than integrator output.
    """
    h = s[1] - s[0]
    dv = (-v[4:] + 8.0 * v[3:-1] - 8.0 * v[1:-3] + v[:-4]) / (12.0 * h)
    if trim_hi:
        dv = dv[:-trim_hi]
    sl = slice(2, len(s) - 2 - trim_hi)
    mid = s[sl]
    rhs = problem.drift(mid) * v[sl] - (lam - problem.potential(mid)) * u[sl]
    scale = max(float(np.max(np.abs(u))), 1e-300)
    return float(np.max(np.abs(dv - rhs)) / scale)


def shoot_eigenvalue(problem: SLProblem, bracket: Tuple[float, float],
                     tol: float = 1e-10, n_samples: int = 2049) -> EigenSolution:
    """Locate the first eigenvalue inside `bracket` by shooting.

    The caller must supply a bracket containing exactly one eigenvalue of the
    stated parity class (seed it from `fd_oracle_eigenvalue`).  The boundary
    mismatch is driven to a sign change and polished by Brent's method to
    absolute tolerance `tol`.

    Raises
    ------
    BracketEmpty
        Mismatch has the same sign at both bracket ends.
    NoConvergence
        Root iteration exceeded its iteration cap.
    StiffFailure
        The integrator broke down inside the bracket.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    _check_weight(problem)
    integrate, mismatch, span = _shooting_setup(problem, tol)

    lam_lo, lam_hi = float(bracket[0]), float(bracket[1])
    f_lo = mismatch(lam_lo)
    f_hi = mismatch(lam_hi)
    if f_lo == 0.0:
        root = lam_lo
    elif f_hi == 0.0:
        root = lam_hi
    elif np.sign(f_lo) == np.sign(f_hi):
        raise BracketEmpty(
            f"mismatch sign {np.sign(f_lo):+.0f} at both ends of [{lam_lo:.12g}, {lam_hi:.12g}]"
            f" for {problem.name or problem}")
    else:
        try:
            root, info = brentq(mismatch, lam_lo, lam_hi, xtol=tol, maxiter=200,
                                full_output=True)
        except RuntimeError as exc:
            raise NoConvergence(str(exc)) from exc
        if not info.converged:
            raise NoConvergence(f"brentq stopped after {info.iterations} iterations")

    t = np.linspace(span[0], span[1], n_samples)
    sol = integrate(root, t_eval=t)
    s, u, v = sol.t, sol.y[0], sol.y[1]
    if s[0] > s[-1]:
        s, u, v = s[::-1], u[::-1], v[::-1]
    samples = np.column_stack([s, u, v])
    singular = problem.singular_endpoints[1] and problem.parity is not Parity.GENERAL
    res = _ode_defect(problem, root, s, u, v, trim_hi=2 if singular else 0)
    return EigenSolution(eigenvalue=float(root), samples=samples, residual=res,
                         method="shooting", grid_size=n_samples,
                         bracket=(lam_lo, lam_hi), mismatch=float(mismatch(root)))


def interior_sign_changes(solution: EigenSolution, rel_floor: float = 1e-8) -> int:
    """Count sign changes of u over the interior samples.

    Samples smaller than `rel_floor` times sup|u| are ignored so that the
    enforced boundary zeros and numerical dust do not register as nodes.
    The first eigenfunction of each parity class must return 0.
    """
    u = solution.u[1:-1]
    big = np.abs(u) > rel_floor * np.max(np.abs(solution.u))
    signs = np.sign(u[big])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def fd_eigenvalue(problem: SLProblem, grid_size: int) -> float:
    """First eigenvalue of the finite-volume discretization on one grid.

    The self-adjoint form (w u')' + (lam - V) w u = 0 is discretized on
    grid_size cells with face weights w(s_{i+1/2}), so a weight vanishing at
    an endpoint is never evaluated there; a singular far endpoint keeps its
    node but takes its cell mass from the quarter-point inside the last
    half-cell.  The resulting symmetric tridiagonal pencil is reduced to
    standard form and its lowest eigenvalue extracted by bisection on the
    Sturm-sequence count.
    """
    x0, x1 = reduced_interval(problem)
    n = int(grid_size)
    if n < 8:
        raise ValueError("grid_size too small")
    h = (x1 - x0) / n
    faces = x0 + h * (np.arange(n) + 0.5)
    wf = np.asarray(problem.weight(faces), dtype=float)
    if not np.all(np.isfinite(wf)) or np.any(wf <= 0.0):
        raise DegenerateWeight(f"weight not positive at a cell face of {problem.name or problem}")

    parity = problem.parity
    left_dir = parity in (Parity.ODD_NEUMANN, Parity.GENERAL)
    right_dir = parity in (Parity.EVEN_DIRICHLET, Parity.GENERAL)
    sing_hi = bool(problem.singular_endpoints[1]) and not right_dir

    idx = np.arange(1 if left_dir else 0, (n - 1 if right_dir else n) + 1)
    cell = np.full(idx.size, h)
    if not left_dir:
        cell[0] = 0.5 * h
    if not right_dir:
        cell[-1] = 0.5 * h
    mass_pts = x0 + h * idx.astype(float)
    if sing_hi:
        mass_pts[-1] = x1 - 0.25 * h
    wn = np.asarray(problem.weight(mass_pts), dtype=float)
    if not np.all(np.isfinite(wn)) or np.any(wn <= 0.0):
        raise DegenerateWeight(f"weight not positive at a node of {problem.name or problem}")
    vn = np.asarray(problem.potential(mass_pts), dtype=float)

    cond = wf / h
    diag = np.zeros(idx.size)
    left_face = idx - 1
    right_face = idx
    has_lf = left_face >= 0
    has_rf = right_face <= n - 1
    diag[has_lf] += cond[left_face[has_lf]]
    diag[has_rf] += cond[right_face[has_rf]]

    a_diag = diag + vn * wn * cell
    b_diag = wn * cell
    d = a_diag / b_diag
    # square roots first: the direct product b_i * b_{i+1} can underflow for
    # strongly decaying weights even though the symmetrized ratio is fine
    e = -cond[idx[:-1]] / (np.sqrt(b_diag[:-1]) * np.sqrt(b_diag[1:]))
    if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
        raise DegenerateWeight(
            f"weight dynamic range exceeds double precision for {problem.name or problem}")
    lam = eigh_tridiagonal(d, e, eigvals_only=True, select="i", select_range=(0, 0))
    return float(lam[0])


def fd_eigenvalue_with_error(problem: SLProblem, grid_size: int = 256,
                             refinements: int = 3):
    """Richardson-extrapolated eigenvalue and an error estimate.

    Computes the single-grid eigenvalue on `refinements + 1` dyadic grids
    starting at `grid_size`, checks that the raw estimates converge
    monotonically at the scheme's second-order rate, and extrapolates.
    Returns (eigenvalue, error_estimate).
    """
    if grid_size < 16:
        raise ValueError("grid_size must be at least 16")
    if refinements < 1:
        raise ValueError("refinements must be at least 1")
    raw = [fd_eigenvalue(problem, grid_size << k) for k in range(refinements + 1)]

    diffs = np.diff(raw)
    # Below this level successive grids differ by little more than the
    # tridiagonal eigensolver's own roundoff (eps * ||T|| with ||T|| of
    # order (N/D)^2, which tracks 1 + |lambda|), so monotone decay cannot
    # be expected there and the estimates count as converged.
    floor = 1e-9 * (1.0 + abs(raw[-1]))
    for k in range(len(diffs) - 1):
        if abs(diffs[k]) <= floor or abs(diffs[k + 1]) <= floor:
            continue
        if diffs[k] * diffs[k + 1] < 0.0 or abs(diffs[k + 1]) > 0.6 * abs(diffs[k]):
            raise GridTooCoarse(
                f"estimates {raw} do not refine monotonically for {problem.name or problem}")

    tab = [list(raw)]
    for j in range(1, refinements + 1):
        fac = 4.0 ** j
        prev = tab[-1]
        tab.append([(fac * prev[i + 1] - prev[i]) / (fac - 1.0) for i in range(len(prev) - 1)])
    value = tab[-1][-1]
    err = abs(tab[-1][-1] - tab[-2][-1]) + floor
    return float(value), float(err)


def fd_oracle_eigenvalue(problem: SLProblem, grid_size: int = 256,
                         refinements: int = 3) -> float:
    """Independent finite-difference eigenvalue (see fd_eigenvalue_with_error)."""
    return fd_eigenvalue_with_error(problem, grid_size, refinements)[0]


def scan_bracket(problem: SLProblem, lam_lo: float, lam_hi: float,
                 num: int = 64, tol: float = 1e-10):
    """First sign-change bracket of the shooting mismatch on a linear scan.

    Fallback seeding route for problems where the finite-difference oracle
    declines to extrapolate.  Raises BracketEmpty when no sign change lies in
    [lam_lo, lam_hi].
    """
    _, mismatch, _ = _shooting_setup(problem, tol)
    grid = np.linspace(lam_lo, lam_hi, num)
    prev = mismatch(grid[0])
    for lam_prev, lam in zip(grid[:-1], grid[1:]):
        cur = mismatch(lam)
        if prev == 0.0:
            return (lam_prev, lam_prev)
        if np.sign(prev) != np.sign(cur):
            return (float(lam_prev), float(lam))
        prev = cur
    raise BracketEmpty(f"no mismatch sign change in [{lam_lo:.6g}, {lam_hi:.6g}]")
