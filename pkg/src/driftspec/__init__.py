"""Numerical toolkit for one-dimensional eigenvalue comparison problems.

Submodules: ode_eigen (Sturm-Liouville first-eigenvalue solvers),
drift_spectra (the linear-drift Neumann and quadratic-potential Dirichlet
model eigenvalues with their identities and bounds), perturbation (exact
rational series expansion of the quadratic-potential eigenvalue),
model_manifold (the capped-cylinder hypersurface of revolution used for
sharpness experiments), verification (the executable invariant suite) and
cli (the command line front end).
"""

from .ode_eigen import (
    BracketEmpty,
    DegenerateWeight,
    EigenSolution,
    GridTooCoarse,
    NoConvergence,
    Parity,
    SLProblem,
    SolverError,
    StiffFailure,
    fd_eigenvalue,
    fd_eigenvalue_with_error,
    fd_oracle_eigenvalue,
    shoot_eigenvalue,
)
from .drift_spectra import (
    BoundsReport,
    DiameterBounds,
    DriftEigenQuery,
    EvaluationUnstable,
    RootNotBracketed,
    WeberEigenQuery,
    drift_problem,
    first_characteristic_root,
    kummer_characteristic,
    lambda_bar,
    lambda_hat,
    lower_bounds_drift,
    lower_bounds_weber,
    neumann_drift_eigenvalue,
    soliton_diameter_bounds,
    tricomi_characteristic,
    weber_dirichlet_eigenvalue,
    weber_problem,
)
from .perturbation import (
    MAX_ORDER,
    AnsatzState,
    NormalizationInconsistent,
    OrderExceeded,
    PiPoly,
    compute_expansion,
    evaluate_series,
    perturbation_coefficients,
)
from .model_manifold import (
    CFLFailure,
    HeatModulusReport,
    ModelManifold,
    ModulusViolated,
    PoleSingular,
    ProfileSpec,
    RcfReport,
    ReflectionMismatch,
    SpecInvalid,
    bakry_emery_report,
    build_manifold,
    heat_modulus_check,
    profile_table,
    rayleigh_upper_bound,
    smoothing_function,
    symmetric_neumann_eigenvalue,
)
from .verification import CheckResult, run_checks

__version__ = "0.1.0"
