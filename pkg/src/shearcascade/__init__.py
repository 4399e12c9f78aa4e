"""Spectral Galerkin simulator and energy-cascade diagnostics for free-shear fluctuations.

The simulated system is the incompressible fluctuation flow around an
imposed horizontal mean shear U(z) e_x in a box periodic in x and y with
free-slip walls in z, expanded in the orthonormal divergence-free
eigenbasis of the corresponding Stokes operator.  Diagnostics track the
energy budget per horizontal-wavenumber band (dissipation, low-to-high
flux, shear production) and audit the flux bounds that hold when the band
Taylor wavenumber clears the viscous shear wavenumber and the low-band
dissipation fraction is small.
"""

__version__ = "0.1.0"

from .basis import (
    Basis,
    ModeData,
    ModeIndex,
    build_basis,
    build_mode,
    eigenvalue_multiplicity,
    enumerate_modes,
    evaluate_mode,
    mode_velocity,
    mode_velocity_gradient,
)
from .checks import run_basis_suite
from .config import RunConfig, load_config, parse_config
from .diagnostics import (
    AuditResult,
    BudgetSample,
    CascadeReport,
    EnsembleStats,
    RunningStats,
    accumulate,
    budget_sample,
    build_report,
    cascade_audit,
    characteristic_scales,
    flux_at,
    flux_monotonicity_check,
    kolmogorov_heuristic,
    kolmogorov_threshold,
    production_bounds_check,
    scales_from_lab,
)
from .domain import Domain, Truncation
from .dynamics import (
    GalerkinRHS,
    IntegratorConfig,
    ShearOperators,
    SimState,
    Stepper,
    nonlinear_galerkin,
    stable_dt,
    step,
)
from .errors import (
    BlowUpError,
    ConfigError,
    GridResolutionError,
    ProfileConfigError,
    ProfileRangeError,
    SchemaVersionError,
    ShearCascadeError,
    SnapshotError,
)
from .field import (
    Band,
    PhysicalField,
    SpectralField,
    band_project,
    from_physical,
    inner,
    norms,
    random_field,
    to_physical,
)
from .grid import Grid, TransformPlan, default_grid
from .profiles import (
    GaussJet,
    MixingLayer,
    Sech2Jet,
    ShearProfile,
    TabulatedProfile,
    Wake,
    eval_profile,
    profile_from_spec,
    shear_strength,
)
from .runner import RunResult, run_simulate
from .snapshots import load_snapshot, ordering_checksum, save_snapshot
