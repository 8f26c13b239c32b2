"""phisub: numerical calculus for phi_p-subgaussian random variables.

Quadratic power-type N-functions and their Young-Fenchel conjugates, the
tau norm over a catalog of cumulant generating functions, the closed-form
tail bounds they imply for partial sums, and a seeded Monte-Carlo harness
that checks the bounds and the resulting laws of large numbers at desk scale.
"""

__version__ = "0.1.0"

from .exceptions import (
    BracketDivergenceError,
    NotPhiSubgaussianError,
    NumericError,
    QuadratureError,
)
from .nfunctions import (
    ANALYTIC,
    NUMERIC_SUP,
    ConjugateResult,
    NFunctionSpec,
    PIndex,
    SolverParams,
    ValidationReport,
    as_pindex,
    conjugate_index,
    conjugate_of_scaled,
    decade_probe_grid,
    legendre_transform,
    phi_p_eval,
    phi_p_inverse,
    validate_nfunction,
)
from .cgf import (
    AbsGaussianPowerCgf,
    BoundedCenteredCgf,
    CenteredUniformCgf,
    CgfModel,
    EmpiricalCgf,
    GaussianCgf,
    RademacherCgf,
    cgf_eval,
    empirical_stability_window,
    psi_second_derivative_at_zero,
    read_samples,
)
from .norms import (
    EXACT,
    UPPER_BOUND,
    NormEstimate,
    hoeffding_azuma_norm_bound,
    sum_norm_bound,
    tau_norm,
    triangle_bound,
)
from .bounds import (
    MEAN_SCALE,
    MZ_SCALE,
    RAW_SCALE,
    BoundValue,
    FitResult,
    MzParams,
    SeriesReport,
    SllnBoundParams,
    TailQuery,
    mz_tail_bound,
    partial_sum_tail_bound,
    series_sum_bound,
    slln_condition_fit,
    tail_bound,
)
from .simulate import (
    AbsGaussianPower,
    BoundedMartingaleDifference,
    CenteredUniform,
    CheckpointRow,
    Distribution,
    ExceedanceRow,
    Gaussian,
    IdenticalCopies,
    Rademacher,
    SequenceSpec,
    SimulationReport,
    convergence_report,
    exceedance_frequency,
    generate_sequence,
    norm_upper_bound,
    normalized_path,
)
from .special import upper_incomplete_gamma

__all__ = [
    "__version__",
    # exceptions
    "NumericError", "BracketDivergenceError", "NotPhiSubgaussianError",
    "QuadratureError",
    # N-functions
    "PIndex", "SolverParams", "NFunctionSpec", "ConjugateResult",
    "ValidationReport", "as_pindex", "conjugate_index", "phi_p_eval",
    "phi_p_inverse", "legendre_transform", "conjugate_of_scaled",
    "validate_nfunction", "decade_probe_grid", "ANALYTIC", "NUMERIC_SUP",
    # CGF catalog
    "CgfModel", "GaussianCgf", "RademacherCgf", "CenteredUniformCgf",
    "BoundedCenteredCgf", "AbsGaussianPowerCgf", "EmpiricalCgf", "cgf_eval",
    "empirical_stability_window", "read_samples", "psi_second_derivative_at_zero",
    # norms
    "NormEstimate", "tau_norm", "triangle_bound", "sum_norm_bound",
    "hoeffding_azuma_norm_bound", "EXACT", "UPPER_BOUND",
    # bounds
    "SllnBoundParams", "MzParams", "TailQuery", "BoundValue", "SeriesReport",
    "FitResult", "tail_bound", "partial_sum_tail_bound", "mz_tail_bound",
    "series_sum_bound", "slln_condition_fit", "MEAN_SCALE", "MZ_SCALE",
    "RAW_SCALE",
    # simulation
    "Distribution", "Gaussian", "Rademacher", "CenteredUniform",
    "AbsGaussianPower", "BoundedMartingaleDifference", "IdenticalCopies",
    "SequenceSpec", "SimulationReport", "CheckpointRow", "ExceedanceRow",
    "generate_sequence", "normalized_path", "exceedance_frequency",
    "convergence_report", "norm_upper_bound",
    # special
    "upper_incomplete_gamma",
]
