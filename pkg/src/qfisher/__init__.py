"""Generalized information measures on grids: escort densities, chi^beta
divergences, (beta, q)-Fisher information, moment-information inequalities,
nonlinear-diffusion entropy production, and Fourier uncertainty products."""

from .cramer_rao import (
    BoundReport,
    CovarianceReport,
    EstimationProblem,
    covariance_bound_check,
    functional_cr_check,
    matrix_cr_check,
    multidim_cr_check,
    q_cr_check,
    scalar_cr_check,
)
from .densities import (
    QGaussianParams,
    affine_reparameterize,
    block_average,
    coarse_grain,
    coarse_grid,
    escort,
    fit_q_gaussian,
    gaussian_m_q,
    l1_distance,
    m_q_functional,
    make_q_gaussian,
    moment,
    suggested_half_extent,
    q_exponential_shape,
    q_gaussian_moment_scale,
    tsallis_entropy,
)
from .diffusion import (
    DeBruijnReport,
    DiffusionState,
    debruijn_check,
    debruijn_series,
    evolve,
    stable_dt,
    step,
)
from .divergences import (
    DivergenceResult,
    HolderBound,
    chi_beta,
    chi_beta_g,
    holder_statistic_bound,
)
from .errors import (
    AliasingWarning,
    BoundaryMassWarning,
    ConfigError,
    DegenerateEscort,
    GridTooCoarse,
    IncompatibleFactor,
    JacobianSingular,
    NonConvergent,
    NonIntegrable,
    QFisherError,
    SingularFisherMatrix,
    SupportMismatch,
    TruncationWarning,
    UnstableStep,
)
from .fisher import (
    FisherMatrix,
    LimitReport,
    ParametricFamily,
    ScoreField,
    chi2_limit_check,
    fisher_matrix,
    fisher_matrix_data_processing,
    gaussian_location_family,
    gaussian_scale_family,
    generalized_fisher,
    generalized_fisher_components,
    laplace_location_family,
    q_fisher,
    q_gaussian_location_family,
    score_field,
    theta_gradient,
)
from .grid import GridDensity, GridSpec, HolderPair, dual_exponent, lp_norm
from .minimizer import (
    MinimizationConfig,
    MinimizeResult,
    gradient_adjoint,
    minimize_q_fisher,
)
from .sampling import sample_density
from .uncertainty import (
    UncertaintyParams,
    WaveFunction,
    fourier_transform,
    frequency_grid,
    saturating_wavefunction,
    uncertainty_check,
)
from .version import __version__

__all__ = [
    "__version__",
    # grid
    "GridSpec",
    "GridDensity",
    "HolderPair",
    "lp_norm",
    "dual_exponent",
    # densities
    "QGaussianParams",
    "q_exponential_shape",
    "make_q_gaussian",
    "suggested_half_extent",
    "escort",
    "moment",
    "m_q_functional",
    "tsallis_entropy",
    "block_average",
    "coarse_grid",
    "coarse_grain",
    "affine_reparameterize",
    "q_gaussian_moment_scale",
    "fit_q_gaussian",
    "l1_distance",
    "gaussian_m_q",
    # divergences
    "DivergenceResult",
    "HolderBound",
    "chi_beta",
    "chi_beta_g",
    "holder_statistic_bound",
    # fisher
    "ParametricFamily",
    "ScoreField",
    "score_field",
    "generalized_fisher",
    "generalized_fisher_components",
    "theta_gradient",
    "LimitReport",
    "chi2_limit_check",
    "q_fisher",
    "FisherMatrix",
    "fisher_matrix",
    "fisher_matrix_data_processing",
    "gaussian_location_family",
    "laplace_location_family",
    "q_gaussian_location_family",
    "gaussian_scale_family",
    # cramer_rao
    "BoundReport",
    "EstimationProblem",
    "scalar_cr_check",
    "multidim_cr_check",
    "matrix_cr_check",
    "CovarianceReport",
    "covariance_bound_check",
    "functional_cr_check",
    "q_cr_check",
    # sampling
    "sample_density",
    # diffusion
    "DiffusionState",
    "DeBruijnReport",
    "stable_dt",
    "step",
    "evolve",
    "debruijn_check",
    "debruijn_series",
    # minimizer
    "MinimizationConfig",
    "MinimizeResult",
    "minimize_q_fisher",
    "gradient_adjoint",
    # uncertainty
    "WaveFunction",
    "UncertaintyParams",
    "fourier_transform",
    "frequency_grid",
    "uncertainty_check",
    "saturating_wavefunction",
    # errors
    "QFisherError",
    "NonIntegrable",
    "GridTooCoarse",
    "DegenerateEscort",
    "IncompatibleFactor",
    "SupportMismatch",
    "NonConvergent",
    "JacobianSingular",
    "SingularFisherMatrix",
    "UnstableStep",
    "ConfigError",
    "TruncationWarning",
    "BoundaryMassWarning",
    "AliasingWarning",
]
