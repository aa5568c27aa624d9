"""Balanced truncation of LTI descriptor models, intrusive and data-driven.

The data-driven route needs nothing but transfer-function samples at the
mirror images of a set of ADI shifts (plus derivative samples where the
two shift sets overlap): a block interpolant is assembled from the
samples, and the balanced square-root step runs with Cholesky factors
computed from the shifts alone.  Intrusive counterparts (exact Gramians,
shifted-solve low-rank factors) are included as verification oracles.
"""

from .adi import (
    LowRankFactor,
    ShiftSet,
    expand_kron,
    intrusive_lowrank_factors,
    pick_inverse_gramian,
    small_cholesky,
    validate_shifts,
)
from .balancing import (
    BalancingSVD,
    ProjectionPair,
    balancing_svd,
    hankel_singular_values,
    hsv_estimates_from_data,
    intrusive_balanced_truncation,
    project_rom,
)
from .exceptions import NumericalError, ReductionError, ValidationError
from .loewner import (
    InterimROM,
    TangentialData,
    build_block_loewner,
    build_tangential_loewner,
    interpolation_residuals,
)
from .lyapunov import (
    CONTROLLABILITY,
    OBSERVABILITY,
    CholeskyFactor,
    Gramian,
    cholesky_psd,
    gramian_quadrature,
    solve_lyapunov,
)
from .model import (
    DescriptorSystem,
    PoleSpectrum,
    eval_transfer,
    eval_transfer_derivative,
    poles,
    random_stable_system,
    validate_system,
)
from .pipeline import (
    ComparisonReport,
    SamplingPlan,
    compare_roms,
    default_grid,
    reduce_adi_intrusive,
    reduce_data_driven,
    required_samples,
)
from .sampling import SampleDataset, SamplePoint, dataset_lookup, sample_model

__version__ = "0.1.0"

__all__ = [
    "BalancingSVD",
    "CONTROLLABILITY",
    "CholeskyFactor",
    "ComparisonReport",
    "DescriptorSystem",
    "Gramian",
    "InterimROM",
    "LowRankFactor",
    "NumericalError",
    "OBSERVABILITY",
    "PoleSpectrum",
    "ProjectionPair",
    "ReductionError",
    "SampleDataset",
    "SamplePoint",
    "SamplingPlan",
    "ShiftSet",
    "TangentialData",
    "ValidationError",
    "balancing_svd",
    "build_block_loewner",
    "build_tangential_loewner",
    "cholesky_psd",
    "compare_roms",
    "dataset_lookup",
    "default_grid",
    "eval_transfer",
    "eval_transfer_derivative",
    "expand_kron",
    "gramian_quadrature",
    "hankel_singular_values",
    "hsv_estimates_from_data",
    "interpolation_residuals",
    "intrusive_balanced_truncation",
    "intrusive_lowrank_factors",
    "pick_inverse_gramian",
    "poles",
    "project_rom",
    "random_stable_system",
    "reduce_adi_intrusive",
    "reduce_data_driven",
    "required_samples",
    "sample_model",
    "small_cholesky",
    "solve_lyapunov",
    "validate_shifts",
    "validate_system",
]
