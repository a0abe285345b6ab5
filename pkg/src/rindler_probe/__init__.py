"""Spectra perceived by moving observers in ambient wave noise.

Core results: the constant Planck-form local spectrum recorded along a
uniformly accelerated (hyperbolic) world-line, its deformation by a plane
Dirichlet mirror, Monte-Carlo synthesis of the noise field as a plane-wave
superposition, and least-squares localization of the mirror from the
recorded correction.
"""

from .core_math import (
    PsiParams,
    PsiResult,
    QuadratureConfig,
    QuadratureError,
    green_hom,
    hk_residual,
    hk_surface_quadrature,
    psi_closed,
    psi_quadrature,
    sinc,
)
from .freefield import (
    SourceSpectrum,
    autocorr_general,
    circular_autocorr,
    circular_wigner,
    inertial_wigner,
    rindler_autocorr,
    rindler_autocorr_regularized,
    rindler_wigner,
    rindler_wigner_regularized,
    windowed_wigner,
)
from .grids import CorrelationGrid, WignerGrid
from .localize import FitConfig, LocalizationResult, fit_distance_stationary, fit_scene, objective
from .mirror import (
    MirrorScene,
    abc_coefficients,
    correction_R,
    correction_grid,
    image_point,
    mirror_autocorr,
    mirror_autocorr_regularized,
    mirror_wigner,
    near_wall_limit,
    stationary_mirror_spectrum,
)
from .montecarlo import (
    EstimatorConfig,
    PlaneWaveEnsemble,
    covariance_residual,
    estimate_autocorr,
    estimate_wigner,
    field_at,
    sample_ensemble,
)
from .trajectories import (
    Circular,
    HelicoidAccelerated,
    HelicoidConstant,
    Inertial,
    ObliqueRindler,
    Rindler,
    SpacetimeEvent,
    Stationary,
    TestQuadratic,
    acceleration_invariant,
    evaluate,
    interval_function,
    proper_time_defect,
    stationarity_defect,
)

__version__ = "0.1.0"
