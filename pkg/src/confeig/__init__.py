"""Rigorous lower bounds for the first Dirichlet-Laplace eigenvalue of
planar domains described as conformal images of rectangles and discs,
plus spectral-gap estimates and a finite-difference oracle."""

from .bounds import (
    BoundResult,
    Method,
    best_bound,
    bound_alpha_regular,
    bound_convex_distortion,
    bound_faber_krahn,
    bound_gap,
    bound_inradius,
    bound_sup_norm,
    bound_variation,
    compute_bounds,
    compute_gap_bounds,
    convex_sup_bound,
)
from .constants import (
    GAP_SOBOLEV_CONSTANT,
    ConstantResult,
    bessel_zero,
    log_gamma,
    poincare_constant_upper,
    spectral_gap_constant,
)
from .errors import (
    AreaMismatch,
    ConfeigError,
    ConvergenceError,
    DomainError,
    InfiniteNorm,
    NoValidBound,
    PoleError,
    QuadratureDivergence,
    RasterError,
    SpecFormatError,
)
from .geometry import (
    ConvexRadii,
    Disc,
    DomainSpec,
    Rectangle,
    area,
    exact_lambda1,
    exact_lambda2_disc,
    half_annulus_spec,
    image_area,
    inradius,
    slit_ellipse_spec,
    unit_disc_spec,
)
from .maps import (
    Affine,
    AnalyticMap,
    Compose,
    Exp,
    Identity,
    Mobius,
    Power,
    Sin,
    compose,
)
from .norms import (
    NormReport,
    QuadratureConfig,
    RegularityEntry,
    is_conformal_regular,
    norm_alpha,
    norm_l2_dev,
    norm_sup,
    radius_ratio_norm,
    regularity_profile,
)
from .oracle import (
    OracleResult,
    RasterGrid,
    ValidationReport,
    energy_isometry_check,
    fd_eigenvalues,
    full_grid,
    indicator_grid,
    laplacian_matrix,
    rasterize,
    validate,
)
from .specio import dump_spec, load_spec, parse_spec, save_spec, spec_to_dict

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
