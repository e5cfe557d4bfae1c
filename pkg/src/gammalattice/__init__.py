"""Exact coefficient systems, nonsingularity certificates, numeric
verification, and density lower bounds for Gamma-function derivatives at plain
and rationally shifted lattice points."""

from .coeffs import (
    KNOWN_TRANSCENDENTAL_SHIFTS,
    CoeffSystem,
    Kappa,
    LatticeSpec,
    build_system,
    coeff_minus,
    coeff_plain,
    coeff_plus,
    coefficient,
    rational_gamma_ratio,
)
from .density import (
    BoundVariant,
    DensityBound,
    GridRow,
    bivariate_bound,
    bivariate_min_sum,
    bivariate_shifted_bound,
    density_grid,
    fixed_order_bound,
    fixed_order_shifted_bound,
    prior_univariate_bound,
)
from .errors import (
    DimensionMismatchError,
    GammaLatticeError,
    GuardExceededError,
    InvalidKappaError,
    MissingKappaError,
    NonIncreasingIndicesError,
    NotSquareError,
    PoleArgumentError,
    SingularMatrixError,
    SpecMismatchError,
)
from .gammanum import (
    GammaDerivatives,
    PrecisionContext,
    VerificationReport,
    gamma_derivatives,
    gamma_value,
    machin_pi,
    polygamma,
    recover_basis,
    verify_identity,
)
from .linalg import (
    CauchyBinetCertificate,
    CauchyBinetTerm,
    PolyKind,
    RationalMatrix,
    cauchy_binet,
    det_exact,
    difference_factorization,
    difference_minor,
    elementary_matrix,
    homogeneous_matrix,
    inverse_exact,
    permutation_sign,
    row_difference,
)
from .sympoly import (
    ArgumentFamily,
    FamilyKind,
    PrefixTable,
    elementary_bruteforce,
    elementary_prefix,
    homogeneous_bruteforce,
    homogeneous_prefix,
)

__version__ = "0.1.0"
