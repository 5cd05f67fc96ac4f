"""Toeplitz operators with separately radial symbols on the weighted Bergman
spaces A^2_m(CP^n), computed in the affine chart C^n."""
from ._backend import BACKEND
from .bergman import (
    BasisExpansion,
    CoefficientVector,
    analyze,
    eval_basis,
    gram_matrix,
    inner_product,
    kernel,
    kernel_projection,
    measure_density,
    project,
    synthesize,
)
from .geometry import (
    OrbitSpec,
    TangentVector,
    fs_metric,
    fubini_study_form,
    frame_orthogonality_defect,
    lagrangian_defect,
    radial_leaf_tangents,
    sample_orbit,
    torus_orbit_tangents,
)
from .multiindex import SpaceParams, basis_norm_sq, dimension, enumerate_indices, normalization_constant
from .quadrature import QuadConfig, QuadRule, angular_rule, gauss_legendre, half_line_rule, integrate_polar, integrate_radial
from .symexpr import RadialFlag, SymbolExpr, apply_torus, check_torus_invariance, evaluate, parse
from .toeplitz import (
    GammaSequence,
    ToeplitzMatrix,
    commutator,
    diagonality_defect,
    gamma_sequence,
    hermitian_eigen,
    operator_norm,
    toeplitz_matrix,
)

__version__ = "0.1.0"
