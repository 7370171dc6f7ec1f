"""Exact arithmetic for the Stern diatomic array.

Rows and power sums, the transfer matrix on homogeneous binary forms and its
swap-symmetric quotient, exact rational linear algebra (rank, kernels,
characteristic and minimal polynomials), verification of the eigenvalue
multiplicity predictions at 0 and +-1, and mining of minimal linear
recurrences for power-sum sequences.
"""

from .forms import (
    IDENTITY,
    IOTA,
    RHO,
    RHO_TWIST,
    SIGMA,
    TAU,
    HomogPoly,
    Mat2,
    monomial_name,
    operator_matrix,
    phi_matrix,
    substitute,
    swap_matrix,
    sym_class_labels,
    sym_quotient,
)
from .linalg import (
    InexactDivisionError,
    IntPolynomial,
    NonSquareMatrixError,
    RationalMatrix,
    charpoly,
    divide_out,
    eigen_multiplicity,
    is_squarefree,
    kernel_basis,
    minpoly,
    nullity,
    polynomial_gcd,
    rank,
    solve_linear,
)
from .recurrences import (
    AFFINE_ALT,
    HOMOGENEOUS,
    InsufficientDataError,
    LinearRecurrence,
    MiningResult,
    annihilator_recurrence,
    corollary_bound,
    fit_recurrence,
    min_affine_alt_recurrence,
    min_recurrence,
    mine_all_monomials,
    shortened_annihilator,
    verify_recurrence,
)
from .spectra import (
    EVEN,
    ODD,
    MultiplicityCheck,
    PeriodicFn,
    VerificationReport,
    check_annihilation_identities,
    check_diagonalizability,
    eigenspace_dims,
    odd_case_dims,
    periodic_eval,
    predicted_bounds,
    verify_range,
    verify_single,
)
from .stern import (
    DEFAULT_ROW_CAP,
    RowCapError,
    SternRow,
    power_sum_direct,
    power_sum_fast,
    power_sum_sequence,
    stern_row,
)

__version__ = "0.1.0"

__all__ = [
    "AFFINE_ALT",
    "DEFAULT_ROW_CAP",
    "EVEN",
    "HOMOGENEOUS",
    "HomogPoly",
    "IDENTITY",
    "IOTA",
    "InexactDivisionError",
    "InsufficientDataError",
    "IntPolynomial",
    "LinearRecurrence",
    "Mat2",
    "MiningResult",
    "MultiplicityCheck",
    "NonSquareMatrixError",
    "ODD",
    "PeriodicFn",
    "RHO",
    "RHO_TWIST",
    "RationalMatrix",
    "RowCapError",
    "SIGMA",
    "SternRow",
    "TAU",
    "VerificationReport",
    "annihilator_recurrence",
    "charpoly",
    "check_annihilation_identities",
    "check_diagonalizability",
    "corollary_bound",
    "divide_out",
    "eigen_multiplicity",
    "eigenspace_dims",
    "fit_recurrence",
    "is_squarefree",
    "kernel_basis",
    "min_affine_alt_recurrence",
    "min_recurrence",
    "mine_all_monomials",
    "minpoly",
    "monomial_name",
    "nullity",
    "odd_case_dims",
    "operator_matrix",
    "periodic_eval",
    "phi_matrix",
    "polynomial_gcd",
    "power_sum_direct",
    "power_sum_fast",
    "power_sum_sequence",
    "predicted_bounds",
    "rank",
    "shortened_annihilator",
    "solve_linear",
    "stern_row",
    "substitute",
    "swap_matrix",
    "sym_class_labels",
    "sym_quotient",
    "verify_range",
    "verify_recurrence",
    "verify_single",
]
