"""Exact computations for discriminantal arrangements and sl2 weight spaces."""

from .arrangement import (
    ArrangementSpec,
    DenseEdge,
    SymbolicWeight,
    build,
    dense_edges_bruteforce,
    dense_edges_formula,
    euler_characteristic_magnitude,
    find_shift,
    master_weights,
    nonresonance_verdict,
)
from .exact_linalg import RationalMatrix, left_kernel_basis, rank, solve_rowspan_membership
from .multiplicity import w_via_recursion, w_via_tensor
from .orlik_solomon import (
    aomoto_cohomology_dims,
    aomoto_matrix,
    integer_weights,
    skew_cohomology_dims,
    verify_main_theorem,
)
from .sl2_weight import f_matrix_dual, kernel_cokernel_dims, predicted_dims, weight_basis

__version__ = "0.1.0"

__all__ = [
    "ArrangementSpec", "DenseEdge", "SymbolicWeight", "build", "dense_edges_bruteforce",
    "dense_edges_formula", "euler_characteristic_magnitude", "find_shift", "master_weights",
    "nonresonance_verdict", "RationalMatrix", "left_kernel_basis", "rank", "solve_rowspan_membership",
    "w_via_recursion", "w_via_tensor", "aomoto_cohomology_dims", "aomoto_matrix", "integer_weights",
    "skew_cohomology_dims", "verify_main_theorem", "f_matrix_dual", "kernel_cokernel_dims",
    "predicted_dims", "weight_basis",
]
