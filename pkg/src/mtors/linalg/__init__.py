"""Exact integer and rational linear algebra: normal forms, lattices in Q^n,
and finite abelian quotient groups."""

from .groups import FinAbelianGroup, fixed_subgroup, invariant_factors, subgroup_generated
from .lattice import Lattice, coords_in, preimage_in_lattice, preimage_lattice
from .matrix import IntMatrix, RatMatrix
from .normal_forms import det, hnf, kernel_int, snf, snf_invariants

__all__ = [
    "IntMatrix",
    "RatMatrix",
    "Lattice",
    "FinAbelianGroup",
    "hnf",
    "snf",
    "snf_invariants",
    "det",
    "kernel_int",
    "rational_kernel",
    "preimage_lattice",
    "preimage_in_lattice",
    "coords_in",
    "invariant_factors",
    "fixed_subgroup",
    "subgroup_generated",
]


def rational_kernel(M):
    """Basis of {x : M x = 0} for a rational matrix, as primitive integer rows.

    The right-kernel convention is fixed project-wide: vectors are
    columns, so the rows of the result pair to zero with the rows of M.
    The basis is saturated and in Hermite form.
    """
    if isinstance(M, RatMatrix):
        M = M.num  # scaling rows does not change the kernel
    ker = kernel_int(M)
    return RatMatrix.from_int(ker)
