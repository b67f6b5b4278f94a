"""Torsion-free quotients Z^m / sat(relations) with explicit coordinates."""

from .._kernel import hnf_core
from .matrix import IntMatrix
from .normal_forms import snf


def torsion_free_quotient(rel_rows, ncols):
    """Coordinates on the torsion-free quotient of Z^ncols by a relation span.

    Returns ``(rank, coords, section)`` where ``coords`` maps ambient
    basis vectors to quotient coordinates (one list of length rank per
    ambient index) and ``section`` is a list of rank ambient vectors
    whose classes form the dual basis (coords(section[k]) = e_k).

    The common case (all Hermite pivots of the relation span equal to 1,
    which forces a free quotient) is handled by plain back substitution.
    Non-unit pivots fall back to a Smith-form change of basis.
    """
    rows = [list(r) for r in rel_rows]
    pivots = hnf_core(rows, ncols)
    s = len(pivots)
    rank = ncols - s
    rows = rows[:s]
    if all(rows[k][pivots[k]] == 1 for k in range(s)):
        return _unit_pivot_coords(rows, pivots, ncols, rank)
    # Saturate: the quotient by the saturation is the torsion-free quotient.
    sat = _saturate_rows(rows, ncols)
    pivots = hnf_core(sat, ncols)
    s = len(pivots)
    sat = sat[:s]
    rank = ncols - s
    if all(sat[k][pivots[k]] == 1 for k in range(s)):
        return _unit_pivot_coords(sat, pivots, ncols, rank)
    return _smith_coords(sat, ncols, s, rank)


def _unit_pivot_coords(rows, pivots, ncols, rank):
    pivset = {}
    for k, j in enumerate(pivots):
        pivset[j] = k
    free = [j for j in range(ncols) if j not in pivset]
    free_index = {j: t for t, j in enumerate(free)}
    coords = [None] * ncols
    for t, j in enumerate(free):
        vec = [0] * rank
        vec[t] = 1
        coords[j] = vec
    # With unit pivots and reduced rows, a pivot row supports only its
    # pivot and free columns, so each pivot coordinate reads off directly.
    for k, j in enumerate(pivots):
        vec = [0] * rank
        row = rows[k]
        for jj in range(j + 1, ncols):
            v = row[jj]
            if v:
                vec[free_index[jj]] -= v
        coords[j] = vec
    section = []
    for j in free:
        e = [0] * ncols
        e[j] = 1
        section.append(e)
    return rank, coords, section


def _saturate_rows(rows, ncols):
    from .normal_forms import kernel_int

    ker = kernel_int(IntMatrix(rows, ncols=ncols))
    if ker.m == 0:
        return [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    sat = kernel_int(ker)
    return [list(r) for r in sat.rows]


def _smith_coords(sat_rows, ncols, s, rank):
    D, U, V = snf(IntMatrix(sat_rows, ncols=ncols))
    for k in range(s):
        if D.rows[k][k] != 1:
            raise AssertionError("saturated lattice must have unit invariants")
    coords = [list(V.rows[i][s:]) for i in range(ncols)]
    # Section rows are rows s.. of V^{-1}; recover them by solving V^T.
    from .multimodular import solve_exact

    eye = IntMatrix.identity(ncols)
    N, den = solve_exact(V, eye)
    if den != 1:
        raise AssertionError("unimodular inverse must be integral")
    section = [list(N.rows[i]) for i in range(s, ncols)]
    return rank, coords, section
