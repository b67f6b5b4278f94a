"""Hermite and Smith normal forms over Z.

Row convention throughout: the Hermite form is upper echelon with
positive pivots and entries above each pivot reduced into [0, pivot).
Pivoting picks the smallest nonzero entry, which keeps coefficient
growth in check on the large symbol-space matrices.  See Cohen,
A Course in Computational Algebraic Number Theory, ch. 2.4.
"""

from .._kernel import bareiss_det, hnf_core, snf_diag_core, snf_transform_core
from .matrix import IntMatrix


def hnf(M, transform=True):
    """Row Hermite normal form.

    Returns ``(H, U)`` where H is the Hermite form of M with zero rows
    trimmed and U is unimodular (m x m) with ``U * M`` equal to H padded
    back with zero rows.  With ``transform=False`` returns ``(H, None)``
    and skips the bookkeeping.
    """
    m, n = M.m, M.n
    if transform:
        rows = [list(r) + [1 if k == i else 0 for k in range(m)] for i, r in enumerate(M.rows)]
    else:
        rows = [list(r) for r in M.rows]
    pivots = hnf_core(rows, n)
    r = len(pivots)
    H = IntMatrix([row[:n] for row in rows[:r]], ncols=n)
    if not transform:
        return H, None
    U = IntMatrix([row[n:] for row in rows], ncols=m)
    return H, U


def hnf_with_pivots(M):
    """Hermite form without transform, plus the pivot column indices."""
    rows = [list(r) for r in M.rows]
    pivots = hnf_core(rows, M.n)
    H = IntMatrix([row[: M.n] for row in rows[: len(pivots)]], ncols=M.n)
    return H, pivots


def snf(M):
    """Smith normal form with transforms.

    Returns ``(D, U, V)`` with D diagonal, nonnegative, d_i | d_{i+1},
    and ``U * M * V = D`` for unimodular U, V.
    """
    m, n = M.m, M.n
    a = [list(r) for r in M.rows]
    u = [[1 if k == i else 0 for k in range(m)] for i in range(m)]
    v = [[1 if k == j else 0 for k in range(n)] for j in range(n)]
    snf_transform_core(a, u, v)
    return IntMatrix(a, ncols=n), IntMatrix(u, ncols=m), IntMatrix(v, ncols=n)


def snf_invariants(M, modulus=None):
    """Invariant factors (> 1 only) of the cokernel presentation ``M``.

    ``modulus`` enables the reduced-arithmetic path; it must be a
    positive multiple of the largest invariant factor and the row span
    of M must contain modulus * Z^n (square nonsingular case).
    """
    a = [list(r) for r in M.rows]
    return snf_diag_core(a, modulus)


def det(M):
    """Determinant of a square integer matrix (fraction-free)."""
    if M.m != M.n:
        raise ValueError("determinant of a non-square matrix")
    return bareiss_det([list(r) for r in M.rows])


def kernel_int(M):
    """Saturated basis of the right kernel {x in Z^n : M x = 0}.

    Computed from the transform of the Hermite form of the transpose;
    the rows of the returned matrix are a canonical (Hermite) basis.
    The kernel of a map of free modules is always saturated.
    """
    m, n = M.m, M.n
    rows = [[M.rows[i][j] for i in range(m)] + [1 if k == j else 0 for k in range(n)]
            for j in range(n)]
    pivots = hnf_core(rows, m)
    r = len(pivots)
    ker = [row[m:] for row in rows[r:]]
    if not ker:
        return IntMatrix([], ncols=n)
    hnf_core(ker, n)
    ker = [row for row in ker if any(row)]
    return IntMatrix(ker, ncols=n)
