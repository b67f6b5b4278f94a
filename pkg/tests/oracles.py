"""Brute-force oracles, kept deliberately independent of the package's
own algorithms: subtraction-only Hermite reduction, minor-gcd Smith
invariants, Fraction Gaussian elimination, and element-counting
identification of finite abelian groups.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd


def hnf_oracle(rows):
    """Row Hermite form by repeated subtraction only (no xgcd tricks)."""
    mat = [list(r) for r in rows]
    ncols = len(mat[0]) if mat else 0
    out = []
    work = [r for r in mat if any(r)]
    for j in range(ncols):
        while True:
            cands = [r for r in work if r[j] != 0]
            if not cands:
                break
            # make all entries in column j share a sign, then subtract
            for r in cands:
                if r[j] < 0:
                    for t in range(ncols):
                        r[t] = -r[t]
            cands.sort(key=lambda r: r[j])
            if len(cands) == 1:
                break
            a, b = cands[0], cands[1]
            for t in range(ncols):
                b[t] -= a[t]
            work = [r for r in work if any(r)]
        pivot_rows = [r for r in work if r[j] != 0]
        if pivot_rows:
            piv = pivot_rows[0]
            out.append(piv)
            work = [r for r in work if r is not piv]
    # reduce above pivots
    for k in range(len(out) - 1, -1, -1):
        j = next(t for t, v in enumerate(out[k]) if v)
        p = out[k][j]
        for i in range(k):
            q = out[i][j] // p
            if q:
                for t in range(ncols):
                    out[i][t] -= q * out[k][t]
    return out


def det_oracle(rows):
    """Determinant by cofactor expansion (small sizes only)."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * det_oracle(minor)
    return total


def smith_invariants_oracle(rows):
    """Invariant factors via gcds of k x k minors (entries > 1 only)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    prev = 1
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rset in combinations(range(m), k):
            for cset in combinations(range(n), k):
                sub = [[rows[i][j] for j in cset] for i in rset]
                g = gcd(g, det_oracle(sub))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            break
        d = g // prev
        prev = g
        out.append(d)
    return [d for d in out if d > 1]


def rank_oracle(rows):
    """Rank over Q by Fraction Gaussian elimination."""
    mat = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for j in range(ncols):
        piv = None
        for i in range(rank, len(mat)):
            if mat[i][j]:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pv = mat[rank][j]
        for i in range(len(mat)):
            if i != rank and mat[i][j]:
                c = mat[i][j] / pv
                for t in range(ncols):
                    mat[i][t] -= c * mat[rank][t]
        rank += 1
    return rank


def solve_oracle(a_rows, b_rows):
    """Solve A X = B over Q by Fraction Gauss-Jordan (A square, nonsingular)."""
    n = len(a_rows)
    w = len(b_rows[0]) if b_rows and b_rows[0] else 0
    mat = [[Fraction(v) for v in ra] + [Fraction(v) for v in rb]
           for ra, rb in zip(a_rows, b_rows)]
    for j in range(n):
        piv = next(i for i in range(j, n) if mat[i][j])
        mat[j], mat[piv] = mat[piv], mat[j]
        pv = mat[j][j]
        mat[j] = [v / pv for v in mat[j]]
        for i in range(n):
            if i != j and mat[i][j]:
                c = mat[i][j]
                mat[i] = [v - c * mat[j][t] for t, v in enumerate(mat[i])]
    return [row[n:] for row in mat]


def group_elements(L, H):
    """All elements of L/H as canonical coset representatives.

    Both lattices are package Lattice objects of equal rank; the group
    order must be small.  Representatives are tuples of integers in the
    scaled coordinates L.denom * H.denom * x.
    """
    scale = L.denom * H.denom
    # integer models: points of L scaled by `scale`
    gens = [[v * H.denom for v in row] for row in L.basis.rows]
    hb = [[v * L.denom for v in row] for row in H.basis.rows]
    hb_piv = [(next(t for t, v in enumerate(r) if v), r) for r in hb]

    def reduce_mod_h(vec):
        vec = list(vec)
        for j, row in hb_piv:
            q = vec[j] // row[j]
            if q:
                for t in range(len(vec)):
                    vec[t] -= q * row[t]
        return tuple(vec)

    seen = {reduce_mod_h([0] * len(gens[0]) if gens else [])}
    frontier = list(seen)
    while frontier:
        nxt = []
        for el in frontier:
            for g in gens:
                cand = reduce_mod_h([a + b for a, b in zip(el, g)])
                if cand not in seen:
                    seen.add(cand)
                    nxt.append(cand)
        frontier = nxt
    return seen, reduce_mod_h


def invariants_consistent_with_elements(invariants, L, H):
    """Check an invariant chain against brute-force element counting.

    The multiset of invariant factors of a finite abelian group is
    determined by the counts N(m) = #{x : m x = 0} over divisors m of
    the exponent; compare those counts.
    """
    elements, reduce_mod_h = group_elements(L, H)
    order = 1
    for d in invariants:
        order *= d
    if len(elements) != order:
        return False
    expo = invariants[-1] if invariants else 1
    divisors = [m for m in range(1, expo + 1) if expo % m == 0]
    for m in divisors:
        killed = sum(
            1 for el in elements if not any(reduce_mod_h([m * v for v in el]))
        )
        expected = 1
        for d in invariants:
            expected *= gcd(d, m)
        if killed != expected:
            return False
    return True
