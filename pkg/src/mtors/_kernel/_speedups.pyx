# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the kernels in ``_pure``.

The arithmetic stays on arbitrary-precision Python ints; Cython removes
the interpreter overhead of the row-operation loops, which is where the
Hermite/Smith reductions spend their time.  Must stay bit-for-bit
compatible with ``_pure``.
"""

from math import gcd


def xgcd(a, b):
    """Extended gcd: return (g, s, t) with g = s*a + t*b and g >= 0."""
    s, s1 = 1, 0
    t, t1 = 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s, s1 = s1, s - q * s1
        t, t1 = t1, t - q * t1
    if a < 0:
        return -a, -s, -t
    return a, s, t


def vec_addmul(list dst, list src, c, Py_ssize_t start=0):
    """dst += c * src entrywise, from index start on."""
    cdef Py_ssize_t k, n = len(dst)
    if c == 0:
        return
    if c == 1:
        for k in range(start, n):
            v = src[k]
            if v:
                dst[k] = dst[k] + v
    elif c == -1:
        for k in range(start, n):
            v = src[k]
            if v:
                dst[k] = dst[k] - v
    else:
        for k in range(start, n):
            v = src[k]
            if v:
                dst[k] = dst[k] + c * v


def vec_neg(list row):
    cdef Py_ssize_t k, n = len(row)
    for k in range(n):
        v = row[k]
        if v:
            row[k] = -v


def hnf_core(list rows, Py_ssize_t ncols, bint reduce_above=True):
    """In-place row Hermite form; see the pure twin for the contract."""
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t r = 0, i, j, best
    cdef bint clean, had_pivot
    pivots = []
    for j in range(ncols):
        if r >= m:
            break
        had_pivot = False
        while True:
            best = -1
            bestval = 0
            for i in range(r, m):
                v = (<list>rows[i])[j]
                if v:
                    if v < 0:
                        v = -v
                    if best < 0 or v < bestval:
                        best = i
                        bestval = v
            if best < 0:
                break
            had_pivot = True
            if best != r:
                rows[r], rows[best] = rows[best], rows[r]
            p = (<list>rows[r])[j]
            clean = True
            for i in range(r + 1, m):
                v = (<list>rows[i])[j]
                if v:
                    vec_addmul(<list>rows[i], <list>rows[r], -(v // p))
                    if (<list>rows[i])[j]:
                        clean = False
            if clean:
                break
        if not had_pivot:
            continue
        if (<list>rows[r])[j] < 0:
            vec_neg(<list>rows[r])
        if reduce_above:
            p = (<list>rows[r])[j]
            for i in range(r):
                q = (<list>rows[i])[j] // p
                if q:
                    vec_addmul(<list>rows[i], <list>rows[r], -q)
        pivots.append(j)
        r += 1
    return pivots


def mat_mul(list A, list B):
    """Product of matrices given as lists of rows (A is m x k, B is k x n)."""
    cdef Py_ssize_t m = len(A), k = len(B), n, i, t
    n = len(<list>B[0]) if k else 0
    out = []
    for i in range(m):
        arow = <list>A[i]
        acc = [0] * n
        for t in range(k):
            a = arow[t]
            if a:
                vec_addmul(acc, <list>B[t], a)
        out.append(acc)
    return out


def mat_vec(list A, list v):
    """A @ v for a list-of-rows matrix and a list vector."""
    cdef Py_ssize_t i, j, m = len(A), n = len(v)
    out = []
    for i in range(m):
        row = <list>A[i]
        s = 0
        for j in range(n):
            a = row[j]
            if a:
                b = v[j]
                if b:
                    s = s + a * b
        out.append(s)
    return out


def bareiss_det(list a):
    """Determinant by fraction-free elimination.  Destroys ``a``."""
    cdef Py_ssize_t n = len(a), k, i, j, piv
    cdef int sign = 1
    if n == 0:
        return 1
    prev = 1
    for k in range(n - 1):
        if (<list>a[k])[k] == 0:
            piv = -1
            for i in range(k + 1, n):
                if (<list>a[i])[k]:
                    piv = i
                    break
            if piv < 0:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        krow = <list>a[k]
        pkk = krow[k]
        for i in range(k + 1, n):
            arow = <list>a[i]
            aik = arow[k]
            for j in range(k + 1, n):
                arow[j] = (arow[j] * pkk - aik * krow[j]) // prev
            arow[k] = 0
        prev = pkk
    return sign * (<list>a[n - 1])[n - 1]


cdef _centered_mod(v, modulus, half):
    v = v % modulus
    if v > half:
        v = v - modulus
    return v


cdef void _mod_reduce_region(list a, Py_ssize_t m, Py_ssize_t n, Py_ssize_t t, modulus):
    cdef Py_ssize_t i, j
    half = modulus >> 1
    for i in range(t, m):
        row = <list>a[i]
        for j in range(t, n):
            v = row[j]
            if v:
                row[j] = _centered_mod(v, modulus, half)


cdef _find_min_entry(list a, Py_ssize_t m, Py_ssize_t n, Py_ssize_t t):
    cdef Py_ssize_t i, j, best_i = -1, best_j = -1
    bestval = 0
    for i in range(t, m):
        row = <list>a[i]
        for j in range(t, n):
            v = row[j]
            if v:
                if v < 0:
                    v = -v
                if best_i < 0 or v < bestval:
                    best_i, best_j, bestval = i, j, v
    return best_i, best_j


cdef bint _clear_pivot_cross(list a, Py_ssize_t m, Py_ssize_t n, Py_ssize_t t, modulus) except? 0:
    cdef Py_ssize_t i, j, best, bi, bj
    cdef bint clean, row_was_clean, col_clean
    bi, bj = _find_min_entry(a, m, n, t)
    if bi < 0:
        return False
    if bi != t:
        a[t], a[bi] = a[bi], a[t]
    if bj != t:
        for i in range(t, m):
            row = <list>a[i]
            row[t], row[bj] = row[bj], row[t]
    while True:
        while True:
            best = -1
            bestval = 0
            for i in range(t, m):
                v = (<list>a[i])[t]
                if v:
                    if v < 0:
                        v = -v
                    if best < 0 or v < bestval:
                        best, bestval = i, v
            if best != t:
                a[t], a[best] = a[best], a[t]
            p = (<list>a[t])[t]
            clean = True
            for i in range(t + 1, m):
                v = (<list>a[i])[t]
                if v:
                    vec_addmul(<list>a[i], <list>a[t], -(v // p), t)
                    if (<list>a[i])[t]:
                        clean = False
            if clean:
                break
        row_was_clean = True
        while True:
            trow = <list>a[t]
            best = -1
            bestval = 0
            for j in range(t, n):
                v = trow[j]
                if v:
                    if v < 0:
                        v = -v
                    if best < 0 or v < bestval:
                        best, bestval = j, v
            if best != t:
                for i in range(t, m):
                    row = <list>a[i]
                    row[t], row[best] = row[best], row[t]
            p = trow[t]
            clean = True
            for j in range(t + 1, n):
                v = trow[j]
                if v:
                    q = v // p
                    for i in range(t, m):
                        row = <list>a[i]
                        w = row[t]
                        if w:
                            row[j] = row[j] - q * w
                    if trow[j]:
                        clean = False
            if clean:
                break
            row_was_clean = False
        if modulus is not None:
            _mod_reduce_region(a, m, n, t, modulus)
            if (<list>a[t])[t] == 0:
                (<list>a[t])[t] = modulus
        col_clean = True
        for i in range(t + 1, m):
            if (<list>a[i])[t]:
                col_clean = False
                break
        if col_clean and row_was_clean:
            return True


def snf_diag_core(list a, modulus=None):
    """Diagonalize destructively; see the pure twin for the contract."""
    cdef Py_ssize_t m = len(a)
    cdef Py_ssize_t n = len(<list>a[0]) if m else 0
    cdef Py_ssize_t t = 0, i, j
    cdef bint bad
    diag = []
    while t < m and t < n:
        if not _clear_pivot_cross(a, m, n, t, modulus):
            break
        p = (<list>a[t])[t]
        if p < 0:
            p = -p
            (<list>a[t])[t] = p
        bad = False
        for i in range(t + 1, m):
            row = <list>a[i]
            for j in range(t + 1, n):
                if row[j] % p:
                    vec_addmul(<list>a[t], row, 1, t)
                    bad = True
                    break
            if bad:
                break
        if bad:
            continue
        diag.append(p)
        t += 1
    if modulus is not None:
        diag = [gcd(d, modulus) or modulus for d in diag]
        diag.extend([modulus] * (n - len(diag)))
    return _fix_chain(diag)


def _fix_chain(diag):
    d = [v for v in diag if v not in (0, 1)]
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] // g * d[j]
                    changed = True
    d.sort()
    return [v for v in d if v != 1]


def snf_transform_core(list a, list u, list v):
    """Full Smith form with transforms; see the pure twin for the contract."""
    from ._pure import snf_transform_core as _pure_impl

    return _pure_impl(a, u, v)
