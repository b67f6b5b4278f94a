"""Pure-Python twins of the compiled integer kernels.

Everything here works on plain ``list`` rows of Python ints so the
compiled module in ``_speedups.pyx`` can keep the same code shape.  The
two implementations must agree bit for bit; the test suite runs them
side by side and ``benchmarks/bench_kernels.py`` compares their speed.

All routines are exact integer arithmetic.  No floating point anywhere.
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


def vec_addmul(dst, src, c, start=0):
    """dst += c * src entrywise, from index start on."""
    if c == 0:
        return
    if c == 1:
        for k in range(start, len(dst)):
            v = src[k]
            if v:
                dst[k] += v
    elif c == -1:
        for k in range(start, len(dst)):
            v = src[k]
            if v:
                dst[k] -= v
    else:
        for k in range(start, len(dst)):
            v = src[k]
            if v:
                dst[k] += c * v


def vec_neg(row):
    for k in range(len(row)):
        if row[k]:
            row[k] = -row[k]


def hnf_core(rows, ncols, reduce_above=True):
    """In-place row Hermite form of ``rows``, pivoting on the first ncols columns.

    Rows may be wider than ncols; extra columns (a transform or other
    tag-along data) ride along under the same row operations.  Pivot
    selection takes the smallest nonzero entry in the current column, and
    entries above each pivot are reduced into [0, pivot).  Returns the
    list of pivot column indices; rows that become zero in the pivot
    region sink to the bottom.
    """
    m = len(rows)
    pivots = []
    r = 0
    for j in range(ncols):
        if r >= m:
            break
        had_pivot = False
        while True:
            best = -1
            bestval = 0
            for i in range(r, m):
                v = rows[i][j]
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
            p = rows[r][j]
            clean = True
            for i in range(r + 1, m):
                v = rows[i][j]
                if v:
                    vec_addmul(rows[i], rows[r], -(v // p))
                    if rows[i][j]:
                        clean = False
            if clean:
                break
        if not had_pivot:
            continue
        if rows[r][j] < 0:
            vec_neg(rows[r])
        if reduce_above:
            p = rows[r][j]
            for i in range(r):
                q = rows[i][j] // p
                if q:
                    vec_addmul(rows[i], rows[r], -q)
        pivots.append(j)
        r += 1
    return pivots


def mat_mul(A, B):
    """Product of matrices given as lists of rows (A is m x k, B is k x n)."""
    m = len(A)
    k = len(B)
    n = len(B[0]) if k else 0
    out = []
    for i in range(m):
        arow = A[i]
        acc = [0] * n
        for t in range(k):
            a = arow[t]
            if a:
                vec_addmul(acc, B[t], a)
        out.append(acc)
    return out


def mat_vec(A, v):
    """A @ v for a list-of-rows matrix and a list vector."""
    out = []
    for row in A:
        s = 0
        for a, b in zip(row, v):
            if a and b:
                s += a * b
        out.append(s)
    return out


def bareiss_det(a):
    """Determinant by fraction-free elimination.  Destroys ``a``."""
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = -1
            for i in range(k + 1, n):
                if a[i][k]:
                    piv = i
                    break
            if piv < 0:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        pkk = a[k][k]
        krow = a[k]
        for i in range(k + 1, n):
            arow = a[i]
            aik = arow[k]
            for j in range(k + 1, n):
                arow[j] = (arow[j] * pkk - aik * krow[j]) // prev
            arow[k] = 0
        prev = pkk
    return sign * a[n - 1][n - 1]


def _centered_mod(v, modulus, half):
    v %= modulus
    if v > half:
        v -= modulus
    return v


def _mod_reduce_region(a, m, n, t, modulus):
    half = modulus >> 1
    for i in range(t, m):
        row = a[i]
        for j in range(t, n):
            v = row[j]
            if v:
                row[j] = _centered_mod(v, modulus, half)


def _find_min_entry(a, m, n, t):
    best_i = -1
    best_j = -1
    bestval = 0
    for i in range(t, m):
        row = a[i]
        for j in range(t, n):
            v = row[j]
            if v:
                if v < 0:
                    v = -v
                if best_i < 0 or v < bestval:
                    best_i, best_j, bestval = i, j, v
    return best_i, best_j


def _clear_pivot_cross(a, m, n, t, modulus):
    """Make a[t][t] the only nonzero of row t and column t (indices >= t).

    Works by repeated smallest-pivot reduction; row and column passes
    alternate until both are clean.  Entries are optionally kept reduced
    mod ``modulus``.  Returns False when the trailing submatrix is zero.
    """
    bi, bj = _find_min_entry(a, m, n, t)
    if bi < 0:
        return False
    if bi != t:
        a[t], a[bi] = a[bi], a[t]
    if bj != t:
        for i in range(t, m):
            row = a[i]
            row[t], row[bj] = row[bj], row[t]
    while True:
        # Bring the smallest column entry (rows >= t) into the pivot slot.
        while True:
            best = -1
            bestval = 0
            for i in range(t, m):
                v = a[i][t]
                if v:
                    if v < 0:
                        v = -v
                    if best < 0 or v < bestval:
                        best, bestval = i, v
            if best != t:
                a[t], a[best] = a[best], a[t]
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                v = a[i][t]
                if v:
                    vec_addmul(a[i], a[t], -(v // p), t)
                    if a[i][t]:
                        clean = False
            if clean:
                break
        # Same sweep on row t with column operations.
        row_was_clean = True
        while True:
            trow = a[t]
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
                    row = a[i]
                    row[t], row[best] = row[best], row[t]
            p = trow[t]
            clean = True
            for j in range(t + 1, n):
                v = trow[j]
                if v:
                    q = v // p
                    for i in range(t, m):
                        w = a[i][t]
                        if w:
                            a[i][j] -= q * w
                    if trow[j]:
                        clean = False
            if clean:
                break
            row_was_clean = False
        if modulus is not None:
            _mod_reduce_region(a, m, n, t, modulus)
            if a[t][t] == 0:
                a[t][t] = modulus
        col_clean = True
        for i in range(t + 1, m):
            if a[i][t]:
                col_clean = False
                break
        if col_clean and row_was_clean:
            return True


def snf_diag_core(a, modulus=None):
    """Diagonalize ``a`` destructively under row/column equivalence.

    Returns the positive invariant factors with the divisibility chain
    enforced (units and zeros dropped).  With ``modulus`` set, entries are
    kept reduced modulo it; that is valid only when the row lattice of
    ``a`` contains modulus * Z^n (square nonsingular ``a`` with modulus a
    multiple of |det a|).  In that mode exactly n invariants are
    returned, reading apparent zeros as the modulus itself.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    t = 0
    diag = []
    while t < m and t < n:
        if not _clear_pivot_cross(a, m, n, t, modulus):
            break
        p = a[t][t]
        if p < 0:
            p = -p
            a[t][t] = p
        # Divisibility sweep: fold in a row holding a non-multiple of p.
        bad = False
        for i in range(t + 1, m):
            row = a[i]
            for j in range(t + 1, n):
                if row[j] % p:
                    vec_addmul(a[t], row, 1, t)
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


def snf_transform_core(a, u, v):
    """Full Smith form with transforms, for modest sizes.

    Reduces ``a`` to D in place, accumulating row operations into ``u``
    and column operations into ``v`` so that u @ a_original @ v = D with
    the divisibility chain enforced.  Returns the rank.
    """
    m = len(a)
    n = len(a[0]) if m else 0

    def row_op(i, j, c):
        vec_addmul(a[i], a[j], c)
        vec_addmul(u[i], u[j], c)

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_op(j, i, c):
        # col_j += c * col_i
        if c:
            for row in a:
                w = row[i]
                if w:
                    row[j] += c * w
            for row in v:
                w = row[i]
                if w:
                    row[j] += c * w

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < m and t < n:
        nonzero = any(a[i][j] for i in range(t, m) for j in range(t, n))
        if not nonzero:
            break
        while True:
            while True:
                best, bestval = -1, 0
                for i in range(t, m):
                    w = a[i][t]
                    if w:
                        if w < 0:
                            w = -w
                        if best < 0 or w < bestval:
                            best, bestval = i, w
                if best < 0:
                    # Column t is zero: pull in a nonzero column.
                    for j in range(t + 1, n):
                        if any(a[i][j] for i in range(t, m)):
                            col_swap(t, j)
                            break
                    continue
                if best != t:
                    row_swap(t, best)
                p = a[t][t]
                clean = True
                for i in range(t + 1, m):
                    w = a[i][t]
                    if w:
                        row_op(i, t, -(w // p))
                        if a[i][t]:
                            clean = False
                if clean:
                    break
            row_was_clean = True
            while True:
                trow = a[t]
                best, bestval = -1, 0
                for j in range(t, n):
                    w = trow[j]
                    if w:
                        if w < 0:
                            w = -w
                        if best < 0 or w < bestval:
                            best, bestval = j, w
                if best != t:
                    col_swap(t, best)
                p = trow[t]
                clean = True
                for j in range(t + 1, n):
                    w = trow[j]
                    if w:
                        col_op(j, t, -(w // p))
                        if trow[j]:
                            clean = False
                if clean:
                    break
                row_was_clean = False
            col_clean = all(a[i][t] == 0 for i in range(t + 1, m))
            if col_clean and row_was_clean:
                break
        if a[t][t] < 0:
            vec_neg(a[t])
            vec_neg(u[t])
        p = a[t][t]
        bad = False
        for i in range(t + 1, m):
            row = a[i]
            for j in range(t + 1, n):
                if row[j] % p:
                    row_op(t, i, 1)
                    bad = True
                    break
            if bad:
                break
        if bad:
            continue
        t += 1
    # Enforce the divisibility chain with 2x2 diagonal blocks.
    changed = True
    while changed:
        changed = False
        for i in range(t):
            for j in range(i + 1, t):
                di, dj = a[i][i], a[j][j]
                if dj % di:
                    g, s, tt = xgcd(di, dj)
                    l = di // g * dj
                    col_op(i, j, 1)  # submatrix now [di 0; dj dj]
                    ri = [s * x + tt * y for x, y in zip(a[i], a[j])]
                    ui = [s * x + tt * y for x, y in zip(u[i], u[j])]
                    rj = [di // g * y - dj // g * x for x, y in zip(a[i], a[j])]
                    uj = [di // g * y - dj // g * x for x, y in zip(u[i], u[j])]
                    a[i], a[j], u[i], u[j] = ri, rj, ui, uj
                    col_op(j, i, -(a[i][j] // g))
                    assert a[i][i] == g and a[j][j] == l
                    assert a[i][j] == 0 and a[j][i] == 0
                    changed = True
    return t
