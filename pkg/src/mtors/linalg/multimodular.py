"""Multimodular exact linear algebra.

The expensive exact computations (Hecke polynomial evaluation, square
solves) run modulo a deterministic sequence of word-size primes with
numpy int64 arithmetic, then lift back to Z or Q.  Every lift is made
rigorous: either the number of primes covers an a priori bound on the
result, or the reconstructed value is verified against the defining
equation modulo fresh primes whose product exceeds a bound computed
from the actual operand sizes.  No step trusts an unverified guess.
"""

from math import gcd, isqrt

import numpy as np
from sympy import nextprime

from ..errors import SingularOperator
from .matrix import IntMatrix

_PRIME_CACHE: list[int] = []


def _prime_bits(n):
    """Largest prime size such that a length-n dot product fits in int64."""
    safe = 62
    k = max(n, 2).bit_length()
    return min(25, (safe - k) // 2)


def primes_stream(nbits=25):
    """Deterministic stream of distinct primes just below 2**nbits."""
    i = 0
    p = (1 << nbits) - 1
    while True:
        while len(_PRIME_CACHE) <= i:
            q = _PRIME_CACHE[-1] if _PRIME_CACHE else (1 << 25)
            # grow the shared cache downward from 2**25
            _PRIME_CACHE.append(_prevprime(q))
        p = _PRIME_CACHE[i]
        if p < (1 << nbits):
            yield p
        i += 1


def _prevprime(n):
    from sympy import prevprime

    return int(prevprime(n))


def to_modp(rows, p):
    """Reduce a list-of-rows integer matrix into an int64 numpy array mod p."""
    arr = np.array([[v % p for v in row] for row in rows], dtype=np.int64)
    if arr.ndim == 1:
        arr = arr.reshape(len(rows), -1)
    return arr


def modp_solve(A, B, p):
    """Solve A X = B mod p by Gauss-Jordan; raise ZeroDivisionError if singular."""
    n = A.shape[0]
    M = np.concatenate([A % p, B % p], axis=1)
    for j in range(n):
        nz = np.nonzero(M[j:, j])[0]
        if nz.size == 0:
            raise ZeroDivisionError("singular mod p")
        i = j + int(nz[0])
        if i != j:
            M[[j, i]] = M[[i, j]]
        inv = pow(int(M[j, j]), p - 2, p)
        M[j] = (M[j] * inv) % p
        col = M[:, j].copy()
        col[j] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            M[nzr] = (M[nzr] - np.outer(col[nzr], M[j])) % p
    return M[:, n:]


def modp_det(A, p):
    """Determinant mod p by Gaussian elimination on an int64 array."""
    M = A % p
    n = M.shape[0]
    d = 1
    for j in range(n):
        nz = np.nonzero(M[j:, j])[0]
        if nz.size == 0:
            return 0
        i = j + int(nz[0])
        if i != j:
            M[[j, i]] = M[[i, j]]
            d = p - d
        piv = int(M[j, j])
        d = (d * piv) % p
        inv = pow(piv, p - 2, p)
        M[j, j:] = (M[j, j:] * inv) % p
        col = M[j + 1 :, j].copy()
        nzr = np.nonzero(col)[0]
        if nzr.size:
            M[j + 1 + nzr, j:] = (M[j + 1 + nzr, j:] - np.outer(col[nzr], M[j, j:])) % p
    return d


class CrtLift:
    """Garner-style CRT accumulator for matrices of residues."""

    def __init__(self, shape):
        self.shape = shape
        self.modulus = 1
        self.values = [[0] * shape[1] for _ in range(shape[0])]

    def add(self, residues, p):
        m, vals = self.modulus, self.values
        if m == 1:
            self.values = [[int(v) for v in row] for row in residues]
            self.modulus = p
            return
        minv = pow(m % p, p - 2, p)
        rows, cols = self.shape
        res = residues
        for i in range(rows):
            vrow = vals[i]
            rrow = res[i]
            for j in range(cols):
                x = vrow[j]
                t = ((int(rrow[j]) - x) * minv) % p
                vrow[j] = x + m * t
        self.modulus = m * p

    def centered(self):
        m = self.modulus
        half = m >> 1
        return [[v - m if v > half else v for v in row] for row in self.values]


def poly_eval_exact(T, coeffs):
    """Exact f(T) for an integer matrix T and integer coefficients.

    ``coeffs`` is ascending (constant term first).  Evaluation runs by
    Horner's rule modulo enough primes to cover sum |c_i| * RS^i where
    RS bounds the row sums of |T|, so the CRT lift is exact.
    """
    n = T.n
    if T.m != n:
        raise ValueError("square matrix required")
    rs = 0
    for row in T.rows:
        s = sum(v if v >= 0 else -v for v in row)
        if s > rs:
            rs = s
    if rs == 0:
        rs = 1
    bound = 0
    power = 1
    for c in coeffs:
        bound += abs(c) * power
        power *= rs
    bound = 2 * bound + 1
    bits = _prime_bits(n)
    lift = CrtLift((n, n))
    eye = np.eye(n, dtype=np.int64)
    for p in primes_stream(bits):
        Tm = to_modp(T.rows, p)
        X = (int(coeffs[-1]) % p) * eye
        for i in range(len(coeffs) - 2, -1, -1):
            X = (X @ Tm + (int(coeffs[i]) % p) * eye) % p
        lift.add(X, p)
        if lift.modulus > bound:
            break
    return IntMatrix(lift.centered(), ncols=n)


def rational_reconstruction(r, m):
    """Reconstruct n/d from r mod m with |n|, d <= sqrt(m/2), or None."""
    bound = isqrt(m // 2)
    a0, a1 = m, r % m
    s0, s1 = 0, 1
    while a1 > bound:
        q = a0 // a1
        a0, a1 = a1, a0 - q * a1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0:
        return None
    if s1 < 0:
        n, d = -a1, -s1
    else:
        n, d = a1, s1
    if d > bound or gcd(n, d) != 1:
        return None
    return n, d


def _lift_rational_matrix(lift):
    """Entrywise rational reconstruction with a shared running denominator."""
    m = lift.modulus
    nbound = isqrt(m // 2)
    den = 1
    rows_out = []
    for row in lift.values:
        out = []
        for v in row:
            t = (v * den) % m
            if t > m - t:
                t -= m
            if -nbound <= t <= nbound:
                out.append((t, den))
                continue
            rec = rational_reconstruction(v, m)
            if rec is None:
                return None
            n_, d_ = rec
            den = den // gcd(den, d_) * d_
            out.append((n_, d_))
        rows_out.append(out)
    num = [[n_ * (den // d_) for n_, d_ in row] for row in rows_out]
    return IntMatrix(num), den


def verify_product(A, X, B, den, extra_start=0):
    """Rigorously check A @ X == den * B using fresh modular residues.

    Sizes of the operands give an explicit bound on the entries of
    A @ X - den * B; once the residues vanish modulo primes whose
    product exceeds that bound, the difference is exactly zero.
    """
    bound = A.n * A.max_abs() * X.max_abs() + abs(den) * B.max_abs() + 1
    bits = _prime_bits(A.n)
    need = 2 * bound + 1
    prod = 1
    skipped = 0
    for p in primes_stream(bits):
        if skipped < extra_start:
            skipped += 1
            continue
        Am = to_modp(A.rows, p)
        Xm = to_modp(X.rows, p)
        Bm = to_modp(B.rows, p)
        if np.any((Am @ Xm - (den % p) * Bm) % p):
            return False
        prod *= p
        if prod > need:
            return True
    return False


def solve_exact(A, B, max_primes=10000):
    """Exact solution of A X = B for square nonsingular integer A.

    Returns ``(N, den)`` with A @ N == den * B and den > 0.  Uses
    modular solves plus rational reconstruction; the result is verified
    against the defining equation before being returned.  Raises
    SingularOperator when A is certified singular.
    """
    n = A.n
    if n == 0:
        return IntMatrix([], ncols=B.n), 1
    bits = _prime_bits(n)
    lift = CrtLift((n, B.n))
    used = 0
    singular_seen = 0
    next_try = 2
    for p in primes_stream(bits):
        if used >= max_primes:
            break
        used += 1
        Am = to_modp(A.rows, p)
        Bm = to_modp(B.rows, p)
        try:
            Xm = modp_solve(Am, Bm, p)
        except ZeroDivisionError:
            singular_seen += 1
            if singular_seen >= 24:
                if _exact_det_feasible(A):
                    from .normal_forms import det as exact_det

                    if exact_det(A) == 0:
                        raise SingularOperator("matrix is singular over Q") from None
                    singular_seen = -max_primes  # proven nonsingular; unlucky primes
                    continue
                raise SingularOperator(
                    "matrix is singular modulo 24 distinct primes"
                ) from None
            continue
        lift.add(Xm, p)
        if used >= next_try:
            next_try = used + max(1, used // 2)
            got = _lift_rational_matrix(lift)
            if got is None:
                continue
            N, den = got
            if verify_product(A, N, B, den, extra_start=used + singular_seen):
                return N, den
    raise SingularOperator("modular solve did not converge")


def _exact_det_feasible(A):
    """Is a fraction-free determinant cheap enough to be worth running?"""
    return A.n <= 260


def is_nonsingular(A, attempts=24):
    """One-sided nonsingularity test for a square integer matrix.

    A nonzero determinant modulo any prime proves nonsingularity, so a
    True answer is always certified.  A False answer is exact for small
    matrices (fraction-free determinant); for large ones it rests on
    ``attempts`` distinct modular witnesses, which can only cause a
    valid operator to be skipped, never an invalid one to be accepted.
    """
    if A.m != A.n:
        raise ValueError("square matrix required")
    if A.n == 0:
        return True
    bits = _prime_bits(A.n)
    seen = 0
    for p in primes_stream(bits):
        if modp_det(to_modp(A.rows, p), p) != 0:
            return True
        seen += 1
        if seen >= attempts:
            break
    if _exact_det_feasible(A):
        from .normal_forms import det as exact_det

        return exact_det(A) != 0
    return False
