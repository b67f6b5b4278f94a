"""Determinant-n matrix families realizing Hecke operators on Manin symbols.

This is Merel's universal family X_n = {(a, b; c, d) : ad - bc = n,
a > b >= 0, d > c >= 0}; summing the right action of its members over a
Manin symbol (and dropping images that are not primitive mod N) gives
T_n.  The family is generated algorithmically and validated by the
operator property suite rather than trusted as a table.
"""

from functools import lru_cache

from sympy import isprime


def merel_family(n):
    """Merel's set X_n as tuples ((a, b), (c, d)) with determinant n."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    for a in range(1, n + 1):
        dmin = -(-n // a)  # ceil(n / a)
        for d in range(dmin, n + 2 - a):
            bc = a * d - n
            if bc == 0:
                for b in range(a):
                    out.append(((a, b), (0, d)))
                for c in range(1, d):
                    out.append(((a, 0), (c, d)))
            else:
                bmin = (bc - 1) // (d - 1) + 1 if d > 1 else bc + 1
                for b in range(max(1, bmin), a):
                    if bc % b == 0:
                        out.append(((a, b), (bc // b, d)))
    return out


@lru_cache(maxsize=None)
def heilbronn_matrices(q):
    """Heilbronn-type family of determinant-q matrices for prime q."""
    if not isprime(q):
        raise ValueError("q must be prime")
    return tuple(merel_family(q))
