"""Cusp classes of X_1(p) for prime p, their rationality, and the Galois action.

The p - 1 cusps split into two orbits of size (p-1)/2 under the diamond
operators: the orbit of the infinite cusp [1:0] (second coordinate zero
mod p), whose members are rational, and the orbit of 0, whose members
are defined over the real cyclotomic field Q(mu_p)^+.  The Galois
automorphism sigma_d fixes every class of the first orbit and sends
[1:y] to [1:dy].
"""

from dataclasses import dataclass

from sympy import isprime

from .errors import BadLevel, BadUnit

INFINITY = "INFINITY"
ZERO = "ZERO"


def _check_level(p):
    if p < 5 or not isprime(p):
        raise BadLevel(f"level must be a prime >= 5, got {p}")


@dataclass(frozen=True, order=True)
class CuspClass:
    """Canonical representative [x:y] of a cusp class of X_1(p)."""

    p: int
    x: int
    y: int

    @property
    def orbit(self):
        return INFINITY if self.y == 0 else ZERO

    def __str__(self):
        return f"[{self.x}:{self.y}]@{self.p}"


def classify_pair(p, a, c):
    """Cusp class of the point a/c of P^1(Q) on X_1(p) (c = 0 means infinity).

    Two coprime pairs are equivalent iff their second coordinates agree
    mod p up to sign, with the first coordinates also matching (up to the
    same sign) when the second is divisible by p.
    """
    y = c % p
    if y == 0:
        x = a % p
        if x == 0:
            raise ValueError("pair is not primitive at p")
        x = min(x, p - x)
        return CuspClass(p, x, 0)
    y = min(y, p - y)
    return CuspClass(p, 1, y)


def cusp_classes(p):
    """All p - 1 cusp classes in canonical order: the [x:0] then the [1:y]."""
    _check_level(p)
    half = (p - 1) // 2
    out = [CuspClass(p, x, 0) for x in range(1, half + 1)]
    out += [CuspClass(p, 1, y) for y in range(1, half + 1)]
    return out


def cusp_index(p, cls):
    """Position of a class in the canonical ordering of cusp_classes(p)."""
    half = (p - 1) // 2
    if cls.y == 0:
        return cls.x - 1
    return half + cls.y - 1


def representative_point(cls):
    """A coprime pair (a, c) in P^1(Q) whose class is ``cls``."""
    if cls.y == 0:
        return (cls.x, cls.p)
    return (1, cls.y)


def is_rational(cls):
    """Rationality of the cusp class: the infinity orbit is Q-rational."""
    return cls.orbit == INFINITY


def galois_cusp_action(p, d):
    """The permutation of cusp-class indices induced by sigma_d.

    Fixes every INFINITY class; sends [1:y] to [1:dy].  Raises BadUnit
    unless gcd(d, p) = 1.
    """
    _check_level(p)
    if d % p == 0:
        raise BadUnit(f"{d} is not a unit mod {p}")
    classes = cusp_classes(p)
    perm = []
    for cls in classes:
        if cls.y == 0:
            perm.append(cusp_index(p, cls))
        else:
            perm.append(cusp_index(p, classify_pair(p, 1, d * cls.y)))
    return perm


def apply_divisor_permutation(perm, coeffs):
    """Push a divisor coefficient vector through a cusp permutation."""
    out = [0] * len(coeffs)
    for i, c in enumerate(coeffs):
        if c:
            out[perm[i]] += c
    return out


def generates_quotient(p, d):
    """Does the class of d generate (Z/pZ)^x / {+-1}?"""
    order = (p - 1) // 2
    from sympy import factorint

    d %= p
    if d == 0:
        return False
    for q in factorint(order):
        if pow(d, order // q, p) in (1, p - 1):
            return False
    return True


def choose_galois_generator(p):
    """Smallest d >= 2 whose class generates (Z/pZ)^x / {+-1}."""
    _check_level(p)
    d = 2
    while not generates_quotient(p, d):
        d += 1
    return d


def rational_difference_divisors(p):
    """Degree-zero divisors c_i - c_0 over the rational cusp classes.

    Returns (p-1)/2 - 1 coefficient vectors indexed like cusp_classes(p).
    """
    _check_level(p)
    n = p - 1
    half = n // 2
    out = []
    for i in range(1, half):
        coeffs = [0] * n
        coeffs[i] = 1
        coeffs[0] = -1
        out.append(coeffs)
    return out
