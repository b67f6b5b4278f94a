"""Finite abelian quotients L/H of equal-rank lattice pairs."""

from ..errors import InfiniteOrder, NotStable, NotSublattice
from .lattice import Lattice, coords_in, preimage_in_lattice
from .matrix import IntMatrix, RatMatrix
from .normal_forms import det as int_det
from .normal_forms import snf_invariants


class FinAbelianGroup:
    """A finite abelian group presented as L/H with H <= L of equal rank.

    ``invariants`` is the elementary divisor chain d_1 | d_2 | ... with
    every d_i > 1 (the empty chain is the trivial group).
    """

    __slots__ = ("ambient", "sub", "_invariants", "_coords")

    def __init__(self, ambient, sub):
        if ambient.ambient_dim != sub.ambient_dim:
            raise NotSublattice("ambient dimension mismatch")
        if ambient.rank != sub.rank:
            raise NotSublattice("lattices must have equal rank")
        X = coords_in(ambient, sub)
        if X is None:
            raise NotSublattice("H is not contained in L")
        self.ambient = ambient
        self.sub = sub
        self._coords = X
        self._invariants = None

    @property
    def invariants(self):
        """Invariant factor chain of L/H (entries > 1, d_i | d_{i+1})."""
        if self._invariants is None:
            self._invariants = invariant_factors(self)
        return list(self._invariants)

    @property
    def order(self):
        n = 1
        for d in self.invariants:
            n *= d
        return n

    @property
    def exponent(self):
        inv = self.invariants
        return inv[-1] if inv else 1

    def is_trivial(self):
        return not self.invariants

    def __eq__(self, other):
        return (
            isinstance(other, FinAbelianGroup)
            and self.ambient == other.ambient
            and self.sub == other.sub
        )

    def __repr__(self):
        return f"FinAbelianGroup({self.invariants})"


def invariant_factors(G):
    """Elementary divisors of G = L/H via the Smith form of H in L-coordinates.

    The index [L : H] is read off the Hermite pivots first and used as a
    working modulus, which keeps every Smith-form entry bounded by the
    group order.
    """
    X = G._coords
    if X.m == 0:
        return []
    d = int_det(X)
    if d < 0:
        d = -d
    if d == 0:
        raise NotSublattice("sublattice has lower rank")
    if d == 1:
        return []
    return snf_invariants(X, modulus=d)


def fixed_subgroup(G, phi):
    """Kernel of the endomorphism induced by phi - 1 on L/H.

    ``phi`` must map L into L and H into H (checked; NotStable raised
    otherwise).  Returns the fixed subgroup as a FinAbelianGroup over
    the same H.
    """
    if isinstance(phi, IntMatrix):
        phi = RatMatrix.from_int(phi)
    L, H = G.ambient, G.sub
    if not _maps_into(phi, L, L):
        raise NotStable("phi does not preserve L")
    if not _maps_into(phi, H, H):
        raise NotStable("phi does not preserve H")
    n = L.ambient_dim
    delta = phi - IntMatrix.identity(n)
    fixed = preimage_in_lattice(L, delta, H)
    # H itself is fixed (phi preserves H), so H <= fixed holds.
    return FinAbelianGroup(fixed, H)


def _maps_into(phi, src, dst):
    for row in src.basis.rows:
        img_num, img_den = phi.apply(row, src.denom)
        if not dst.contains_vector(img_num, img_den):
            return False
    return True


def subgroup_generated(gens, H):
    """Subgroup of the ambient torus generated by ``gens`` modulo H.

    Each generator is an (int vector, denominator) pair and must be
    torsion modulo H, i.e. lie in the Q-span of H; InfiniteOrder is
    raised otherwise.  Returns (H + sum Z g_i) / H.
    """
    n = H.ambient_dim
    L = H
    rows = []
    den = 1
    for num, gden in gens:
        if len(num) != n:
            raise ValueError("generator dimension mismatch")
        if not H.in_span(num, gden):
            raise InfiniteOrder("generator is not torsion modulo H")
        rows.append((num, gden))
    if rows:
        from math import gcd

        den = H.denom
        for _, gden in rows:
            den = den // gcd(den, gden) * gden
        stacked = [[v * (den // gden) for v in num] for num, gden in rows]
        stacked += [[v * (den // H.denom) for v in r] for r in H.basis.rows]
        L = Lattice(IntMatrix(stacked, ncols=n), den)
    return FinAbelianGroup(L, H)
