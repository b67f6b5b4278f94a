"""Lattices in Q^n: canonical Hermite bases over a common denominator.

A ``Lattice`` is (1/denom) times the row span of an integer basis kept
in Hermite normal form, so equality of lattices is equality of the
stored data.  All pipeline subgroup arithmetic reduces to sums,
intersections, preimages and membership tests of these objects.
"""

from fractions import Fraction
from math import gcd

from ..errors import SingularOperator
from .matrix import IntMatrix, RatMatrix
from .multimodular import is_nonsingular, solve_exact
from .normal_forms import hnf_with_pivots, kernel_int


class Lattice:
    __slots__ = ("ambient_dim", "basis", "denom", "pivots")

    def __init__(self, basis, denom=1, ambient_dim=None, _canonical=False):
        """Build the lattice (1/denom) * rowspan(basis).

        Rows need not be independent or reduced; the constructor puts
        them in Hermite form and normalizes the denominator.
        """
        if isinstance(basis, list):
            basis = IntMatrix(basis, ncols=ambient_dim)
        n = basis.n if basis.n or ambient_dim is None else ambient_dim
        if ambient_dim is not None and basis.n and basis.n != ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if denom <= 0:
            raise ValueError("denominator must be positive")
        if _canonical:
            H, piv = basis, None
        else:
            H, piv = hnf_with_pivots(basis)
        g = H.content()
        if g > 1:
            g = gcd(g, denom)
            if g > 1:
                H = IntMatrix([[v // g for v in r] for r in H.rows], ncols=H.n)
                denom //= g
        self.ambient_dim = n
        self.basis = H
        self.denom = denom
        if piv is None or g > 1:
            self.pivots = _pivot_columns(H)
        else:
            self.pivots = piv

    @classmethod
    def standard(cls, n):
        return cls(IntMatrix.identity(n), 1, ambient_dim=n, _canonical=True)

    @classmethod
    def zero(cls, n):
        return cls(IntMatrix([], ncols=n), 1, ambient_dim=n, _canonical=True)

    @property
    def rank(self):
        return self.basis.m

    def __eq__(self, other):
        return (
            isinstance(other, Lattice)
            and self.ambient_dim == other.ambient_dim
            and self.denom == other.denom
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.denom, self.basis))

    def __repr__(self):
        return f"Lattice(dim={self.ambient_dim}, rank={self.rank}, denom={self.denom})"

    # -- membership and coordinates -------------------------------------

    def _reduce(self, w, scale):
        """Reduce scale*w against the basis rows; returns (residue, coords)."""
        coords = []
        w = [scale * v for v in w]
        rows = self.basis.rows
        for k, j in enumerate(self.pivots):
            p = rows[k][j]
            q, rem = divmod(w[j], p)
            if q:
                row = rows[k]
                for t in range(j, len(w)):
                    if row[t]:
                        w[t] -= q * row[t]
            coords.append((q, rem))
        return w, coords

    def contains_vector(self, num, den=1):
        """Is num/den (a rational column vector) in the lattice?"""
        if len(num) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        # v in L  <=>  den*denom-scaled equation solves over Z
        w, coords = self._reduce(num, self.denom)
        if any(w):
            return False
        return all(rem == 0 and q % den == 0 for q, rem in coords) if den != 1 else all(
            rem == 0 for _, rem in coords
        )

    def integer_coords(self, num, den=1):
        """Integer basis coordinates of a lattice member, or None."""
        w, coords = self._reduce(num, self.denom)
        if any(w):
            return None
        out = []
        for q, rem in coords:
            if rem:
                return None
            if den != 1:
                q, r2 = divmod(q, den)
                if r2:
                    return None
            out.append(q)
        return out

    def rational_coords(self, num, den=1):
        """Coordinates over Q of a vector in the Q-span, or None.

        Returns (coeffs, coeff_den) with vector = sum coeffs_i/coeff_den
        times basis rows / denom ... i.e. coordinates with respect to the
        *rows of basis* scaled by 1/denom.
        """
        if len(num) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        rows = self.basis.rows
        w = [Fraction(v * self.denom, den) for v in num]
        coeffs = []
        for k, j in enumerate(self.pivots):
            c = w[j] / rows[k][j]
            coeffs.append(c)
            if c:
                row = rows[k]
                for t in range(j, len(w)):
                    if row[t]:
                        w[t] -= c * row[t]
        if any(w):
            return None
        cden = 1
        for c in coeffs:
            cden = cden // gcd(cden, c.denominator) * c.denominator
        return [int(c * cden) for c in coeffs], cden

    def in_span(self, num, den=1):
        return self.rational_coords(num, den) is not None

    # -- lattice arithmetic ---------------------------------------------

    def __add__(self, other):
        self._check(other)
        d = self.denom * other.denom // gcd(self.denom, other.denom)
        rows = [[v * (d // self.denom) for v in r] for r in self.basis.rows]
        rows += [[v * (d // other.denom) for v in r] for r in other.basis.rows]
        return Lattice(IntMatrix(rows, ncols=self.ambient_dim), d)

    def intersect(self, other):
        self._check(other)
        a, b = self.basis, other.basis
        if a.m == 0 or b.m == 0:
            return Lattice.zero(self.ambient_dim)
        # x * (db * A) = y * (da * B) ; kernel over Z of the transposed stack
        da, db = self.denom, other.denom
        stacked = IntMatrix(
            [
                [db * a.rows[i][t] for i in range(a.m)]
                + [-da * b.rows[i][t] for i in range(b.m)]
                for t in range(self.ambient_dim)
            ],
            ncols=a.m + b.m,
        )
        ker = kernel_int(stacked)
        rows = []
        for krow in ker.rows:
            x = krow[: a.m]
            rows.append([db * sum(x[i] * a.rows[i][t] for i in range(a.m))
                         for t in range(self.ambient_dim)])
        return Lattice(IntMatrix(rows, ncols=self.ambient_dim), da * db)

    def contains(self, other):
        """Does this lattice contain the other one?"""
        self._check(other)
        for row in other.basis.rows:
            if not self.contains_vector(row, other.denom):
                return False
        return True

    def saturation(self):
        """Smallest saturated lattice containing this one (Q-span cap Z^n)."""
        if self.rank == 0:
            return Lattice.zero(self.ambient_dim)
        ker = kernel_int(self.basis)  # right kernel of basis (as a map)
        if ker.m == 0:
            return Lattice.standard(self.ambient_dim)
        return Lattice(kernel_int(ker), 1)

    def scale(self, num, den=1):
        """The lattice (num/den) * L."""
        if num == 0:
            return Lattice.zero(self.ambient_dim)
        if num < 0:
            num = -num
        return Lattice(self.basis.scale(num), self.denom * den)

    def index_in(self, other):
        """Index [other : self] for equal-rank self <= other."""
        from .normal_forms import det as idet

        X = coords_in(other, self)
        if X is None:
            raise SingularOperator("not a sublattice of equal rank")
        d = idet(X)
        if d < 0:
            d = -d
        return d

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")


def _pivot_columns(H):
    piv = []
    for row in H.rows:
        for j, v in enumerate(row):
            if v:
                piv.append(j)
                break
    return piv


def coords_in(L, sub):
    """Integer coordinate matrix of sub's basis in L's basis, or None.

    Row i of the result expresses basis row i of ``sub`` (over its
    denominator) in terms of L's basis rows (over L's denominator).
    """
    rows = []
    for row in sub.basis.rows:
        c = L.integer_coords(row, sub.denom)
        if c is None:
            return None
        rows.append(c)
    return IntMatrix(rows, ncols=L.rank)


def preimage_lattice(A, H):
    """{x in Q^n : A x in H} for square nonsingular rational A.

    Raises SingularOperator when A is singular; the caller treats that
    as "this annihilator is unusable".
    """
    if isinstance(A, IntMatrix):
        A = RatMatrix.from_int(A)
    n = A.n
    if A.m != n or n != H.ambient_dim:
        raise ValueError("square operator matching the ambient dimension required")
    if H.rank == 0:
        if not is_nonsingular(A.num):
            raise SingularOperator("operator is singular over Q")
        return Lattice.zero(n)
    # Solve A_num X = basis^T; columns of X/d then span the preimage of
    # the basis vectors, scaled back by A_den/denom.
    B = IntMatrix([[H.basis.rows[i][t] for i in range(H.rank)] for t in range(n)],
                  ncols=H.rank)
    N, d = solve_exact(A.num, B)
    rows = [[A.den * N.rows[t][i] for t in range(n)] for i in range(H.rank)]
    return Lattice(IntMatrix(rows, ncols=n), d * H.denom)


def integral_preimage_joint(mats):
    """{x in Q^n : M x is integral for every M in mats}.

    This is the dual lattice of the row span of the stacked matrices, so
    one Hermite form of small integer rows plus one verified solve
    replaces a chain of per-operator preimages and intersections.  The
    row span must have full rank (some member, or combination, must be
    nonsingular); SingularOperator is raised otherwise.
    """
    n = mats[0].n
    rows = []
    for M in mats:
        if M.n != n:
            raise ValueError("ambient dimension mismatch")
        rows.extend(list(r) for r in M.rows)
    D = Lattice(IntMatrix(rows, ncols=n), 1)
    if D.rank != n:
        raise SingularOperator("joint preimage is not a lattice (rank deficit)")
    N, d = solve_exact(D.basis, IntMatrix.identity(n))
    return Lattice(N.transpose(), d)


def preimage_in_lattice(domain, A, H):
    """{x in domain : A x in H} for an arbitrary (possibly singular) A."""
    if isinstance(A, IntMatrix):
        A = RatMatrix.from_int(A)
    n = A.n
    if A.m != n or n != H.ambient_dim or n != domain.ambient_dim:
        raise ValueError("dimension mismatch")
    k = domain.rank
    if k == 0:
        return Lattice.zero(n)
    # x = domain_basis^T c / domain_denom ;  A x = H_basis^T y / H_denom
    # <=> H_denom * A_num * B_dom^T c  =  A_den * dom_denom * B_H^T y
    BdT = domain.basis.transpose()
    M1 = A.num * BdT  # n x k
    rows = []
    for t in range(n):
        r = [H.denom * v for v in M1.rows[t]]
        r += [-A.den * domain.denom * H.basis.rows[i][t] for i in range(H.rank)]
        rows.append(r)
    ker = kernel_int(IntMatrix(rows, ncols=k + H.rank))
    out = []
    for krow in ker.rows:
        c = krow[:k]
        out.append([sum(c[i] * domain.basis.rows[i][t] for i in range(k))
                    for t in range(n)])
    return Lattice(IntMatrix(out, ncols=n), domain.denom)
