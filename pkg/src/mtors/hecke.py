"""Exact operator matrices on the symbol space: T_q, <d>, the star
involution, the annihilators eta_q = T_q - <q> - q, and composite T_n.

Every operator is materialized once as a dense integer matrix in the
column-vector convention (vectors are columns, the matrix acts on the
left) and checked to preserve the cuspidal lattice.
"""

from math import gcd

from sympy import factorint, isprime

from .errors import BadUnit
from .heilbronn import heilbronn_matrices
from .linalg.matrix import IntMatrix
from .manin import act_pair, canon_pair


class OperatorMatrix:
    """A named exact operator acting on SymbolSpace coordinates."""

    __slots__ = ("space", "name", "matrix", "_cuspidal_restriction")

    def __init__(self, space, name, matrix, check_cuspidal=True):
        self.space = space
        self.name = name
        self.matrix = matrix
        self._cuspidal_restriction = None
        if check_cuspidal and not self.preserves_cuspidal():
            raise AssertionError(f"{name} does not preserve the cuspidal lattice")

    def preserves_cuspidal(self):
        """The boundary of the image of every cuspidal basis vector vanishes."""
        H = self.space.cuspidal
        for row in H.basis.rows:
            img = self.matrix.apply(row)
            if any(self.space.boundary.apply(img)):
                return False
        return True

    def cuspidal_restriction(self):
        """Matrix of the operator on cuspidal-basis coordinates (2g x 2g)."""
        if self._cuspidal_restriction is None:
            H = self.space.cuspidal
            cols = []
            for row in H.basis.rows:
                img = self.matrix.apply(row)
                coords = H.rational_coords(img, 1)
                if coords is None:
                    raise AssertionError("image left the cuspidal space")
                num, den = coords
                if den != 1:
                    raise AssertionError("cuspidal restriction must be integral")
                cols.append(num)
            n = H.rank
            self._cuspidal_restriction = IntMatrix(
                [[cols[j][i] for j in range(n)] for i in range(n)], ncols=n
            )
        return self._cuspidal_restriction

    def __mul__(self, other):
        if isinstance(other, OperatorMatrix):
            return OperatorMatrix(
                self.space,
                f"{self.name}*{other.name}",
                self.matrix * other.matrix,
                check_cuspidal=False,
            )
        return NotImplemented

    def __repr__(self):
        return f"OperatorMatrix({self.name}, N={self.space.N})"


def _columns_to_matrix(cols, rank):
    return IntMatrix([[cols[j][i] for j in range(len(cols))] for i in range(rank)],
                     ncols=len(cols))


def _operator_from_symbol_map(space, name, image_coords, check=True):
    """Build the operator whose action on the class of symbol s is
    image_coords(s); applied to the basis through the section."""
    cols = []
    r = space.rank
    for expr in space.section:
        col = [0] * r
        for sym_idx, coeff in expr.items():
            vec = image_coords(space.symbols[sym_idx])
            for t in range(r):
                v = vec[t]
                if v:
                    col[t] += coeff * v
        cols.append(col)
    return OperatorMatrix(space, name, _columns_to_matrix(cols, r), check_cuspidal=check)


def hecke_matrix(space, q):
    """The Hecke operator T_q for prime q not dividing the level."""
    N = space.N
    if not isprime(q):
        raise ValueError("q must be prime")
    if N % q == 0:
        raise ValueError("q must not divide the level")
    fam = heilbronn_matrices(q)
    coord = space.coord_map
    index = space.index

    def image(sym):
        u, v = sym
        acc = [0] * space.rank
        for g in fam:
            w = canon_pair(N, u * g[0][0] + v * g[1][0], u * g[0][1] + v * g[1][1])
            idx = index.get(w)
            if idx is None:
                continue  # image not primitive mod N
            vec = coord[idx]
            for t in range(space.rank):
                x = vec[t]
                if x:
                    acc[t] += x
        return acc

    return _operator_from_symbol_map(space, f"T{q}", image)


def diamond_matrix(space, d):
    """The diamond operator <d>, acting by (u, v) -> (du, dv)."""
    N = space.N
    if gcd(d, N) != 1:
        raise BadUnit(f"{d} is not a unit mod {N}")
    coord = space.coord_map
    index = space.index

    def image(sym):
        return coord[index[canon_pair(N, d * sym[0], d * sym[1])]]

    return _operator_from_symbol_map(space, f"<{d % N}>", image)


def star_matrix(space):
    """The star involution from complex conjugation: {a, b} -> {-a, -b}.

    On Manin symbols this is (u, v) -> (-u, v).
    """
    N = space.N
    coord = space.coord_map
    index = space.index

    def image(sym):
        return coord[index[canon_pair(N, -sym[0], sym[1])]]

    return _operator_from_symbol_map(space, "star", image)


def eta_matrix(space, q):
    """The annihilator eta_q = T_q - <q> - q."""
    tq = hecke_matrix(space, q)
    dq = diamond_matrix(space, q)
    mat = tq.matrix - dq.matrix - IntMatrix.identity(space.rank).scale(q)
    return OperatorMatrix(space, f"eta{q}", mat, check_cuspidal=False)


def hecke_composite(space, n):
    """T_n for gcd(n, N) = 1, assembled by the standard recurrences.

    T_1 = 1, T_{q^r} = T_{q^{r-1}} T_q - q <q> T_{q^{r-2}}, and
    multiplicativity across coprime factors.
    """
    N = space.N
    if n < 1:
        raise ValueError("n must be positive")
    if gcd(n, N) != 1:
        raise ValueError("n must be coprime to the level")
    r = space.rank
    result = IntMatrix.identity(r)
    for q, e in factorint(n).items():
        tq = hecke_matrix(space, q).matrix
        if e == 1:
            part = tq
        else:
            qdq = diamond_matrix(space, q).matrix.scale(q)
            prev2 = IntMatrix.identity(r)
            prev1 = tq
            for _ in range(e - 1):
                prev1, prev2 = prev1 * tq - qdq * prev2, prev1
            part = prev1
        result = result * part
    return OperatorMatrix(space, f"T{n}", result, check_cuspidal=False)


def induced_boundary_action(space, op):
    """Matrix of the action induced on the image of the boundary map.

    Returns (W_rows, action) where W_rows is a basis (as rows) of the
    image lattice of delta and ``action`` is the integer matrix of the
    induced endomorphism in those coordinates.  Consistency (the
    operator genuinely descends) is asserted on every symbol generator.
    """
    from .linalg.lattice import Lattice

    delta = space.boundary
    r = space.rank
    cols = [[delta.rows[i][j] for i in range(delta.m)] for j in range(r)]
    W = Lattice(IntMatrix(cols, ncols=delta.m), 1)
    # Sections: basis vector w_k = delta(x_k) with x_k tracked via HNF transform.
    from .linalg.normal_forms import hnf

    _, U = hnf(IntMatrix(cols, ncols=delta.m))
    k = W.rank
    action_cols = []
    for i in range(k):
        x = U.rows[i]  # combination of coordinate basis vectors
        tx = op.matrix.apply(x)
        img = delta.apply(tx)
        coords = W.integer_coords(img, 1)
        if coords is None:
            raise AssertionError("boundary action is not integral on the image")
        action_cols.append(coords)
    act = IntMatrix([[action_cols[j][i] for j in range(k)] for i in range(k)], ncols=k)
    # Consistency on all generators: delta(T x) must equal act(delta(x)).
    for j in range(r):
        e = [1 if t == j else 0 for t in range(r)]
        lhs = delta.apply(op.matrix.apply(e))
        w = W.integer_coords(delta.apply(e), 1)
        if w is None:
            raise AssertionError("boundary image escaped its own lattice")
        rhs_coords = act.apply(w)
        rhs = [0] * delta.m
        for t, c in enumerate(rhs_coords):
            if c:
                for i in range(delta.m):
                    rhs[i] += c * W.basis.rows[t][i]
        if lhs != rhs:
            raise AssertionError("operator does not descend to the boundary")
    return W, act
