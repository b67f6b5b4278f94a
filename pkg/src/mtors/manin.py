"""Weight-2 modular symbols for Gamma_1(N) presented by Manin symbols.

Generators are pairs (u, v) mod N with gcd(u, v, N) = 1, taken up to
sign; the two- and three-term relations are divided out and the
torsion-free quotient carries the coordinate system every operator acts
on.  The boundary map lands in the free module on cusp classes and its
integral kernel is the cuspidal lattice, the model of H_1(X(C), Z).
Conventions follow Stein, Modular Forms: A Computational Approach,
ch. 8, with the right action (u, v) g = (u g11 + v g21, u g12 + v g22).
"""

from math import gcd

from sympy import isprime

from . import cusps as cuspmod
from .errors import BadSymbol
from .linalg.lattice import Lattice
from .linalg.matrix import IntMatrix
from .linalg.normal_forms import kernel_int
from .linalg.quotient import torsion_free_quotient

INFINITY_CUSP = (1, 0)


def canon_pair(N, u, v):
    """Canonical representative of the +-(u, v) pair mod N."""
    u %= N
    v %= N
    nu = -u % N
    nv = -v % N
    if (nu, nv) < (u, v):
        return (nu, nv)
    return (u, v)


def act_pair(N, pair, g):
    """Right action of a 2x2 integer matrix on a symbol pair."""
    u, v = pair
    return canon_pair(N, u * g[0][0] + v * g[1][0], u * g[0][1] + v * g[1][1])


_S = ((0, -1), (1, 0))
_T = ((0, -1), (1, -1))


def enumerate_manin_symbols(N):
    """All Manin symbols (u, v) mod N, gcd(u, v, N) = 1, up to sign.

    Deterministic (lexicographic) order; (p*p - 1)/2 symbols at prime
    level p.
    """
    if N < 1:
        raise ValueError("level must be positive")
    seen = set()
    for u in range(N):
        for v in range(N):
            if gcd(gcd(u, v), N) == 1:
                seen.add(canon_pair(N, u, v))
    return sorted(seen)


def lift_to_sl2(u, v, N):
    """A matrix in SL_2(Z) whose bottom row is congruent to (u, v) mod N."""
    u %= N
    v %= N
    if gcd(gcd(u, v), N) != 1:
        raise BadSymbol(f"({u}, {v}) is not primitive mod {N}")
    c = u if u else N
    d = v
    while gcd(c, d) != 1:
        d += N
    g, s, t = _xgcd(d, c)
    # s*d + t*c = 1, so det [[s, -t], [c, d]] = s*d + t*c = 1.
    return ((s, -t), (c, d))


def _xgcd(a, b):
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


def _cusp_of_column(g, col):
    """The cusp (as a coprime pair) hit by column ``col`` of g in SL_2(Z)."""
    a, c = g[0][col], g[1][col]
    if c == 0:
        return (1, 0)
    if c < 0:
        a, c = -a, -c
    return (a, c)


class SymbolSpace:
    """The finite presentation of M_2(Gamma_1(N)).

    Attributes:
        N: the level.
        symbols: canonical (u, v) pairs in enumeration order.
        rank: rank of the torsion-free quotient (2g + c - 1).
        coord_map: per-symbol coordinate vectors in Z^rank.
        section: per-basis-vector symbol expressions (ambient vectors).
        cusp_labels: cusp classes indexing the boundary rows.
        boundary: IntMatrix (cusps x rank), the boundary map delta.
        cuspidal: saturated integral kernel of delta, rank 2g.
    """

    def __init__(self, N):
        if N < 1:
            raise ValueError("level must be positive")
        self.N = N
        self.symbols = enumerate_manin_symbols(N)
        self.index = {s: i for i, s in enumerate(self.symbols)}
        self._build_quotient()
        self._build_boundary()

    # -- presentation ----------------------------------------------------

    def _build_quotient(self):
        N = self.N
        n = len(self.symbols)
        # Two-term relation x + xS = 0: pair symbols into signed variables.
        var_of = [None] * n
        nvars = 0
        for i, sym in enumerate(self.symbols):
            if var_of[i] is not None:
                continue
            j = self.index[act_pair(N, sym, _S)]
            if j == i:
                var_of[i] = (None, 0)  # 2x = 0, dies in the quotient
                continue
            var_of[i] = (nvars, 1)
            var_of[j] = (nvars, -1)
            nvars += 1
        self._var_of = var_of
        self._nvars = nvars
        # Three-term relation x + xT + xT^2 = 0, one row per T-orbit.
        rows = []
        seen = set()
        for i, sym in enumerate(self.symbols):
            j = self.index[act_pair(N, sym, _T)]
            k = self.index[act_pair(N, self.symbols[j], _T)]
            key = min(i, j, k)
            if key in seen:
                continue
            seen.add(key)
            coeff = {}
            for m in (i, j, k):
                vk, sgn = var_of[m]
                if vk is not None:
                    coeff[vk] = coeff.get(vk, 0) + sgn
            if any(coeff.values()):
                row = [0] * nvars
                for vk, c in coeff.items():
                    row[vk] = c
                rows.append(row)
        rank, var_coords, var_section = torsion_free_quotient(rows, nvars)
        self.rank = rank
        coord_map = []
        zero = [0] * rank
        for i in range(n):
            vk, sgn = var_of[i]
            if vk is None:
                coord_map.append(list(zero))
            elif sgn == 1:
                coord_map.append(list(var_coords[vk]))
            else:
                coord_map.append([-x for x in var_coords[vk]])
        self.coord_map = coord_map
        # Translate the section from variables back to symbol combinations.
        var_rep = [None] * nvars
        for i in range(n):
            vk, sgn = var_of[i]
            if vk is not None and sgn == 1:
                var_rep[vk] = i
        section = []
        for svec in var_section:
            expr = {}
            for vk, c in enumerate(svec):
                if c:
                    expr[var_rep[vk]] = expr.get(var_rep[vk], 0) + c
            section.append(expr)
        self.section = section  # list of {symbol index: coefficient}

    # -- boundary --------------------------------------------------------

    def _classify_boundary(self):
        N = self.N
        prime_level = N >= 5 and isprime(N)
        endpoints = []
        keys = set()
        for sym in self.symbols:
            g = lift_to_sl2(sym[0], sym[1], N)
            cinf = _cusp_of_column(g, 0)
            czero = _cusp_of_column(g, 1)
            endpoints.append((cinf, czero))
            if not prime_level:
                keys.add(self._general_key(cinf))
                keys.add(self._general_key(czero))
        if prime_level:
            self.cusp_labels = cuspmod.cusp_classes(N)
            self._cusp_classifier = lambda pair: cuspmod.cusp_index(
                N, cuspmod.classify_pair(N, pair[0], pair[1])
            )
        else:
            self.cusp_labels = sorted(keys)
            index = {k: i for i, k in enumerate(self.cusp_labels)}
            self._cusp_classifier = lambda pair: index[self._general_key(pair)]
        self._symbol_boundary = []
        for cinf, czero in endpoints:
            i1 = self._cusp_classifier(cinf)
            i0 = self._cusp_classifier(czero)
            self._symbol_boundary.append(None if i1 == i0 else (i1, i0))

    def _rebuild_cusp_index(self):
        """Restore the derived cusp data after loading from cache."""
        self._classify_boundary()

    def _build_boundary(self):
        self._classify_boundary()
        c = len(self.cusp_labels)
        rows = [[0] * self.rank for _ in range(c)]
        for k, expr in enumerate(self.section):
            for sym_idx, coeff in expr.items():
                b = self._symbol_boundary[sym_idx]
                if b is not None:
                    rows[b[0]][k] += coeff
                    rows[b[1]][k] -= coeff
        self.boundary = IntMatrix(rows, ncols=self.rank)
        self.cuspidal = Lattice(kernel_int(self.boundary), 1, ambient_dim=self.rank)

    def _general_key(self, pair):
        a, c = pair
        N = self.N
        g = gcd(c % N if c % N else N, N)
        k1 = (c % N, a % g)
        k2 = (-c % N, -a % g)
        return min(k1, k2)

    # -- symbol and path coordinates --------------------------------------

    def symbol_coords(self, u, v):
        """Quotient coordinates of the Manin symbol (u, v)."""
        key = canon_pair(self.N, u, v)
        idx = self.index.get(key)
        if idx is None:
            raise BadSymbol(f"({u}, {v}) is not primitive mod {self.N}")
        return self.coord_map[idx]

    def boundary_of_vector(self, vec):
        """Apply the boundary map to a coordinate vector."""
        return self.boundary.apply(vec)

    def path_coords(self, alpha, beta):
        """Coordinates of the path {alpha, beta} between cusps.

        Cusps are coprime integer pairs (a, c) with (1, 0) the infinite
        cusp.  Additive under concatenation; computed by splitting each
        {oo, x} leg into unimodular continued-fraction segments (Manin's
        trick).
        """
        out = [0] * self.rank
        self._accumulate_from_infinity(beta, out, 1)
        self._accumulate_from_infinity(alpha, out, -1)
        return out

    def _accumulate_from_infinity(self, cusp, out, mult):
        a, c = cusp
        if c == 0:
            return
        if c < 0:
            a, c = -a, -c
        g = gcd(abs(a), c)
        if g > 1:
            a //= g
            c //= g
        # Segment k of {oo, a/c} joins consecutive convergents and is the
        # Manin symbol (q_k, (-1)^(k-1) q_(k-1)); only the denominators
        # of the convergents enter.
        q_prev, q_curr = 1, 0  # q_(-2), q_(-1)
        sign = -1  # (-1)^(k-1) at k = 0
        num, den = a, c
        while den:
            quot = num // den
            num, den = den, num - quot * den
            q_prev, q_curr = q_curr, quot * q_curr + q_prev
            coords = self.symbol_coords(q_curr % self.N, (sign * q_prev) % self.N)
            for t in range(self.rank):
                v = coords[t]
                if v:
                    out[t] += mult * v
            sign = -sign

    def cusp_count(self):
        return len(self.cusp_labels)

    def genus(self):
        """g with rank = 2g + cusps - 1."""
        return (self.rank - self.cusp_count() + 1) // 2

    def __repr__(self):
        return f"SymbolSpace(N={self.N}, rank={self.rank})"


def genus_gamma1(p):
    """Genus of X_1(p) for prime p >= 5."""
    return (p - 5) * (p - 7) // 24


def build_symbol_space(N):
    """Construct the Manin-symbol presentation of M_2(Gamma_1(N))."""
    return SymbolSpace(N)
