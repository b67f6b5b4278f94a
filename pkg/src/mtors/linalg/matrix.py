"""Dense exact matrices over Z and Q.

``IntMatrix`` is a thin wrapper around a list of row lists of Python
ints.  ``RatMatrix`` keeps a single common denominator next to an
integer matrix, which keeps every normal-form computation in integer
arithmetic.
"""

from math import gcd

from .._kernel import mat_mul, mat_vec


class IntMatrix:
    """Integer matrix stored as a list of row lists."""

    __slots__ = ("m", "n", "rows")

    def __init__(self, rows, ncols=None):
        self.rows = [list(r) for r in rows]
        self.m = len(self.rows)
        if self.m:
            self.n = len(self.rows[0])
            for r in self.rows:
                if len(r) != self.n:
                    raise ValueError("ragged rows")
        else:
            self.n = 0 if ncols is None else ncols

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, m, n):
        return cls([[0] * n for _ in range(m)], ncols=n)

    def copy(self):
        return IntMatrix([list(r) for r in self.rows], ncols=self.n)

    def transpose(self):
        return IntMatrix(
            [[self.rows[i][j] for i in range(self.m)] for j in range(self.n)],
            ncols=self.m,
        )

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.m == other.m
            and self.n == other.n
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.m, self.n, tuple(tuple(r) for r in self.rows)))

    def __mul__(self, other):
        if isinstance(other, IntMatrix):
            if self.n != other.m:
                raise ValueError("dimension mismatch")
            return IntMatrix(mat_mul(self.rows, other.rows), ncols=other.n)
        return NotImplemented

    def __add__(self, other):
        if self.m != other.m or self.n != other.n:
            raise ValueError("dimension mismatch")
        return IntMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
            ncols=self.n,
        )

    def __sub__(self, other):
        if self.m != other.m or self.n != other.n:
            raise ValueError("dimension mismatch")
        return IntMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
            ncols=self.n,
        )

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return IntMatrix([[c * v for v in r] for r in self.rows], ncols=self.n)

    def apply(self, vec):
        """Matrix times column vector (a plain list)."""
        if len(vec) != self.n:
            raise ValueError("dimension mismatch")
        return mat_vec(self.rows, vec)

    def is_zero(self):
        return all(v == 0 for r in self.rows for v in r)

    def content(self):
        g = 0
        for r in self.rows:
            for v in r:
                if v:
                    g = gcd(g, v)
                    if g == 1:
                        return 1
        return g

    def max_abs(self):
        best = 0
        for r in self.rows:
            for v in r:
                if v < 0:
                    v = -v
                if v > best:
                    best = v
        return best

    def __repr__(self):
        return f"IntMatrix({self.m}x{self.n})"


class RatMatrix:
    """Rational matrix as (integer matrix, positive common denominator)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = num.scale(-1), -den
        g = num.content()
        if g > 1:
            g = gcd(g, den)
            if g > 1:
                num = IntMatrix([[v // g for v in r] for r in num.rows], ncols=num.n)
                den //= g
        self.num = num
        self.den = den

    @property
    def m(self):
        return self.num.m

    @property
    def n(self):
        return self.num.n

    @classmethod
    def from_int(cls, mat):
        return cls(mat, 1)

    @classmethod
    def identity(cls, n):
        return cls(IntMatrix.identity(n), 1)

    def __eq__(self, other):
        return (
            isinstance(other, RatMatrix)
            and self.den == other.den
            and self.num == other.num
        )

    def __hash__(self):
        return hash((self.den, self.num))

    def __mul__(self, other):
        if isinstance(other, RatMatrix):
            return RatMatrix(self.num * other.num, self.den * other.den)
        if isinstance(other, IntMatrix):
            return RatMatrix(self.num * other, self.den)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, IntMatrix):
            return RatMatrix(other * self.num, self.den)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, IntMatrix):
            other = RatMatrix.from_int(other)
        return RatMatrix(
            self.num.scale(other.den) + other.num.scale(self.den),
            self.den * other.den,
        )

    def __sub__(self, other):
        if isinstance(other, IntMatrix):
            other = RatMatrix.from_int(other)
        return RatMatrix(
            self.num.scale(other.den) - other.num.scale(self.den),
            self.den * other.den,
        )

    def is_integral(self):
        return self.den == 1

    def is_zero(self):
        return self.num.is_zero()

    def transpose(self):
        return RatMatrix(self.num.transpose(), self.den)

    def apply(self, vec_num, vec_den=1):
        """Apply to a rational column vector (int list, denominator)."""
        out = self.num.apply(vec_num)
        return out, self.den * vec_den

    def __repr__(self):
        return f"RatMatrix({self.m}x{self.n}, den={self.den})"


def normalize_vector(num, den):
    """Reduce an (int list, denominator) rational vector to lowest terms."""
    if den < 0:
        num = [-v for v in num]
        den = -den
    g = den
    for v in num:
        if v:
            g = gcd(g, v)
            if g == 1:
                return num, den
    if g > 1:
        num = [v // g for v in num]
        den //= g
    return num, den
