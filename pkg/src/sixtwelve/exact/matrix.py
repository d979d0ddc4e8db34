"""Dense exact linear algebra over a single scalar domain."""
from __future__ import annotations

from fractions import Fraction

from .fields import common_parent, div


class Matrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0
        if any(len(r) != self.ncols for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows

    @classmethod
    def identity(cls, n, one=1):
        return cls([[one if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r, c):
        return cls([[0] * c for _ in range(r)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def copy(self):
        return Matrix([list(r) for r in self.rows])

    def transpose(self):
        return Matrix([list(c) for c in zip(*self.rows)]) if self.rows else Matrix([])

    T = property(transpose)

    def column(self, j):
        return [r[j] for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def __add__(self, other):
        return Matrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Matrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows])

    def scale(self, s):
        return Matrix([[a * s for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("dimension mismatch")
            cols = list(zip(*other.rows))
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = 0
                    for a, b in zip(r, c):
                        if a and b:
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return Matrix(out)
        if isinstance(other, (list, tuple)):
            return [sum((a * b for a, b in zip(r, other) if a and b), 0) for r in self.rows]
        return self.scale(other)

    __matmul__ = __mul__

    def __rmul__(self, other):
        return self.scale(other)

    def domain(self):
        return common_parent(x for r in self.rows for x in r)

    def _is_integral(self):
        return all(isinstance(x, int) for r in self.rows for x in r)

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        self.domain()
        if self._is_integral():
            return _bareiss_det([list(r) for r in self.rows])
        m = [list(r) for r in self.rows]
        det = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c] != 0), None)
            if piv is None:
                return 0 * m[0][0]
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            p = m[c][c]
            det = det * p
            inv = div(1, p)
            for r in range(c + 1, n):
                f = m[r][c]
                if f == 0:
                    continue
                f = f * inv
                rr, rc = m[r], m[c]
                for k in range(c + 1, n):
                    if rc[k] != 0:
                        rr[k] = rr[k] - f * rc[k]
        return det

    def rref(self):
        """Reduced row echelon form and pivot columns."""
        self.domain()
        m = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            piv = next((i for i in range(r, self.nrows) if m[i][c] != 0), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = div(1, m[r][c])
            m[r] = [x * inv if x != 0 else x for x in m[r]]
            for i in range(self.nrows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    ri, rr = m[i], m[r]
                    for k in range(c, self.ncols):
                        if rr[k] != 0:
                            ri[k] = ri[k] - f * rr[k]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return Matrix(m), pivots

    def rank(self):
        return len(self.rref()[1])

    def kernel(self):
        """Basis of the right null space, as lists."""
        rr, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in set(pivots)]
        basis = []
        for fcol in free:
            v = [0] * self.ncols
            v[fcol] = 1
            for i, pc in enumerate(pivots):
                v[pc] = -rr.rows[i][fcol]
            basis.append(v)
        return basis

    def inverse(self):
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        aug = Matrix([list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)])
        rr, piv = aug.rref()
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return Matrix([r[n:] for r in rr.rows])

    def solve(self, b):
        """One solution x of self*x = b, or None if inconsistent."""
        aug = Matrix([list(r) + [bi] for r, bi in zip(self.rows, b)])
        rr, piv = aug.rref()
        if self.ncols in piv:
            return None
        x = [0] * self.ncols
        for i, pc in enumerate(piv):
            x[pc] = rr.rows[i][self.ncols]
        return x

    def __repr__(self):
        return "Matrix(" + repr(self.rows) + ")"


def _bareiss_det(m):
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if sw is None:
                return 0
            m[k], m[sw] = m[sw], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def kernel_basis(m) -> list:
    """Basis of the right null space of ``m`` (empty iff full column rank)."""
    if not isinstance(m, Matrix):
        m = Matrix(m)
    return m.kernel()


def to_fractions(rows):
    return [[Fraction(x) for x in r] for r in rows]
