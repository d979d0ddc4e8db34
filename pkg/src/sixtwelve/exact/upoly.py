"""Dense univariate polynomials over any exact scalar domain."""
from __future__ import annotations

from .fields import div


class UPoly:
    """Coefficients in ascending order, trailing zeros stripped."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def x(cls):
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def lc(self):
        return self.c[-1]

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly([other])
        return len(self.c) == len(other.c) and all(a == b for a, b in zip(self.c, other.c))

    def __add__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly([other])
        a, b = self.c, other.c
        n = max(len(a), len(b))
        return UPoly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-x for x in self.c])

    def __sub__(self, other):
        return self + (-other if isinstance(other, UPoly) else UPoly([-other]))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return UPoly([x * other for x in self.c])
        a, b = self.c, other.c
        if not a or not b:
            return UPoly([])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        r = UPoly([1])
        for _ in range(n):
            r = r * self
        return r

    def __call__(self, x):
        acc = 0
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    def derivative(self):
        return UPoly([i * self.c[i] for i in range(1, len(self.c))])

    def __divmod__(self, other):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        a = list(self.c)
        b = other.c
        db = len(b) - 1
        lb = b[-1]
        if len(a) <= db:
            return UPoly([]), self
        q = [0] * (len(a) - db)
        for i in range(len(a) - 1, db - 1, -1):
            if a[i] == 0:
                continue
            f = div(a[i], lb)
            q[i - db] = f
            for j in range(db + 1):
                a[i - db + j] = a[i - db + j] - f * b[j]
        return UPoly(q), UPoly(a[:db])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self):
        lc = self.lc()
        return UPoly([div(x, lc) for x in self.c])

    def __repr__(self):
        return f"UPoly({list(self.c)})"


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd over a field."""
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def sylvester_matrix(f: UPoly, g: UPoly):
    m, n = f.degree, g.degree
    size = m + n
    rows = []
    fc = list(reversed(f.c))
    gc = list(reversed(g.c))
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - i - len(fc)))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - i - len(gc)))
    return rows


def resultant(f: UPoly, g: UPoly):
    """Determinant of the Sylvester matrix of f and g."""
    from .matrix import Matrix

    if not f or not g:
        raise ValueError("resultant of the zero polynomial")
    if f.degree == 0 and g.degree == 0:
        return 1
    if f.degree == 0:
        return f.c[0] ** g.degree
    if g.degree == 0:
        return g.c[0] ** f.degree
    return Matrix(sylvester_matrix(f, g)).det()


def interpolate(xs, ys) -> UPoly:
    """Lagrange interpolation through distinct nodes."""
    result = UPoly([])
    for i, xi in enumerate(xs):
        term = UPoly([ys[i]])
        for j, xj in enumerate(xs):
            if j != i:
                term = term * UPoly([div(-xj, xi - xj), div(1, xi - xj)])
        result = result + term
    return result

