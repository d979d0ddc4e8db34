"""Scalar domains: rationals, number fields, prime fields and Z/p^k.

Rationals are plain ``fractions.Fraction``.  The other domains are small
element classes that interoperate with ``int`` and ``Fraction`` so generic
code can use integer literals freely.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC


class MixedFieldError(TypeError):
    """Raised when elements of two different fields are combined."""


class ZeroDivisorError(ArithmeticError):
    """Inversion hit a zero divisor: the supplied minimal polynomial is reducible."""


def QQ(x) -> Fraction:
    """Coerce an int, str or Fraction to an exact rational."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) or isinstance(x, _RationalABC)


def div(a, b):
    """Exact field division that never falls back to float on two ints."""
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


# ---------------------------------------------------------------------------
# univariate helpers on coefficient lists (ascending), rational coefficients

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _pdivmod(a, b):
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [Fraction(0)] * max(len(a) - db, 1)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == 0:
            continue
        f = c / lb
        q[i - db] = f
        for j in range(db + 1):
            a[i - db + j] -= f * b[j]
    return _trim(q), _trim(a[:db])


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _psub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


# ---------------------------------------------------------------------------

class NumberField:
    """Q[t]/(f) for a monic f with rational coefficients (ascending order).

    Irreducibility is the caller's responsibility; a reducible f surfaces as
    ZeroDivisorError when a zero divisor is inverted.
    """

    def __init__(self, minpoly, name: str = "t"):
        mp = _trim(QQ(c) for c in minpoly)
        if len(mp) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        if mp[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        self.minpoly = tuple(mp)
        self.degree = len(mp) - 1
        self.name = name
        d = self.degree
        # t^k reduced, for d <= k <= 2d-2
        self._red = {}
        cur = [-c for c in mp[:-1]]
        for k in range(d, 2 * d - 1):
            self._red[k] = tuple(cur)
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                cur = [cur[i] - top * mp[i] for i in range(d)]

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(("NF", self.minpoly))

    def __repr__(self):
        return f"NumberField({[str(c) for c in self.minpoly]})"

    def __call__(self, x) -> "NFElement":
        if isinstance(x, NFElement):
            if x.parent != self:
                raise MixedFieldError("element belongs to another number field")
            return x
        if isinstance(x, (list, tuple)):
            c = [QQ(v) for v in x]
            if len(c) > self.degree:
                return self._reduce(c)
            return NFElement(self, tuple(c + [Fraction(0)] * (self.degree - len(c))))
        return NFElement(self, (QQ(x),) + (Fraction(0),) * (self.degree - 1))

    @property
    def gen(self) -> "NFElement":
        if self.degree == 1:
            return self(-self.minpoly[0])
        return self([0, 1])

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def _reduce(self, c) -> "NFElement":
        d = self.degree
        out = [Fraction(0)] * d
        for k, v in enumerate(c):
            if v == 0:
                continue
            if k < d:
                out[k] += v
            else:
                r = self._red.get(k)
                if r is None:
                    # long reduction for unusually high powers
                    _, rem = _pdivmod([Fraction(0)] * k + [Fraction(1)], list(self.minpoly))
                    r = tuple(rem) + (Fraction(0),) * (d - len(rem))
                for i in range(d):
                    if r[i]:
                        out[i] += v * r[i]
        return NFElement(self, tuple(out))


class NFElement:
    __slots__ = ("parent", "coords")

    def __init__(self, parent: NumberField, coords):
        self.parent = parent
        self.coords = coords

    def _co(self, other):
        if isinstance(other, NFElement):
            if other.parent is not self.parent and other.parent != self.parent:
                raise MixedFieldError("elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.parent(other)
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return NFElement(self.parent, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return NFElement(self.parent, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return NFElement(self.parent, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.parent.zero
            return NFElement(self.parent, tuple(a * other for a in self.coords))
        o = self._co(other)
        if o is NotImplemented:
            return o
        a, b = self.coords, o.coords
        d = len(a)
        prod = [0] * (2 * d - 1)
        for i in range(d):
            x = a[i]
            if not x:
                continue
            for j in range(d):
                y = b[j]
                if y:
                    prod[i + j] += x * y
        return self.parent._reduce(prod)

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        a = _trim(self.coords)
        if not a:
            raise ZeroDivisionError("inverse of zero in number field")
        # extended Euclid: s*a + t*f = g
        f = list(self.parent.minpoly)
        r0, r1 = f, a
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        if len(r0) != 1:
            raise ZeroDivisorError(
                "non-invertible element: minimal polynomial is not irreducible")
        inv = [c / r0[0] for c in s0]
        return self.parent(inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return NFElement(self.parent, tuple(a / other for a in self.coords))
        o = self._co(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.parent.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, NFElement):
            return self.parent == other.parent and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.coords[0] == other and not any(self.coords[1:])
        return NotImplemented

    def __hash__(self):
        if not any(self.coords[1:]):
            return hash(self.coords[0])
        return hash(self.coords)

    def __bool__(self):
        return any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(f"({c})*{self.parent.name}^{i}" if i else f"({c})")
        return " + ".join(terms) or "0"


# ---------------------------------------------------------------------------

class ResidueRing:
    """Z/NZ; a field exactly when N is prime (the caller says so via ``prime``)."""

    def __init__(self, modulus: int, prime: int | None = None, exponent: int = 1):
        if modulus < 2:
            raise ValueError("modulus must be >= 2")
        self.modulus = modulus
        self.prime = prime
        self.exponent = exponent

    @property
    def is_field(self) -> bool:
        return self.prime is not None and self.exponent == 1

    def __eq__(self, other):
        return isinstance(other, ResidueRing) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("Zmod", self.modulus))

    def __repr__(self):
        return f"GF({self.modulus})" if self.is_field else f"Zmod({self.modulus})"

    def __call__(self, x) -> "Residue":
        if isinstance(x, Residue):
            if x.ring != self:
                raise MixedFieldError("residues with different moduli")
            return x
        if isinstance(x, Fraction):
            return Residue(self, x.numerator % self.modulus) / Residue(self, x.denominator % self.modulus)
        return Residue(self, int(x) % self.modulus)

    @property
    def zero(self):
        return Residue(self, 0)

    @property
    def one(self):
        return Residue(self, 1)


def GF(p: int) -> ResidueRing:
    return ResidueRing(p, prime=p, exponent=1)


def Zmod_pk(p: int, k: int) -> ResidueRing:
    return ResidueRing(p ** k, prime=p, exponent=k)


class Residue:
    __slots__ = ("ring", "v")

    def __init__(self, ring: ResidueRing, v: int):
        self.ring = ring
        self.v = v

    def _co(self, other):
        if isinstance(other, Residue):
            if other.ring.modulus != self.ring.modulus:
                raise MixedFieldError("residues with different moduli")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return self.ring(other).v
        return None

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return Residue(self.ring, (self.v + o) % self.ring.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return Residue(self.ring, (self.v - o) % self.ring.modulus)

    def __rsub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return Residue(self.ring, (o - self.v) % self.ring.modulus)

    def __neg__(self):
        return Residue(self.ring, -self.v % self.ring.modulus)

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return Residue(self.ring, self.v * o % self.ring.modulus)

    __rmul__ = __mul__

    def inverse(self):
        try:
            return Residue(self.ring, pow(self.v, -1, self.ring.modulus))
        except ValueError:
            if self.v % self.ring.modulus == 0:
                raise ZeroDivisionError("inverse of zero residue") from None
            raise ZeroDivisorError(f"{self.v} is not a unit mod {self.ring.modulus}") from None

    def __truediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self * Residue(self.ring, o % self.ring.modulus).inverse()

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return Residue(self.ring, o % self.ring.modulus) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Residue(self.ring, pow(self.v, n, self.ring.modulus))

    def __eq__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return (self.v - o) % self.ring.modulus == 0

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def lift(self) -> int:
        """Symmetric representative in (-N/2, N/2]."""
        m = self.ring.modulus
        return self.v - m if self.v > m // 2 else self.v

    def __repr__(self):
        return f"{self.v} mod {self.ring.modulus}"


def parent_of(x):
    """The domain an element lives in; ints and Fractions report QQ."""
    if isinstance(x, NFElement):
        return x.parent
    if isinstance(x, Residue):
        return x.ring
    if isinstance(x, (int, Fraction)):
        return QQ
    raise TypeError(f"unsupported scalar {type(x).__name__}")


def common_parent(values):
    """The single non-rational domain among ``values`` (QQ if none)."""
    found = QQ
    for v in values:
        p = parent_of(v)
        if p is QQ:
            continue
        if found is QQ:
            found = p
        elif found != p:
            raise MixedFieldError(f"entries from {found!r} and {p!r}")
    return found


def coerce(x, parent):
    if parent is QQ:
        return QQ(x)
    return parent(x)
