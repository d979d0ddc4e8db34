"""Weierstrass curves over Q: group law, minimal models, canonical heights, regulators."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath


class CurveMismatchError(ValueError):
    pass


class NotOnCurveError(ValueError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _vp(n, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    n = _frac(n)
    if n == 0:
        return 10 ** 9
    k = 0
    a, b = n.numerator, n.denominator
    while a % p == 0:
        a //= p
        k += 1
    while b % p == 0:
        b //= p
        k -= 1
    return k


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, _frac(getattr(self, name)))
        if self.discriminant == 0:
            raise ValueError("singular Weierstrass equation (discriminant 0)")

    @classmethod
    def from_ainvs(cls, ainvs: Sequence):
        if len(ainvs) == 2:
            return cls(0, 0, 0, ainvs[0], ainvs[1])
        return cls(*ainvs)

    @classmethod
    def from_invariants(cls, c4, c6):
        """Y^2 = X^3 - 27 c4 X - 54 c6 (affine form of Y^2 Z = X^3 - 27c4 XZ^2 - 54c6 Z^3)."""
        c4, c6 = _frac(c4), _frac(c6)
        if c4 ** 3 == c6 ** 2:
            raise ValueError("c4^3 = c6^2: no elliptic curve")
        return cls(0, 0, 0, -27 * c4, -54 * c6)

    @property
    def ainvs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def c_invariants(self):
        """Standard (c4, c6) of the long model."""
        b2, b4, b6, _ = self.b_invariants
        c4 = b2 * b2 - 24 * b4
        c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
        return c4, c6

    @property
    def discriminant(self) -> Fraction:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def j_invariant(self) -> Fraction:
        c4, _ = self.c_invariants
        return c4 ** 3 / self.discriminant

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.ainvs)

    def contains(self, x, y) -> bool:
        a1, a2, a3, a4, a6 = self.ainvs
        return y * y + a1 * x * y + a3 * y == x ** 3 + a2 * x * x + a4 * x + a6

    def point(self, x, y) -> "ECPoint":
        x, y = _frac(x), _frac(y)
        if not self.contains(x, y):
            raise NotOnCurveError(f"({x}, {y}) is not on the curve")
        return ECPoint(self, x, y)

    def point_from_projective(self, X, Y, Z) -> "ECPoint":
        if Z == 0:
            return self.zero()
        return self.point(_frac(X) / Z, _frac(Y) / Z)

    def zero(self) -> "ECPoint":
        return ECPoint(self, None, None)

    # short model transport: X = 36x + 3b2, Y = 108(2y + a1 x + a3)
    def to_short(self, P: "ECPoint"):
        if P.is_zero:
            return None
        b2 = self.b_invariants[0]
        return 36 * P.x + 3 * b2, 108 * (2 * P.y + self.a1 * P.x + self.a3)

    def from_short(self, X, Y) -> "ECPoint":
        b2 = self.b_invariants[0]
        x = (_frac(X) - 3 * b2) / 36
        y = (_frac(Y) / 108 - self.a1 * x - self.a3) / 2
        return self.point(x, y)

    def is_isomorphic_to(self, other: "WeierstrassCurve") -> bool:
        return self.j_invariant == other.j_invariant and _scale_between(self, other) is not None

    def map_point_from(self, P: "ECPoint") -> "ECPoint":
        """Transport a point from an isomorphic curve onto this one."""
        if P.curve == self:
            return P
        if P.is_zero:
            return self.zero()
        u = _scale_between(P.curve, self)
        if u is None:
            raise CurveMismatchError("curves are not isomorphic over Q")
        X, Y = P.curve.to_short(P)
        return self.from_short(X / (u * u), Y / (u ** 3))

    def minimal_model(self) -> "WeierstrassCurve":
        return minimal_model(self)

    def __repr__(self):
        return "WeierstrassCurve([" + ", ".join(str(a) for a in self.ainvs) + "])"


def _scale_between(E1: WeierstrassCurve, E2: WeierstrassCurve) -> Optional[Fraction]:
    """u in Q with c4(E2) = c4(E1)/u^4, c6(E2) = c6(E1)/u^6, or None."""
    c41, c61 = E1.c_invariants
    c42, c62 = E2.c_invariants
    if c41 == 0 and c42 == 0:
        r = c61 / c62
        u = _rational_root(r, 6)
    elif c61 == 0 and c62 == 0:
        u = _rational_root(c41 / c42, 4)
    else:
        if c41 == 0 or c42 == 0 or c61 == 0 or c62 == 0:
            return None
        # u^2 = (c6_1/c6_2)/(c4_1/c4_2)
        u2 = (c61 / c62) / (c41 / c42)
        u = _rational_root(u2, 2)
    if u is None:
        return None
    for cand in (u, -u):
        if c41 == c42 * cand ** 4 and c61 == c62 * cand ** 6:
            return cand
    return None


def _rational_root(r: Fraction, k: int) -> Optional[Fraction]:
    if r <= 0:
        return None
    a, b = r.numerator, r.denominator
    ra, rb = _iroot(a, k), _iroot(b, k)
    if ra is None or rb is None:
        return None
    return Fraction(ra, rb)


def _iroot(n: int, k: int) -> Optional[int]:
    if n < 0:
        return None
    lo, hi = 0, 1
    while hi ** k <= n:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** k == n else None


class ECPoint:
    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: WeierstrassCurve, x, y):
        self.curve = curve
        self.x = x
        self.y = y

    @property
    def is_zero(self) -> bool:
        return self.x is None

    def projective(self):
        """Coprime integer (X : Y : Z) with the point at infinity as (0 : 1 : 0)."""
        if self.is_zero:
            return (0, 1, 0)
        d = self.x.denominator  # = e^2 for x = a/e^2
        e = math.isqrt(d)
        Z = e ** 3 if e * e == d else self.x.denominator * self.y.denominator
        return (int(self.x * Z), int(self.y * Z), Z)

    def _check(self, other):
        if self.curve != other.curve:
            raise CurveMismatchError("points on different curves")

    def __eq__(self, other):
        if not isinstance(other, ECPoint):
            return NotImplemented
        return self.curve == other.curve and self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __neg__(self):
        if self.is_zero:
            return self
        E = self.curve
        return ECPoint(E, self.x, -self.y - E.a1 * self.x - E.a3)

    def __add__(self, other: "ECPoint") -> "ECPoint":
        self._check(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        E = self.curve
        a1, a2, a3, a4, a6 = E.ainvs
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        if x1 == x2:
            if y1 + y2 + a1 * x2 + a3 == 0:
                return E.zero()
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
            nu = (-x1 ** 3 + a4 * x1 + 2 * a6 - a3 * y1) / (2 * y1 + a1 * x1 + a3)
        else:
            lam = (y2 - y1) / (x2 - x1)
            nu = (y1 * x2 - y2 * x1) / (x2 - x1)
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return ECPoint(E, x3, y3)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n: int) -> "ECPoint":
        if n < 0:
            return (-self) * (-n)
        result = self.curve.zero()
        base = self
        while n:
            if n & 1:
                result = result + base
            n >>= 1
            if n:
                base = base + base
        return result

    __rmul__ = __mul__

    def __repr__(self):
        if self.is_zero:
            return "O"
        return f"({self.x}, {self.y})"


# ---------------------------------------------------------------------------
# minimal models

def _kraus_ok_at_2(c4: int, c6: int) -> bool:
    if c6 % 4 == 3:
        return True
    return c4 % 16 == 0 and c6 % 32 in (0, 8)


def _kraus_ok_at_3(c6: int) -> bool:
    return _vp(c6, 3) != 2


def curve_from_c4c6(c4: int, c6: int) -> WeierstrassCurve:
    """An integral model with the given standard invariants (Kraus conditions assumed)."""
    b2 = (-c6) % 12
    if b2 > 6:
        b2 -= 12
    b4 = (b2 * b2 - c4) // 24
    b6 = (-b2 ** 3 + 36 * b2 * b4 - c6) // 216
    a1 = b2 % 2
    a3 = b6 % 2
    a2 = (b2 - a1) // 4
    a4 = (b4 - a1 * a3) // 2
    a6 = (b6 - a3) // 4
    E = WeierstrassCurve(a1, a2, a3, a4, a6)
    if E.c_invariants != (c4, c6):
        raise ValueError("invariants do not satisfy the Kraus conditions")
    return E


def _integral_scale(E: WeierstrassCurve) -> Fraction:
    """Smallest positive integer k such that scaling by u = 1/k makes E integral."""
    k = 1
    weights = (1, 2, 3, 4, 6)
    for a, w in zip(E.ainvs, weights):
        d = a.denominator
        # need k^w * a integral
        for p, e in _small_factor(d).items():
            need = -(-e // w)
            while _vp(k, p) < need:
                k *= p
    return Fraction(k)


def _small_factor(n: int):
    from sympy import factorint

    return {int(p): int(e) for p, e in factorint(abs(n)).items()} if abs(n) > 1 else {}


def minimal_model(E: WeierstrassCurve) -> WeierstrassCurve:
    """A global minimal model of E (Laska-Kraus-Connell)."""
    c4, c6 = E.c_invariants
    k = _integral_scale(E)
    c4, c6 = c4 * k ** 4, c6 * k ** 6
    c4, c6 = int(c4), int(c6)
    disc = (c4 ** 3 - c6 ** 2) // 1728
    g = math.gcd(c4, c6)
    primes = set(_small_factor(g)) if g else set()
    if c4 == 0 or c6 == 0:
        primes |= set(_small_factor(math.gcd(g, disc)))
    u = 1
    for p in sorted(primes):
        d = min(_vp(c4, p) // 4 if c4 else 10 ** 9, _vp(c6, p) // 6 if c6 else 10 ** 9,
                _vp(disc, p) // 12)
        if p == 3 and d > 0 and not _kraus_ok_at_3(c6 // 3 ** (6 * d)):
            d -= 1
        if p == 2:
            while d > 0 and not _kraus_ok_at_2(c4 // 2 ** (4 * d), c6 // 2 ** (6 * d)):
                d -= 1
        u *= p ** d
    return curve_from_c4c6(c4 // u ** 4, c6 // u ** 6)


# ---------------------------------------------------------------------------
# heights

def naive_height(P: ECPoint) -> float:
    if P.is_zero:
        return 0.0
    x = P.x
    return math.log(max(abs(x.numerator), abs(x.denominator)))


def _lambda_infinity(E: WeierstrassCurve, x: Fraction, prec_bits: int) -> mpmath.mpf:
    """Archimedean local height by Tate's series as modified by Silverman."""
    with mpmath.workprec(prec_bits):
        b2, b4, b6, b8 = (mpmath.mpf(b.numerator) / b.denominator for b in E.b_invariants)
        xr = mpmath.mpf(x.numerator) / x.denominator
        H = max(mpmath.mpf(4), abs(b2), 2 * abs(b4), 2 * abs(b6), abs(b8))
        # iterations for 4^-N * (log terms) to fall below 2^-prec
        N = int(prec_bits / 2 + math.log2(float(H)) + 10)
        b2p, b4p = b2 - 12, b4 - b2 + 6
        b6p = b6 - 2 * b4 + b2 - 4
        b8p = b8 - 3 * b6 + 3 * b4 - b2 + 3
        if abs(xr) < mpmath.mpf(1) / 2:
            t = 1 / (xr + 1)
            beta = 0
        else:
            t = 1 / xr
            beta = 1
        lam = -mpmath.log(abs(t))
        mu = mpmath.mpf(0)
        four = mpmath.mpf(1)
        for _ in range(N):
            if beta == 1:
                w = b6 * t ** 4 + 2 * b4 * t ** 3 + b2 * t * t + 4 * t
                z = 1 - b4 * t * t - 2 * b6 * t ** 3 - b8 * t ** 4
                zw = z + w
            else:
                w = b6p * t ** 4 + 2 * b4p * t ** 3 + b2p * t * t + 4 * t
                z = 1 - b4p * t * t - 2 * b6p * t ** 3 - b8p * t ** 4
                zw = z - w
            if abs(w) <= 2 * abs(z):
                mu += four * mpmath.log(abs(z))
                t = w / z
            else:
                mu += four * mpmath.log(abs(zw))
                t = w / zw
                beta = 1 - beta
            four /= 4
        return (lam + mu / 4) / 2


def _lambda_finite(E: WeierstrassCurve, P: ECPoint, prec_bits: int) -> mpmath.mpf:
    """Sum of the non-archimedean local heights on a minimal model."""
    a1, a2, a3, a4, a6 = E.ainvs
    b2, b4, b6, b8 = E.b_invariants
    x, y = P.x, P.y
    disc = E.discriminant
    c4, _ = E.c_invariants
    total = mpmath.mpf(0)
    with mpmath.workprec(prec_bits):
        # denominator part: x = a/d^2
        d2 = x.denominator
        d = math.isqrt(d2)
        if d > 1:
            total += mpmath.log(d)
        psi2 = 2 * y + a1 * x + a3
        tangent = 3 * x * x + 2 * a2 * x + a4 - a1 * y
        # only primes where P reduces to the singular point contribute
        g = math.gcd(int(disc.numerator), psi2.numerator, tangent.numerator)
        for p in sorted(_small_factor(g)):
            N = _vp(disc, p)
            if _vp(x, p) < 0:
                continue
            if not (_vp(tangent, p) > 0 and _vp(psi2, p) > 0):
                continue
            if _vp(c4, p) == 0:
                n = min(_vp(psi2, p), Fraction(N, 2))
                w = Fraction(n * (N - n), 2 * N)
                total -= mpmath.mpf(w.numerator) / w.denominator * mpmath.log(p)
            else:
                psi3 = 3 * x ** 4 + b2 * x ** 3 + 3 * b4 * x * x + 3 * b6 * x + b8
                v2, v3 = _vp(psi2, p), _vp(psi3, p)
                if v3 >= 3 * v2:
                    total -= mpmath.mpf(v2) / 3 * mpmath.log(p)
                else:
                    total -= mpmath.mpf(v3) / 8 * mpmath.log(p)
    return total


def canonical_height(P: ECPoint, prec_bits: int = 200) -> float:
    """Canonical height, lim h(x(2^n P)) / 4^n with h(a/b) = log max(|a|, |b|).

    The local heights above are normalised to half of that, hence the factor 2.
    """
    if P.is_zero:
        return 0.0
    E = minimal_model(P.curve)
    Q = E.map_point_from(P)
    if Q.is_zero:
        return 0.0
    val = _lambda_infinity(E, Q.x, prec_bits) + _lambda_finite(E, Q, prec_bits)
    return float(2 * val)


def height_pairing(P: ECPoint, Q: ECPoint) -> float:
    return (canonical_height(P + Q) - canonical_height(P) - canonical_height(Q)) / 2


def regulator(points: Sequence[ECPoint]) -> float:
    """Determinant of the height-pairing matrix."""
    n = len(points)
    if n == 0:
        return 1.0
    with mpmath.workprec(200):
        h = [canonical_height(P) for P in points]
        M = mpmath.matrix(n, n)
        for i in range(n):
            M[i, i] = h[i]
            for j in range(i + 1, n):
                v = (canonical_height(points[i] + points[j]) - h[i] - h[j]) / 2
                M[i, j] = M[j, i] = v
        return float(mpmath.det(M))


def is_torsion(P: ECPoint, bound: int = 12) -> bool:
    """Small-multiple torsion test (Mazur: orders up to 12 over Q)."""
    Q = P
    for _ in range(bound):
        if Q.is_zero:
            return True
        Q = Q + P
    return Q.is_zero
