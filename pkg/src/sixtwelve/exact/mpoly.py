"""Sparse multivariate polynomials: a map from exponent tuples to coefficients."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Dict, Tuple

Exp = Tuple[int, ...]


def grevlex_key(e: Exp):
    return (sum(e), tuple(-x for x in reversed(e)))


def lex_key(e: Exp):
    return e


def grlex_key(e: Exp):
    return (sum(e), e)


ORDERS: Dict[str, Callable] = {"grevlex": grevlex_key, "lex": lex_key, "grlex": grlex_key}


def _add_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


class MultiPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        t = {}
        if terms:
            for e, c in terms.items():
                if c != 0:
                    if len(e) != nvars:
                        raise ValueError("exponent length does not match nvars")
                    t[tuple(e)] = c
        self.terms = t

    # constructors -------------------------------------------------------
    @classmethod
    def var(cls, i: int, nvars: int, coeff=1):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): coeff})

    @classmethod
    def const(cls, c, nvars: int):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def gens(cls, nvars: int):
        return [cls.var(i, nvars) for i in range(nvars)]

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    # basic protocol -----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            if set(self.terms) != set(other.terms):
                return False
            return all(self.terms[e] == other.terms[e] for e in self.terms)
        if other == 0:
            return not self.terms
        return self == MultiPoly.const(other, self.nvars)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def copy(self):
        return MultiPoly._raw(self.nvars, dict(self.terms))

    def coeff(self, e):
        return self.terms.get(tuple(e), 0)

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different numbers of variables")
            return other
        return MultiPoly.const(other, self.nvars)

    def __add__(self, other):
        o = self._coerce(other)
        t = dict(self.terms)
        for e, c in o.terms.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = v + c
                if v == 0:
                    del t[e]
                else:
                    t[e] = v
        return MultiPoly._raw(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if other == 0:
                return MultiPoly(self.nvars)
            return MultiPoly._raw(self.nvars, {e: c * other for e, c in self.terms.items()})
        if other.nvars != self.nvars:
            raise ValueError("polynomials in different numbers of variables")
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                v = t.get(e)
                t[e] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly._raw(self.nvars, {e: c for e, c in t.items() if c != 0})

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, scalar):
        if isinstance(scalar, MultiPoly):
            raise TypeError("use exact_div for polynomial division")
        if isinstance(scalar, int):
            scalar = Fraction(scalar)
        return MultiPoly._raw(self.nvars, {e: (Fraction(c) if isinstance(c, int) else c) / scalar
                                           for e, c in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # structure ----------------------------------------------------------
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, d=None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (d is None or degs == {d})

    def monomials(self, order="grevlex"):
        return sorted(self.terms, key=ORDERS[order], reverse=True)

    def leading_monomial(self, order="grevlex"):
        return max(self.terms, key=ORDERS[order])

    def map_coeffs(self, f):
        return MultiPoly(self.nvars, {e: f(c) for e, c in self.terms.items()})

    def diff(self, i: int):
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                t[tuple(ne)] = c * e[i]
        return MultiPoly._raw(self.nvars, t)

    def gradient(self):
        return [self.diff(i) for i in range(self.nvars)]

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return evaluate(self, point)

    def subs(self, images):
        """Compose: substitute variable i by images[i] (MultiPoly or scalar)."""
        target = next((g.nvars for g in images if isinstance(g, MultiPoly)), None)
        if target is None:
            return evaluate(self, images)
        imgs = [g if isinstance(g, MultiPoly) else MultiPoly.const(g, target) for g in images]
        cache = [dict() for _ in imgs]

        def power(i, k):
            c = cache[i]
            if k not in c:
                c[k] = imgs[i] ** k if k < 2 or (k - 1) not in c else c[k - 1] * imgs[i]
            return c[k]

        result = MultiPoly(target)
        for e, c in self.terms.items():
            term = MultiPoly.const(c, target)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def linear_change(self, g):
        """U o g: substitute x_i -> sum_j g[i][j] x_j."""
        rows = g.rows if hasattr(g, "rows") else g
        n = len(rows[0])
        imgs = [MultiPoly(n, {tuple(1 if k == j else 0 for k in range(n)): rows[i][j]
                              for j in range(n) if rows[i][j] != 0}) for i in range(len(rows))]
        return self.subs(imgs)

    def homogenize_embed(self, nvars: int, positions):
        """Rename variables into a larger ring: variable i -> positions[i]."""
        t = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            for i, k in enumerate(e):
                ne[positions[i]] += k
            t[tuple(ne)] = c
        return MultiPoly(nvars, t)

    def content_scale(self):
        """Scale rational coefficients to coprime integers with positive leading term."""
        from math import gcd, lcm

        if not self.terms:
            return self
        cs = [Fraction(c) for c in self.terms.values()]
        den = lcm(*[c.denominator for c in cs])
        nums = [int(c * den) for c in cs]
        g = 0
        for v in nums:
            g = gcd(g, v)
        lead = Fraction(self.terms[self.leading_monomial()])
        s = Fraction(den, g) * (1 if lead > 0 else -1)
        return self.map_coeffs(lambda c: int(Fraction(c) * s))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in self.monomials():
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"({self.terms[e]})" + ("*" + mono if mono else ""))
        return " + ".join(parts)


def evaluate(p: MultiPoly, point):
    cache = [dict() for _ in point]

    def power(i, k):
        c = cache[i]
        if k not in c:
            c[k] = point[i] ** k
        return c[k]

    acc = 0
    for e, c in p.terms.items():
        term = c
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        acc = acc + term
    return acc


def normal_form(p: MultiPoly, u: MultiPoly, order: str = "grevlex") -> MultiPoly:
    """Remainder of p on division by the single polynomial u."""
    if not u:
        raise ValueError("division by the zero polynomial")
    key = ORDERS[order]
    lm = u.leading_monomial(order)
    lc = u.terms[lm]
    rest = [(e, c) for e, c in u.terms.items() if e != lm]
    inv = Fraction(1, lc) if isinstance(lc, int) else 1 / lc
    t = dict(p.terms)

    def divisible(e):
        return all(a >= b for a, b in zip(e, lm))

    while True:
        cands = [e for e in t if divisible(e)]
        if not cands:
            break
        e = max(cands, key=key)
        c = t.pop(e) * inv
        shift = tuple(a - b for a, b in zip(e, lm))
        for ue, uc in rest:
            ne = _add_exp(ue, shift)
            v = t.get(ne, 0) - c * uc
            if v == 0:
                t.pop(ne, None)
            else:
                t[ne] = v
    return MultiPoly(p.nvars, t)


def monomials_of_degree(nvars: int, d: int, order: str = "grlex"):
    """All exponent vectors of total degree d, largest first in the given order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, key=ORDERS[order], reverse=True)


def det_poly(rows):
    """Determinant of a small square matrix of polynomials by cofactor expansion."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j in range(n):
        if isinstance(rows[0][j], MultiPoly) and not rows[0][j]:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * det_poly(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0] * 0
    return total
