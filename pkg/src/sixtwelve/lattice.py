"""Integer lattices: saturation with index, exact LLL, short-vector enumeration."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List

DELTA = Fraction(99, 100)


class DependentRowsError(ValueError):
    pass


@dataclass
class FactoredIndex:
    """A positive integer that factors itself on demand."""

    value: int
    _factors: Dict[int, int] | None = field(default=None, repr=False)

    def ord(self, p: int) -> int:
        n, k = self.value, 0
        while n % p == 0:
            n //= p
            k += 1
        return k

    def factors(self) -> Dict[int, int]:
        if self._factors is None:
            from sympy import factorint

            self._factors = {int(p): int(e) for p, e in factorint(self.value).items()}
        return self._factors

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, FactoredIndex):
            return self.value == other.value
        return self.value == other


def _xgcd(a: int, b: int):
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def _as_int_rows(gens):
    rows = []
    for r in gens:
        row = []
        for x in r:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError("integer matrix expected")
            row.append(int(x))
        rows.append(row)
    return rows


def row_hnf(rows: List[List[int]]) -> List[List[int]]:
    """Row Hermite normal form (nonzero rows only)."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return []
    n = len(m[0])
    out = []
    col = 0
    while m and col < n:
        nz = [r for r in m if r[col] != 0]
        if not nz:
            col += 1
            continue
        rest = [r for r in m if r[col] == 0]
        piv = nz[0]
        others = []
        for r in nz[1:]:
            g, s, t = _xgcd(piv[col], r[col])
            a, b = piv[col] // g, r[col] // g
            newp = [s * x + t * y for x, y in zip(piv, r)]
            newr = [a * y - b * x for x, y in zip(piv, r)]
            piv = newp
            if any(newr):
                others.append(newr)
        if piv[col] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        m = rest + others
        col += 1
    # reduce entries above pivots
    for i in range(len(out)):
        pc = next(j for j, x in enumerate(out[i]) if x)
        for k in range(i):
            q = out[k][pc] // out[i][pc]
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], out[i])]
    return out


def _echelon_mod(rows, ncols, D):
    """Row echelon over Z of ``rows`` plus D*Z^ncols, entries kept in [0, D).

    Returns the echelon rows (one per pivot) in column order.
    """
    work = [[x % D for x in r] for r in rows]
    work = [r for r in work if any(r)]
    out = []
    for col in range(ncols):
        piv = [0] * ncols
        piv[col] = D
        rest = []
        for r in work:
            if r[col] == 0:
                rest.append(r)
                continue
            g, s, t = _xgcd(piv[col], r[col])
            a, b = piv[col] // g, r[col] // g
            newp = [(s * x + t * y) % D for x, y in zip(piv, r)]
            newp[col] = g
            newr = [(a * y - b * x) % D for x, y in zip(piv, r)]
            piv = newp
            if any(newr):
                rest.append(newr)
        out.append(piv)
        work = rest
    return out


def _kernel_mod(B, D):
    """Basis (HNF, r x r) of {w in Z^r : w B = 0 mod D}."""
    r, n = len(B), len(B[0])
    rows = [[x % D for x in B[i]] + [1 if k == i else 0 for k in range(r)] for i in range(r)]
    # eliminate the left block; D*e_j rows are implicit in the modulus
    work = [row for row in rows]
    for col in range(n):
        piv = None
        rest = []
        for row in work:
            if row[col] % D == 0:
                row[col] = 0
                rest.append(row)
                continue
            if piv is None:
                piv = row
                continue
            g, s, t = _xgcd(piv[col], row[col])
            a, b = piv[col] // g, row[col] // g
            newp = [s * x + t * y for x, y in zip(piv, row)]
            newr = [a * y - b * x for x, y in zip(piv, row)]
            piv = [v % D for v in newp]
            newr = [v % D for v in newr]
            if any(newr):
                rest.append(newr)
        if piv is not None:
            # piv combined with D*e_col: the multiple (D/g)*piv has zero at col
            g = _xgcd(piv[col], D)[0]
            m = D // g
            if m != D:
                killed = [(m * v) % D for v in piv]
                if any(killed):
                    rest.append(killed)
        work = rest
    right = [row[n:] for row in work]
    return _echelon_mod(right, r, D)


def hnf_saturate(gens):
    """Saturate the row lattice of ``gens``.

    Returns (basis, index) where basis rows span span_Q(gens) meet Z^n and
    index is [saturation : lattice] as a FactoredIndex.
    """
    from .exact.matrix import Matrix, _bareiss_det

    M = _as_int_rows(gens)
    if not M or not any(any(r) for r in M):
        raise ValueError("zero matrix")
    _, piv_cols = Matrix(M).transpose().rref()
    if len(piv_cols) < len(M):
        # dependent generators: pass to an honest basis of the same lattice
        M = row_hnf(M)
    B = M
    r = len(B)
    _, cols = Matrix(B).rref()
    D = abs(_bareiss_det([[row[c] for c in cols] for row in B]))
    if D == 1:
        return [list(row) for row in B], FactoredIndex(1)
    lam = _kernel_mod(B, D)
    det_lam = 1
    for i in range(r):
        det_lam *= lam[i][i]
    basis = []
    for w in lam:
        v = [sum(w[i] * B[i][j] for i in range(r) if w[i]) for j in range(len(B[0]))]
        basis.append([x // D for x in v])
    return basis, FactoredIndex(D ** r // det_lam)


def saturate(gens):
    return hnf_saturate(gens)[0]


# ---------------------------------------------------------------------------
# LLL

def lll_reduce(basis, delta: Fraction = DELTA):
    """Exact integral LLL on the rows (Cohen, Alg. 2.6.7)."""
    rows = [[Fraction(x) for x in r] for r in basis]
    if not rows:
        return []
    den = 1
    for r in rows:
        for x in r:
            den = den * x.denominator // math.gcd(den, x.denominator)
    b = [[int(x * den) for x in r] for r in rows]
    red = _lll_int(b, delta)
    if den == 1:
        return red
    return [[Fraction(x, den) for x in r] for r in red]


def _dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def _lll_int(b, delta, transform=False):
    n = len(b)
    b = [list(r) for r in b]
    H = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if transform else None
    num, den_ = delta.numerator, delta.denominator
    d = [0] * (n + 1)
    lam = [[0] * n for _ in range(n)]
    d[0] = 1
    d[1] = _dot(b[0], b[0])
    if d[1] == 0:
        raise DependentRowsError("zero row")
    kmax = 0
    k = 1

    def red(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            if H is not None:
                H[k] = [x - q * y for x, y in zip(H[k], H[l])]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swap(k):
        b[k], b[k - 1] = b[k - 1], b[k]
        if H is not None:
            H[k], H[k - 1] = H[k - 1], H[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lmb = lam[k][k - 1]
        B = (d[k - 1] * d[k + 1] + lmb * lmb) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lmb * t) // d[k]
            lam[i][k - 1] = (B * t + lmb * lam[i][k]) // d[k + 1]
        d[k] = B

    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = _dot(b[k], b[j])
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    d[k + 1] = u
            if d[k + 1] == 0:
                raise DependentRowsError("rows are linearly dependent")
        red(k, k - 1)
        # Lovasz: d_{k+1} d_{k-1} >= (delta d_k^2 - lam^2)
        if den_ * d[k + 1] * d[k - 1] < num * d[k] * d[k] - den_ * lam[k][k - 1] ** 2:
            swap(k)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    if transform:
        return b, H
    return b


def lll_with_transform(basis, delta: Fraction = DELTA):
    """Integral LLL returning (reduced rows, unimodular T with reduced = T * basis)."""
    return _lll_int(_as_int_rows(basis), delta, transform=True)


def is_lll_reduced(rows, delta: Fraction = DELTA) -> bool:
    """Check size reduction and the Lovasz condition exactly."""
    bs = []
    mu = {}
    norms = []
    for i, r in enumerate(rows):
        v = [Fraction(x) for x in r]
        for j in range(i):
            m = _dot(r, bs[j]) / norms[j]
            mu[i, j] = m
            v = [a - m * c for a, c in zip(v, bs[j])]
        bs.append(v)
        norms.append(_dot(v, v))
    for i in range(len(rows)):
        for j in range(i):
            if abs(mu[i, j]) > Fraction(1, 2):
                return False
    for k in range(1, len(rows)):
        if norms[k] < (delta - mu[k, k - 1] ** 2) * norms[k - 1]:
            return False
    return True


# ---------------------------------------------------------------------------
# short vectors

def gram_schmidt(rows):
    """Exact Gram-Schmidt: (squared norms, mu) as Fractions."""
    bs, norms = [], []
    mu = [[Fraction(0)] * len(rows) for _ in rows]
    for i, r in enumerate(rows):
        v = [Fraction(x) for x in r]
        for j in range(i):
            m = _dot(r, bs[j]) / norms[j]
            mu[i][j] = m
            v = [a - m * c for a, c in zip(v, bs[j])]
        bs.append(v)
        norms.append(_dot(v, v))
    return norms, mu


def short_vectors(rows, bound_sq, solve_last=None):
    """All nonzero lattice vectors v (up to sign) with |v|^2 <= bound_sq.

    Fincke-Pohst enumeration over an (ideally LLL-reduced) basis; the
    interval arithmetic uses floats only to bound loops, each candidate's
    norm is checked exactly.

    solve_last(lo, hi, y) may replace the loop over the coefficient of
    rows[0]: y is the vector built from the other coefficients and the
    callback returns the values in [lo, hi] worth trying.  Callers that only
    want vectors on some variety use it to skip long runs of multiples of a
    very short first vector.
    """
    n = len(rows)
    norms_q, mu_q = gram_schmidt(rows)
    Bn = [float(x) for x in norms_q]
    mu = [[float(x) for x in r] for r in mu_q]
    out = []
    coeffs = [0] * n
    bound = float(bound_sq) * (1 + 1e-9) + 1e-9

    def rec(i, partial):
        # partial = sum over j > i of B_j (x_j + c_j)^2
        c = -sum(mu[j][i] * coeffs[j] for j in range(i + 1, n))
        rem = bound - partial
        if rem < 0:
            return
        r = math.sqrt(rem / Bn[i]) if Bn[i] > 0 else 0
        lo, hi = math.ceil(c - r), math.floor(c + r)
        xs = range(lo, hi + 1)
        if i == 0 and solve_last is not None:
            y = [sum(coeffs[k] * rows[k][j] for k in range(1, n)) for j in range(len(rows[0]))]
            xs = [x for x in solve_last(lo, hi, y) if lo <= x <= hi]
        for x in xs:
            coeffs[i] = x
            val = partial + Bn[i] * (x - c) ** 2
            if val > bound:
                continue
            if i == 0:
                if any(coeffs):
                    # skip sign duplicates: first nonzero coefficient positive
                    first = next(v for v in reversed(coeffs) if v)
                    if first > 0:
                        vec = [sum(coeffs[k] * rows[k][j] for k in range(n)) for j in range(len(rows[0]))]
                        if _dot(vec, vec) <= bound_sq:
                            out.append(vec)
            else:
                rec(i - 1, val)
        coeffs[i] = 0

    rec(n - 1, 0.0)
    return out
