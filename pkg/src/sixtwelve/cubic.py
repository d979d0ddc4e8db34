"""Ternary cubics: Hessian, Theta, J, the quadric matrix M and the covariant columns."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .exact import Matrix, MultiPoly, det_poly, div, monomials_of_degree, normal_form
from .quartic import DegenerateModelError

CUBIC_MONOMIALS = monomials_of_degree(3, 3, "grlex")
X = MultiPoly.gens(3)


@dataclass(frozen=True)
class TernaryCubic:
    """Coefficients of x1^3, x1^2x2, x1^2x3, x1x2^2, x1x2x3, x1x3^2, x2^3, x2^2x3, x2x3^2, x3^3."""

    coeffs: Tuple

    def __post_init__(self):
        if len(self.coeffs) != 10:
            raise ValueError("a ternary cubic has 10 coefficients")

    @classmethod
    def from_coeffs(cls, coeffs):
        return cls(tuple(Fraction(x) if isinstance(x, (int, str)) else x for x in coeffs))

    @classmethod
    def from_poly(cls, p: MultiPoly):
        if p.nvars != 3 or (p and not p.is_homogeneous(3)):
            raise ValueError("not a ternary cubic")
        return cls(tuple(p.coeff(m) for m in CUBIC_MONOMIALS))

    @property
    def poly(self) -> MultiPoly:
        return MultiPoly(3, dict(zip(CUBIC_MONOMIALS, self.coeffs)))

    def __call__(self, *pt):
        return self.poly(*pt)

    def transform(self, g) -> "TernaryCubic":
        return TernaryCubic.from_poly(self.poly.linear_change(g))


def hessian_matrix(F: MultiPoly):
    n = F.nvars
    return [[F.diff(i).diff(j) for j in range(n)] for i in range(n)]


def hessian_covariant(F: MultiPoly) -> MultiPoly:
    """-1/2 det of the Hessian matrix in the first three variables."""
    rows = [[F.diff(i).diff(j) for j in range(3)] for i in range(3)]
    return det_poly(rows) * Fraction(-1, 2)


def quadric_matrix(Q: MultiPoly):
    """Symmetric A with Q = 1/2 x^T A x (the Hessian of Q)."""
    n = Q.nvars
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            e = [0] * n
            e[i] += 1
            e[j] += 1
            c = Q.coeff(tuple(e))
            A[i][j] = 2 * c if i == j else c
    return A


def _mixed_det2(a, b):
    """Coefficient of t in det(a + t b) for 2x2 matrices."""
    return a[0][0] * b[1][1] + b[0][0] * a[1][1] - a[0][1] * b[1][0] - b[0][1] * a[1][0]


def _minor(A, i, j):
    return [[A[r][c] for c in range(3) if c != j] for r in range(3) if r != i]


def bracket_quadrics(Q1: MultiPoly, Q2: MultiPoly):
    """Middle coefficient of adj(A1 + t A2), where Qi = 1/2 x^T Ai x."""
    A1, A2 = quadric_matrix(Q1), quadric_matrix(Q2)
    out = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            # adj[i][j] = (-1)^(i+j) det(minor(j, i))
            v = _mixed_det2(_minor(A1, j, i), _minor(A2, j, i))
            out[i][j] = v if (i + j) % 2 == 0 else -v
    return out


def _extract_invariants(U: MultiPoly, H: MultiPoly):
    """c4, c6 from H(lU + mH) = 3(c4 l^2 m + 2c6 l m^2 + c4^2 m^3)U + (l^3 - 3c4 l m^2 - 2c6 m^3)H."""
    big = U.homogenize_embed(5, [0, 1, 2]) * MultiPoly.var(3, 5) + \
        H.homogenize_embed(5, [0, 1, 2]) * MultiPoly.var(4, 5)
    HH = hessian_covariant(big)
    K = {}
    for e, c in HH.terms.items():
        key = (e[3], e[4])
        K.setdefault(key, {})[e[:3]] = c
    K = {k: MultiPoly(3, v) for k, v in K.items()}
    zero = MultiPoly(3)
    K30, K21, K12, K03 = (K.get(k, zero) for k in [(3, 0), (2, 1), (1, 2), (0, 3)])
    if not U:
        raise DegenerateModelError("zero cubic")
    slot = U.leading_monomial()
    c4 = div(K21.coeff(slot), 3 * U.terms[slot])
    # c6 from the lambda mu^2 slot: 6 c6 U - 3 c4 H
    c6 = div(K12.coeff(slot) + 3 * c4 * H.coeff(slot), 6 * U.terms[slot])
    checks = [K30 - H, K21 - 3 * c4 * U, K12 - (6 * c6 * U - 3 * c4 * H),
              K03 - (3 * c4 * c4 * U - 2 * c6 * H)]
    if any(not p.is_zero() for p in checks):
        raise DegenerateModelError("invariant matching system is inconsistent")
    return c4, c6


@dataclass
class CubicCovariants:
    U: MultiPoly
    c4: object
    c6: object
    disc: object
    H: MultiPoly
    Theta: MultiPoly
    J: MultiPoly
    M: List[List[MultiPoly]]
    u: list
    h: list
    t: list
    e: list
    f: list

    @property
    def degenerate(self) -> bool:
        return self.disc == 0


def cubic_data(U: TernaryCubic, need_J: bool = True) -> CubicCovariants:
    F = U.poly
    H = hessian_covariant(F)
    if H.is_zero():
        raise DegenerateModelError("Hessian vanishes identically")
    c4, c6 = _extract_invariants(F, H)
    u = F.gradient()
    h = H.gradient()
    B = [[bracket_quadrics(u[i], h[j]) for j in range(3)] for i in range(3)]
    quads = [[X[i] * X[j] for j in range(3)] for i in range(3)]
    M = [[sum((quads[i][j] * B[i][j][r][s] for i in range(3) for j in range(3)
               if B[i][j][r][s] != 0), MultiPoly(3)) for s in range(3)] for r in range(3)]
    e = [sum((M[r][s] * u[s] for s in range(3)), MultiPoly(3)) for r in range(3)]
    f = [sum((M[r][s] * h[s] for s in range(3)), MultiPoly(3)) for r in range(3)]
    Theta = sum((e[r] * h[r] for r in range(3)), MultiPoly(3))
    t = Theta.gradient()
    J = det_poly([u, h, t]) * Fraction(1, 3) if need_J else None
    disc = div(c4 ** 3 - c6 ** 2, 1728)
    return CubicCovariants(F, c4, c6, disc, H, Theta, J, M, u, h, t, e, f)


def dot(a, b):
    return sum((x * y for x, y in zip(a, b)), MultiPoly(3))


def cross(a, b):
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def cubic_identity_suite(data: CubicCovariants):
    """Residual polynomial of every printed identity (all zero for a valid cubic)."""
    U, H, Th, J = data.U, data.H, data.Theta, data.J
    c4, c6 = data.c4, data.c6
    u, h, t, e, f = data.u, data.h, data.t, data.e, data.f
    x = X
    r = {}
    r["x.u"] = dot(x, u) - 3 * U
    r["x.h"] = dot(x, h) - 3 * H
    r["x.t"] = dot(x, t) - 6 * Th
    r["e.h"] = dot(e, h) - Th
    r["f.u"] = dot(f, u) - Th
    r["e.u"] = dot(e, u) - 3 * (H * H - 3 * c4 * U * U)
    r["f.h"] = dot(f, h) - 3 * (3 * c4 * H * H - 8 * c6 * U * H + 3 * c4 * c4 * U * U)
    r["e.t"] = dot(e, t) - 12 * (3 * c4 * H ** 3 - c4 * U * Th - 12 * c6 * U * H * H
                                 + 9 * c4 * c4 * U * U * H)
    r["f.t"] = dot(f, t) - 12 * (c4 * H * Th - 3 * c6 * H ** 3 - 3 * c6 * U * Th
                                 + 9 * c4 * c4 * U * H * H - 3 * c4 * c6 * U * U * H
                                 - 9 * c4 ** 3 * U ** 3)
    r["[u,h,t]"] = det_poly([u, h, t]) - 3 * J
    r["[x,e,f]"] = det_poly([list(x), e, f]) + 2 * J
    return r


def syzygy_residual(data: CubicCovariants) -> MultiPoly:
    """J^2 - Theta^3 + 27c4 Theta H^4 + 54c6 H^6 reduced modulo U."""
    H2 = data.H * data.H
    H4 = H2 * H2
    expr = (data.J * data.J - data.Theta ** 3 + 27 * data.c4 * data.Theta * H4
            + 54 * data.c6 * H4 * H2)
    return normal_form(expr, data.U)


def order4_matrix(data: CubicCovariants):
    """15x15 coefficient matrix of the entries of U x, H x, e, f, u x h.

    Rows are the entries in that order, columns the quartic monomials in
    ascending graded-lex order; with these orderings the determinant is
    +2^42 3^12 disc^5.
    """
    x = X
    cols = [data.U * xi for xi in x] + [data.H * xi for xi in x] + list(data.e) + list(data.f) \
        + cross(data.u, data.h)
    mons = monomials_of_degree(3, 4, "grlex")[::-1]
    return Matrix([[p.coeff(m) for m in mons] for p in cols])


def basis_determinant_residual(data: CubicCovariants) -> MultiPoly:
    """[u x h, u x t, h x t] - 9 J^2."""
    u, h, t = data.u, data.h, data.t
    return det_poly([cross(u, h), cross(u, t), cross(h, t)]) - 9 * data.J * data.J


def hesse(a, b) -> TernaryCubic:
    p = (X[0] ** 3 + X[1] ** 3 + X[2] ** 3) * a + X[0] * X[1] * X[2] * b
    return TernaryCubic.from_poly(p)
