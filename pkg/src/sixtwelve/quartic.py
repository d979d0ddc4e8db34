"""Binary quartics: invariants c4, c6, the covariants H and J, covariant columns."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .exact import MultiPoly, div

X1, X2 = MultiPoly.gens(2)


class DegenerateModelError(ValueError):
    """The form is too degenerate for the requested construction."""


@dataclass(frozen=True)
class BinaryQuartic:
    """a x1^4 + b x1^3 x2 + c x1^2 x2^2 + d x1 x2^3 + e x2^4."""

    a: object
    b: object
    c: object
    d: object
    e: object

    @classmethod
    def from_coeffs(cls, coeffs):
        cs = [Fraction(x) if isinstance(x, (int, str)) else x for x in coeffs]
        if len(cs) != 5:
            raise ValueError("a binary quartic has 5 coefficients")
        return cls(*cs)

    @classmethod
    def from_poly(cls, p: MultiPoly):
        if p.nvars != 2 or not p.is_homogeneous(4) and p:
            raise ValueError("not a binary quartic")
        return cls(*[p.coeff((4 - i, i)) for i in range(5)])

    @property
    def coeffs(self) -> Tuple:
        return (self.a, self.b, self.c, self.d, self.e)

    @property
    def poly(self) -> MultiPoly:
        return MultiPoly(2, {(4 - i, i): c for i, c in enumerate(self.coeffs)})

    def __call__(self, x1, x2):
        a, b, c, d, e = self.coeffs
        return (((a * x1 + b * x2) * x1 + c * x2 * x2) * x1 + d * x2 ** 3) * x1 + e * x2 ** 4

    def transform(self, g) -> "BinaryQuartic":
        """U o g, i.e. (x1, x2) -> g (x1, x2)^T."""
        return BinaryQuartic.from_poly(self.poly.linear_change(g))

    def invariants(self):
        a, b, c, d, e = self.coeffs
        c4 = 16 * (12 * a * e - 3 * b * d + c * c)
        c6 = 32 * (72 * a * c * e - 27 * a * d * d - 27 * b * b * e + 9 * b * c * d - 2 * c ** 3)
        return c4, c6


def dcol(F: MultiPoly):
    """The column (-dF/dx2, dF/dx1)."""
    return (-F.diff(1), F.diff(0))


def bracket(v1, v2) -> MultiPoly:
    """2x2 determinant [v1, v2]."""
    return v1[0] * v2[1] - v1[1] * v2[0]


@dataclass
class QuarticCovariants:
    U: MultiPoly
    c4: object
    c6: object
    disc: object
    H: MultiPoly
    J: MultiPoly
    dU: tuple
    dH: tuple
    dJ: tuple

    @property
    def degenerate(self) -> bool:
        return self.disc == 0


def quartic_data(U: BinaryQuartic) -> QuarticCovariants:
    F = U.poly
    c4, c6 = U.invariants()
    F1, F2 = F.diff(0), F.diff(1)
    H = (F1.diff(0) * F2.diff(1) - F1.diff(1) * F1.diff(1)) * Fraction(1, 3)
    J = (F1 * H.diff(1) - F2 * H.diff(0)) * Fraction(1, 12)
    disc = div(c4 ** 3 - c6 ** 2, 1728)
    return QuarticCovariants(F, c4, c6, disc, H, J, dcol(F), dcol(H), dcol(J))


def x_column():
    return (X1, X2)


def identity_residuals(data: QuarticCovariants):
    """Differences of the syzygy and the four column relations; all should vanish."""
    U, H, J, c4, c6 = data.U, data.H, data.J, data.c4, data.c6
    dU, dH, dJ = data.dU, data.dH, data.dJ
    x = x_column()
    out = {}
    out["syzygy"] = 27 * J * J + H ** 3 - 3 * c4 * H * U * U + 2 * c6 * U ** 3
    out["3Jx"] = [3 * J * x[i] - (H * dU[i] - U * dH[i]) for i in range(2)]
    out["18JdJ"] = [18 * J * dJ[i] - (2 * (c4 * U * H - c6 * U * U) * dU[i]
                                      + (c4 * U * U - H * H) * dH[i]) for i in range(2)]
    out["9JdU"] = [9 * J * dU[i] - ((c4 * U * U - H * H) * x[i] + 6 * U * dJ[i]) for i in range(2)]
    out["9JdH"] = [9 * J * dH[i] - (2 * (c6 * U * U - c4 * U * H) * x[i] + 6 * H * dJ[i])
                   for i in range(2)]
    return out


def all_zero(residuals) -> bool:
    for v in residuals.values():
        items = v if isinstance(v, list) else [v]
        if any(not p.is_zero() for p in items):
            return False
    return True
