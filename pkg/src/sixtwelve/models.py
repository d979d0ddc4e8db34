"""Genus-one models of degree 2, 3, 4, 6 and 12, covering maps and embedding matrices."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

from .cubic import TernaryCubic, cubic_data, quadric_matrix, cross
from .ellcurve import ECPoint, WeierstrassCurve
from .exact import Matrix, MultiPoly, det_poly, div, kernel_basis
from .quartic import BinaryQuartic, DegenerateModelError, quartic_data

SHAPES = {6: (2, 3), 12: (3, 4)}
QUADRIC_COUNT = {6: 9, 12: 54}


class ModelError(ValueError):
    pass


class PointNotOnModelError(ModelError):
    pass


def quadric_monomials(n: int) -> List[Tuple[int, ...]]:
    """x_i x_j for i <= j in lexicographic order of (i, j)."""
    out = []
    for i in range(n):
        for j in range(i, n):
            e = [0] * n
            e[i] += 1
            e[j] += 1
            out.append(tuple(e))
    return out


def quadric_from_coeffs(coeffs, n: int) -> MultiPoly:
    mons = quadric_monomials(n)
    if len(coeffs) != len(mons):
        raise ValueError(f"a quadric in {n} variables has {len(mons)} coefficients")
    return MultiPoly(n, dict(zip(mons, coeffs)))


def quadric_coeffs(q: MultiPoly) -> list:
    return [q.coeff(m) for m in quadric_monomials(q.nvars)]


@dataclass
class GenusOneModel:
    degree: int
    payload: object
    shape: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        d = self.degree
        if d == 2 and not isinstance(self.payload, BinaryQuartic):
            raise ModelError("degree 2 needs a BinaryQuartic")
        if d == 3 and not isinstance(self.payload, TernaryCubic):
            raise ModelError("degree 3 needs a TernaryCubic")
        if d == 4:
            if len(self.payload) != 2 or any(q.nvars != 4 for q in self.payload):
                raise ModelError("degree 4 needs two quadrics in 4 variables")
            self.payload = tuple(self.payload)
        if d in SHAPES:
            self.shape = SHAPES[d]
            r, c = self.shape
            qs = list(self.payload)
            if len(qs) != QUADRIC_COUNT[d] or any(q.nvars != r * c for q in qs):
                raise ModelError(f"degree {d} needs {QUADRIC_COUNT[d]} quadrics in {r * c} variables")
            self.payload = tuple(qs)
        if d not in (2, 3, 4, 6, 12):
            raise ModelError(f"unsupported degree {d}")

    # ------------------------------------------------------------------
    @property
    def nvars(self) -> int:
        return {2: 2, 3: 3, 4: 4, 6: 6, 12: 12}[self.degree]

    def quadrics(self) -> List[MultiPoly]:
        if self.degree < 4:
            raise ModelError("not a quadric model")
        return list(self.payload)

    def equations(self) -> List[MultiPoly]:
        """Defining polynomials; for degree 2 in (x1, x2, y) as y^2 - U."""
        if self.degree == 2:
            U = self.payload.poly.homogenize_embed(3, [0, 1])
            return [MultiPoly.var(2, 3) ** 2 - U]
        if self.degree == 3:
            return [self.payload.poly]
        return list(self.payload)

    def contains(self, point) -> bool:
        pt = list(point)
        if len(pt) != (3 if self.degree == 2 else self.nvars):
            return False
        if not any(pt[: self.nvars]):
            return False
        return all(eq(pt) == 0 for eq in self.equations())

    def invariants(self):
        if self.degree == 2:
            return self.payload.invariants()
        if self.degree == 3:
            d = cubic_data(self.payload, need_J=False)
            return d.c4, d.c6
        if self.degree == 4:
            return quadric_pair_quartic(*self.payload).invariants()
        raise ModelError("invariants are defined for degrees 2, 3, 4 only")

    def discriminant(self):
        c4, c6 = self.invariants()
        return div(c4 ** 3 - c6 ** 2, 1728)

    def jacobian(self) -> WeierstrassCurve:
        return jacobian_from_invariants(*self.invariants())

    def is_integral(self) -> bool:
        def ok(c):
            return isinstance(c, int) or (isinstance(c, Fraction) and c.denominator == 1)
        if self.degree == 2:
            return all(ok(c) for c in self.payload.coeffs)
        if self.degree == 3:
            return all(ok(c) for c in self.payload.coeffs)
        return all(ok(c) for q in self.payload for c in q.terms.values())

    def max_coefficient(self) -> int:
        if self.degree in (2, 3):
            cs = self.payload.coeffs
        else:
            cs = [c for q in self.payload for c in q.terms.values()]
        return max(abs(c) for c in cs)

    def transform(self, g) -> "GenusOneModel":
        """Substitute x -> g x in every equation."""
        if self.degree == 2:
            return GenusOneModel(2, self.payload.transform(g))
        if self.degree == 3:
            return GenusOneModel(3, self.payload.transform(g))
        return GenusOneModel(self.degree, [q.linear_change(g) for q in self.payload])


def quadric_pair_quartic(Q1: MultiPoly, Q2: MultiPoly) -> BinaryQuartic:
    """G(l, m) = 1/4 det(l A + m B), A and B the Hessian matrices."""
    A, B = quadric_matrix(Q1), quadric_matrix(Q2)
    l, m = MultiPoly.gens(2)
    rows = [[l * A[i][j] + m * B[i][j] for j in range(4)] for i in range(4)]
    return BinaryQuartic.from_poly(det_poly(rows) * Fraction(1, 4))


def jacobian_from_invariants(c4, c6) -> WeierstrassCurve:
    """The curve Y^2 Z = X^3 - 27 c4 X Z^2 - 54 c6 Z^3."""
    if c4 ** 3 == c6 ** 2:
        raise DegenerateModelError("discriminant is zero")
    return WeierstrassCurve.from_invariants(c4, c6)


def _nonsingular(model: GenusOneModel):
    if model.discriminant() == 0:
        raise DegenerateModelError("singular model")


def _ec_point(E: WeierstrassCurve, Z, X, Y) -> ECPoint:
    if Z == 0:
        return E.zero()
    return E.point(div(X, Z), div(Y, Z))


def cover_to_E(model: GenusOneModel, point) -> ECPoint:
    """Image of a point of a 2- or 3-covering on its Jacobian."""
    if model.degree == 2:
        x1, x2, y = point
        if not model.contains(point):
            raise PointNotOnModelError("point is not on the quartic model")
        _nonsingular(model)
        d = quartic_data(model.payload)
        U, H, J = d.U(x1, x2), d.H(x1, x2), d.J(x1, x2)
        E = jacobian_from_invariants(d.c4, d.c6)
        return _ec_point(E, y * U, -3 * y * H, 27 * J)
    if model.degree == 3:
        if not model.contains(point):
            raise PointNotOnModelError("point is not on the cubic model")
        d = cubic_data(model.payload)
        if d.disc == 0:
            raise DegenerateModelError("singular model")
        H, T, J = d.H(point), d.Theta(point), d.J(point)
        E = jacobian_from_invariants(d.c4, d.c6)
        return _ec_point(E, H ** 3, T * H, J)
    raise ModelError("cover_to_E handles degrees 2 and 3; use cover4_to_E for degree 4")


def _det4(cols):
    return Matrix([[c[i] for c in cols] for i in range(4)]).det()


def cover4_to_E(model: GenusOneModel, point) -> ECPoint:
    """Image of a point of a quadric-intersection 4-covering on its Jacobian.

    The tangent line at P spans <P, v>; the quadric of the pencil containing
    it is S = Q2(v) A - Q1(v) B.  Sending P to (Q2(v) : -Q1(v) : y/2), where
    y^2 = det S, lands on the 2-covering y^2 = G(l, m); the 2-covering map
    then finishes the job.
    """
    if model.degree != 4:
        raise ModelError("cover4_to_E needs a quadric pair")
    x = list(point)
    if not model.contains(x):
        raise PointNotOnModelError("point is not on both quadrics")
    Q1, Q2 = model.payload
    A, B = quadric_matrix(Q1), quadric_matrix(Q2)
    G = quadric_pair_quartic(Q1, Q2)
    if div(G.invariants()[0] ** 3 - G.invariants()[1] ** 2, 1728) == 0:
        raise DegenerateModelError("singular model")
    xA = [sum(x[i] * A[i][j] for i in range(4)) for j in range(4)]
    xB = [sum(x[i] * B[i][j] for i in range(4)) for j in range(4)]
    K = kernel_basis(Matrix([xA, xB]))
    v = None
    for k in K:
        if Matrix([x, k]).rank() == 2:
            v = k
            break
    if v is None:
        raise DegenerateModelError("singular point of the model")
    lam, mu = Q2(v), -Q1(v)
    S = [[lam * A[i][j] + mu * B[i][j] for j in range(4)] for i in range(4)]
    Sx = [sum(x[i] * S[i][j] for i in range(4)) for j in range(4)]
    Sv = [sum(v[i] * S[i][j] for i in range(4)) for j in range(4)]
    e = [[1 if k == i else 0 for k in range(4)] for i in range(4)]
    y = None
    for i, j in combinations(range(4), 2):
        den = _det4([x, v, e[i], e[j]])
        if den != 0:
            # sign fixed so that the normal-form model maps by [4], not [-4]
            y = div(Sx[j] * Sv[i] - Sx[i] * Sv[j], den)
            break
    C2 = GenusOneModel(2, G)
    return cover_to_E(C2, (lam, mu, div(y, 2)))


def cover_any_to_E(model: GenusOneModel, point) -> ECPoint:
    if model.degree == 4:
        return cover4_to_E(model, point)
    return cover_to_E(model, point)


# ---------------------------------------------------------------------------
# embeddings

@dataclass
class EmbeddingData:
    source: GenusOneModel
    matrix: List[List[MultiPoly]]
    sign: int = 1
    ring_nvars: int = 3
    extra: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.source.degree

    def evaluate(self, point):
        return [[a(point) for a in row] for row in self.matrix]


def embed23(U: BinaryQuartic) -> EmbeddingData:
    """A_{2,3} = (9 dH | 3 dU | y x) on the weighted plane with coordinates (x1, x2, y)."""
    d = quartic_data(U)
    if d.disc == 0:
        raise DegenerateModelError("singular quartic")

    def lift(p):
        return p.homogenize_embed(3, [0, 1])

    x1, x2, y = MultiPoly.gens(3)
    Hx1, Hx2 = lift(d.H.diff(0)), lift(d.H.diff(1))
    Ux1, Ux2 = lift(d.U.diff(0)), lift(d.U.diff(1))
    A = [[-9 * Hx2, -3 * Ux2, x1 * y],
         [9 * Hx1, 3 * Ux1, x2 * y]]
    return EmbeddingData(GenusOneModel(2, U), A, 1, 3, {"data": d})


def embed34(U: TernaryCubic, sign: int = 1) -> EmbeddingData:
    """A_{3,4} with columns -3f + 9c4 H x, e, (2/3)(u x h), -(1/3) H x; sign scales column 3."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    d = cubic_data(U)
    if d.disc == 0:
        raise DegenerateModelError("singular cubic")
    X = MultiPoly.gens(3)
    uh = cross(d.u, d.h)
    col1 = [-3 * d.f[i] + 9 * d.c4 * d.H * X[i] for i in range(3)]
    col2 = list(d.e)
    col3 = [uh[i] * Fraction(2 * sign, 3) for i in range(3)]
    col4 = [d.H * X[i] * Fraction(-1, 3) for i in range(3)]
    A = [[col1[i], col2[i], col3[i], col4[i]] for i in range(3)]
    return EmbeddingData(GenusOneModel(3, U), A, sign, 3, {"data": d})


def minors_map(A, n: Optional[int] = None):
    """Signed maximal minors ((-1)^i det(A without column i)), i = 0..n."""
    rows = [list(r) for r in A]
    n = len(rows) if n is None else n
    if len(rows) != n or any(len(r) != n + 1 for r in rows):
        raise ValueError("expected an n x (n+1) matrix")
    out = []
    for i in range(n + 1):
        sub = [[r[j] for j in range(n + 1) if j != i] for r in rows]
        if isinstance(sub[0][0], MultiPoly) or any(isinstance(v, MultiPoly) for r in sub for v in r):
            m = det_poly(sub)
        else:
            m = Matrix(sub).det()
        out.append(m if i % 2 == 0 else -m)
    if all(not isinstance(v, MultiPoly) for v in out) and all(v == 0 for v in out):
        raise ModelError("matrix has rank < n: all maximal minors vanish")
    return out


def matrix_point(coords, shape):
    r, c = shape
    if len(coords) != r * c:
        raise ValueError("coordinate count does not match the matrix shape")
    return [list(coords[i * c:(i + 1) * c]) for i in range(r)]


def normalize_point(pt) -> list:
    """Coprime integer coordinates with positive first nonzero entry (rational input)."""
    fr = [Fraction(v) for v in pt]
    den = lcm(*[f.denominator for f in fr]) if fr else 1
    ints = [int(f * den) for f in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        raise ValueError("zero vector is not a projective point")
    ints = [v // g for v in ints]
    first = next(v for v in ints if v)
    return [-v for v in ints] if first < 0 else ints


def normalize_weighted(pt):
    """(x1 : x2 : y) with weights (1, 1, 2) scaled to coprime integers x1, x2."""
    x1, x2, y = (Fraction(v) for v in pt)
    den = lcm(x1.denominator, x2.denominator)
    a, b = x1 * den, x2 * den
    g = gcd(int(a), int(b)) or 1
    s = Fraction(den, g)
    a, b, y = x1 * s, x2 * s, y * s * s
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return [int(a), int(b), y]


def trivial_model(n: int, c4, c6) -> GenusOneModel:
    """The normal-form models that the flex matrices bring a covering to."""
    c4, c6 = Fraction(c4), Fraction(c6)
    if c4 ** 3 == c6 ** 2:
        raise DegenerateModelError("discriminant is zero")
    if n == 2:
        # (1/36)(x^3 z - 27 c4 x z^3 - 54 c6 z^4), variables (z, x)
        return GenusOneModel(2, BinaryQuartic(Fraction(-54, 36) * c6, Fraction(-27, 36) * c4,
                                              Fraction(0), Fraction(1, 36), Fraction(0)))
    if n == 3:
        z, x, y = MultiPoly.gens(3)
        p = (y * y * z - x ** 3 + 27 * c4 * x * z * z + 54 * c6 * z ** 3) * Fraction(1, 6)
        return GenusOneModel(3, TernaryCubic.from_poly(p))
    if n == 4:
        return GenusOneModel(4, trivial_quadrics(c4, c6))
    raise ValueError("trivial models exist for n = 2, 3, 4")


def trivial_quadrics(c4, c6):
    x1, x2, x3, x4 = MultiPoly.gens(4)
    return (x1 * x4 - x2 * x2,
            x2 * x4 - x3 * x3 - 27 * c4 * x1 * x2 - 54 * c6 * x1 * x1)


def weierstrass_embedding(n: int, P: ECPoint):
    """Image of P = (Z:X:Y) under the normal-form embedding of degree n."""
    if P.is_zero:
        Z, X, Y = 0, 0, 1
    else:
        Z, X, Y = 1, P.x, P.y
    if n == 2:
        # y^2 = (1/36)(x^3 z - ...) at (z : x : y) = (Z : X : -Y/6); this sign
        # makes the 2-covering map act as [2] rather than [-2]
        if P.is_zero:
            return [0, 1, 0]
        return [Z, X, -Fraction(Y) / 6]
    if n == 3:
        return [Z, X, Y]
    if n == 4:
        return [Z * Z, X * Z, Y * Z, X * X]
    raise ValueError("n must be 2, 3 or 4")
