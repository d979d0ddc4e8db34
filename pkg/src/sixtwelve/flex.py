"""Flex points and flex matrices for 2-, 3- and 4-coverings."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import List, Optional

from .cubic import TernaryCubic, cubic_data, hessian_covariant
from .exact import Matrix, MultiPoly, UPoly, div, interpolate, poly_gcd
from .exact.fields import NumberField, common_parent
from .models import GenusOneModel, quadric_pair_quartic
from .quartic import BinaryQuartic, DegenerateModelError


class NotAFlexError(ValueError):
    """The supplied point is not a flex of the model."""


@dataclass
class FlexResult:
    point: list
    g: list
    c4: object
    c6: object
    field: Optional[NumberField] = None
    algorithm: int = 0

    @property
    def det(self):
        return Matrix(self.g).det()


def _field_of(values):
    p = common_parent([v for v in values if v is not None])
    return p if isinstance(p, NumberField) else None


def _det(g):
    return Matrix(g).det()


def _matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), 0) for j in range(len(b[0]))]
            for i in range(len(a))]


def _complete_basis(p):
    """A matrix with last column p and unit vectors elsewhere, invertible."""
    n = len(p)
    k = max(i for i in range(n) if p[i] != 0)
    others = [i for i in range(n) if i != k]
    cols = [[1 if r == i else 0 for r in range(n)] for i in others] + [list(p)]
    return [[cols[c][r] for c in range(n)] for r in range(n)]


# ---------------------------------------------------------------------------
# degree 2: root of the quartic

def flexmat2(U: BinaryQuartic, root) -> FlexResult:
    """g with last column root and (U o g)(z, x) = (det g)^2/36 (x^3 z - 27c4 x z^3 - 54c6 z^4)."""
    alpha, beta = root
    if U(alpha, beta) != 0:
        raise NotAFlexError("(alpha : beta) is not a root of the quartic")
    if beta != 0:
        g1 = [[1, alpha], [0, beta]]
    else:
        g1 = [[0, alpha], [1, beta]]
    d1 = _det(g1)
    V = U.transform(g1)
    # in (z, x): coefficient of x^3 z is V.d, of x^2 z^2 is V.c
    b = div(V.d, d1 * d1)
    c = div(V.c, d1 * d1)
    if b == 0:
        raise DegenerateModelError("repeated root: the x^3 z coefficient vanishes")
    g2 = [[36 * b, 0], [-12 * c, 1]]
    g = _matmul(g1, g2)
    c4, c6 = U.invariants()
    return FlexResult([alpha, beta], g, c4, c6, _field_of([alpha, beta]), 1)


def quartic_normal_form(c4, c6, det):
    """(det^2/36)(x^3 z - 27c4 x z^3 - 54c6 z^4) in the variables (z, x)."""
    s = div(det * det, 36)
    return BinaryQuartic(-54 * c6 * s, -27 * c4 * s, 0 * s, s, 0 * s)


def check_flexmat2(U: BinaryQuartic, res: FlexResult) -> bool:
    V = U.transform(res.g)
    W = quartic_normal_form(res.c4, res.c6, res.det)
    return all(a == b for a, b in zip(V.coeffs, W.coeffs))


# ---------------------------------------------------------------------------
# degree 3: flex of the plane cubic

def _split_in_last(F: MultiPoly):
    """F(z, x, y) = f1 y^2 + f2 y + f3 (+ f0 y^3) as binary forms in (z, x)."""
    parts = {}
    for e, c in F.terms.items():
        parts.setdefault(e[2], {})[(e[0], e[1])] = c
    return [MultiPoly(2, parts.get(k, {})) for k in range(4)]


def flexmat3(U: TernaryCubic, flexpt) -> FlexResult:
    """g with last column flexpt and (U o g)(z, x, y) = (det g)/6 (y^2 z - x^3 + 27c4 x z^2 + 54c6 z^3)."""
    p = list(flexpt)
    F = U.poly
    if F(p) != 0:
        raise NotAFlexError("point is not on the cubic")
    if hessian_covariant(F)(p) != 0:
        raise NotAFlexError("point is not a flex (Hessian does not vanish)")
    g1 = _complete_basis(p)
    d1 = _det(g1)
    V = F.linear_change(g1)
    f3, f2, f1, f0 = _split_in_last(V)
    f1, f2, f3 = f1 / d1, f2 / d1, f3 / d1
    if f0:
        raise NotAFlexError("point is not on the cubic")
    if not f1:
        raise DegenerateModelError("singular point")
    beta = f1.coeff((1, 0))
    alpha = -f1.coeff((0, 1))
    Q = BinaryQuartic.from_poly(f2 * f2 * Fraction(1, 4) - f1 * f3)
    r2 = flexmat2(Q, (alpha, beta))
    g = r2.g
    dg = _det(g)
    f1g = f1.linear_change(g)
    f2g = f2.linear_change(g)
    if f1g != MultiPoly(2, {(1, 0): dg}) or f2g.coeff((0, 2)) != 0:
        raise NotAFlexError("point is not a flex")
    pp = div(f2g.coeff((2, 0)), dg)
    qq = div(f2g.coeff((1, 1)), dg)
    g2 = [[6 * g[0][0], 6 * g[0][1], 0],
          [6 * g[1][0], 6 * g[1][1], 0],
          [-3 * pp, -3 * qq, 1]]
    c4, c6 = Q.invariants()
    return FlexResult(p, _matmul(g1, g2), c4, c6, _field_of(p), 2)


def cubic_normal_form(c4, c6, det) -> MultiPoly:
    z, x, y = MultiPoly.gens(3)
    return (y * y * z - x ** 3 + 27 * c4 * x * z * z + 54 * c6 * z ** 3) * div(det, 6)


def check_flexmat3(U: TernaryCubic, res: FlexResult) -> bool:
    return U.poly.linear_change(res.g) == cubic_normal_form(res.c4, res.c6, res.det)


# ---------------------------------------------------------------------------
# degree 4: point on the quadric pair

def _split_x4(Q: MultiPoly):
    """Q(x1..x4) = l(x1,x2,x3) x4 + q(x1,x2,x3) + (x4^2 coefficient)."""
    lin, quad, top = {}, {}, 0
    for e, c in Q.terms.items():
        if e[3] == 2:
            top = c
        elif e[3] == 1:
            lin[e[:3]] = c
        else:
            quad[e[:3]] = c
    return MultiPoly(3, lin), MultiPoly(3, quad), top


def _lin_coeffs(l: MultiPoly, n: int = 3):
    return [l.coeff(tuple(1 if k == i else 0 for k in range(n))) for i in range(n)]


def flexmat4(Q1: MultiPoly, Q2: MultiPoly, flexpt) -> FlexResult:
    """g with last column flexpt and <Q1 o g, Q2 o g> = <x1x4 - x2^2, x2x4 - x3^2 - 27c4 x1x2 - 54c6 x1^2>."""
    p = list(flexpt)
    if Q1(p) != 0 or Q2(p) != 0:
        raise NotAFlexError("point is not on both quadrics")
    g1 = _complete_basis(p)
    d1 = _det(g1)
    l1, q1, t1 = _split_x4(Q1.linear_change(g1))
    l2, q2, t2 = _split_x4(Q2.linear_change(g1))
    L1, L2 = _lin_coeffs(l1), _lin_coeffs(l2)
    abc = [L1[1] * L2[2] - L1[2] * L2[1],
           L1[2] * L2[0] - L1[0] * L2[2],
           L1[0] * L2[1] - L1[1] * L2[0]]
    if all(v == 0 for v in abc):
        raise DegenerateModelError("the linear forms l1, l2 are dependent")
    C = TernaryCubic.from_poly((l2 * q1 - l1 * q2) / d1)
    try:
        r3 = flexmat3(C, abc)
    except NotAFlexError as exc:
        raise NotAFlexError(f"point is not a flex of the quadric pair ({exc})") from None
    g = r3.g
    M = [[_lin_coeffs(l.linear_change(g))[j] for j in range(3)] for l in (l1, l2)]
    if M[0][2] != 0 or M[1][2] != 0:
        raise NotAFlexError("point is not a flex")
    T = Matrix([[M[0][0], M[1][0]], [M[0][1], M[1][1]]]).inverse().rows
    T = [list(r) for r in T]
    q1n = q1 * T[0][0] + q2 * T[0][1]
    q1g = q1n.linear_change(g)
    a = 6 * q1g.coeff((2, 0, 0))
    b = 6 * q1g.coeff((1, 1, 0))
    c = 6 * q1g.coeff((1, 0, 1))
    # q1 o g = (kappa/6)(x1 L - x2^2); the corner entry kappa makes the span
    # identity exact, and dividing by kappa restores the last column
    kappa = _det([[T[0][0], T[0][1]], [T[1][0], T[1][1]]]) * d1 * _det(g)
    g2 = [[div(6 * g[i][j], kappa) for j in range(3)] + [0] for i in range(3)] \
        + [[div(-a, kappa), div(-b, kappa), div(-c, kappa), 1]]
    return FlexResult(p, _matmul(g1, g2), r3.c4, r3.c6, _field_of(p), 3)


def pair_normal_form(c4, c6):
    x1, x2, x3, x4 = MultiPoly.gens(4)
    return (x1 * x4 - x2 * x2, x2 * x4 - x3 * x3 - 27 * c4 * x1 * x2 - 54 * c6 * x1 * x1)


def _quadric_vector(q: MultiPoly):
    from .models import quadric_monomials
    return [q.coeff(m) for m in quadric_monomials(q.nvars)]


def same_span(A: List[MultiPoly], B: List[MultiPoly]) -> bool:
    ra = Matrix([_quadric_vector(q) for q in A]).rank()
    rb = Matrix([_quadric_vector(q) for q in B]).rank()
    rab = Matrix([_quadric_vector(q) for q in list(A) + list(B)]).rank()
    return ra == rb == rab


def check_flexmat4(Q1, Q2, res: FlexResult) -> bool:
    return same_span([Q1.linear_change(res.g), Q2.linear_change(res.g)],
                     list(pair_normal_form(res.c4, res.c6)))


def flexmat(model: GenusOneModel, point) -> FlexResult:
    if model.degree == 2:
        return flexmat2(model.payload, point[:2])
    if model.degree == 3:
        return flexmat3(model.payload, point)
    if model.degree == 4:
        return flexmat4(*model.payload, point)
    raise ValueError("flex matrices are computed for degrees 2, 3, 4")


def check_flexmat(model: GenusOneModel, res: FlexResult) -> bool:
    if model.degree == 2:
        return check_flexmat2(model.payload, res)
    if model.degree == 3:
        return check_flexmat3(model.payload, res)
    return check_flexmat4(*model.payload, res)


# ---------------------------------------------------------------------------
# flex loci

@dataclass
class FlexLocus:
    """Roots t of poly give flex points; see point_from_root."""

    degree: int
    poly: UPoly
    transform: list = field(default_factory=list)
    at_infinity: list = field(default_factory=list)


def _binary_to_upoly(F: MultiPoly) -> UPoly:
    """F(t, 1) for a binary form."""
    d = F.total_degree() if F else 0
    return UPoly([F.coeff((k, d - k)) for k in range(d + 1)])


def _resultant_in_y(F: MultiPoly, G: MultiPoly, xs):
    """Values of Res_y(F(x, y, 1), G(x, y, 1)) at the sample points xs."""
    from .exact import resultant

    out = []
    for x in xs:
        f = UPoly([sum((c * x ** e[0] for e, c in F.terms.items() if e[1] == k), 0)
                   for k in range(4)])
        g = UPoly([sum((c * x ** e[0] for e, c in G.terms.items() if e[1] == k), 0)
                   for k in range(4)])
        out.append(resultant(f, g))
    return out


def _good_chart(F: MultiPoly, H: MultiPoly) -> bool:
    # y^3 coefficients nonzero and no common zero on z = 0
    if F.coeff((0, 3, 0)) == 0 or H.coeff((0, 3, 0)) == 0:
        return False
    f = UPoly([F.coeff((3 - k, k, 0)) for k in range(4)])
    h = UPoly([H.coeff((3 - k, k, 0)) for k in range(4)])
    return poly_gcd(f, h).degree == 0


def _charts():
    yield [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    for a, b, c in product(range(-2, 3), repeat=3):
        yield [[1, 0, 0], [a, 1, 0], [b, c, 1]]


def flex_locus(model: GenusOneModel) -> FlexLocus:
    """Degree 2: the quartic in t = x1/x2.  Degree 3: Res_y(U, H) in x after a chart change."""
    if model.discriminant() == 0:
        raise DegenerateModelError("singular model")
    if model.degree == 2:
        U = model.payload
        inf = [[1, 0]] if U.a == 0 else []
        return FlexLocus(2, UPoly(list(U.coeffs)[::-1]), [[1, 0], [0, 1]], inf)
    if model.degree != 3:
        raise ValueError("flex loci are computed for degrees 2 and 3")
    F0 = model.payload.poly
    for g in _charts():
        F = F0.linear_change(g)
        H = hessian_covariant(F)
        if _good_chart(F, H):
            break
    else:  # pragma: no cover - the 126 charts always contain a good one
        raise DegenerateModelError("no suitable chart")
    xs = list(range(10))
    vals = _resultant_in_y(F, H, xs)
    R = interpolate(xs, vals)
    return FlexLocus(3, R, g, [])


def point_from_root(model: GenusOneModel, locus: FlexLocus, t):
    """The flex point(s) over the field of t for a root t of the locus polynomial."""
    if locus.poly(t) != 0:
        raise ValueError("t is not a root of the flex locus")
    if model.degree == 2:
        return [t, t * 0 + 1]
    g = locus.transform
    F = model.payload.poly.linear_change(g)
    H = hessian_covariant(F)

    def in_y(P):
        return UPoly([sum((c * t ** e[0] for e, c in P.terms.items() if e[1] == k), t * 0)
                      for k in range(4)])

    d = poly_gcd(in_y(F), in_y(H))
    if d.degree != 1:
        raise DegenerateModelError("flex not determined by its x-coordinate")
    d = d.monic()
    y = -d.c[0]
    local = [t, y, t * 0 + 1]
    return [sum((g[i][j] * local[j] for j in range(3)), t * 0) for i in range(3)]


# ---------------------------------------------------------------------------
# flex test by power series

def _series_mul(a, b, N):
    out = [0] * N
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j in range(min(len(b), N - i)):
            if b[j] != 0:
                out[i + j] = out[i + j] + x * b[j]
    return out


def _eval_series(P: MultiPoly, xs, N):
    """P evaluated at a tuple of truncated power series (length N lists)."""
    total = [0] * N
    for e, c in P.terms.items():
        term = [c] + [0] * (N - 1)
        for i, k in enumerate(e):
            for _ in range(k):
                term = _series_mul(term, xs[i], N)
        total = [a + b for a, b in zip(total, term)]
    return total


def _curve_equations(model: GenusOneModel) -> List[MultiPoly]:
    return model.equations()


def is_flex(model: GenusOneModel, point) -> bool:
    """Whether some hyperplane meets the curve at point with multiplicity >= degree."""
    n = model.degree
    if n == 2:
        pt = list(point)
        if not model.contains(pt):
            raise ValueError("point is not on the model")
        return pt[2] == 0
    pt = list(point)
    eqs = _curve_equations(model)
    if any(q(pt) != 0 for q in eqs):
        raise ValueError("point is not on the model")
    nv = len(pt)
    k = next(i for i in range(nv) if pt[i] != 0)
    pt = [div(v, pt[k]) for v in pt]
    free = [i for i in range(nv) if i != k]
    J = [[q.diff(i)(pt) for i in free] for q in eqs]
    Jm = Matrix(J)
    if Jm.rank() != nv - 2:
        raise DegenerateModelError("singular point of the model")
    # branch parameter: a free coordinate whose tangent component is nonzero
    tangent = Jm.kernel()
    if len(tangent) != 1:
        raise DegenerateModelError("singular point of the model")
    tv = tangent[0]
    jpos = next(i for i in range(len(free)) if tv[i] != 0)
    j = free[jpos]
    others = [i for i in free if i != j]
    N = n + 1
    zero = pt[k] * 0
    xs = [[pt[i]] + [zero] * (N - 1) for i in range(nv)]
    xs[j][1] = pt[k] * 0 + 1
    sub = Matrix([[row[free.index(i)] for i in others] for row in J])
    for order in range(1, N):
        vals = [_eval_series(q, xs, N)[order] for q in eqs]
        a = sub.solve([-v for v in vals])
        if a is None:
            raise DegenerateModelError("power series expansion failed")
        for idx, i in enumerate(others):
            xs[i][order] = xs[i][order] + a[idx]
    rows = [[xs[i][m] for i in range(nv)] for m in range(n)]
    return Matrix(rows).rank() < nv
