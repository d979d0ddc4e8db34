"""Combine an n-covering and an (n+1)-covering into an n(n+1)-covering in P(Mat_{n,n+1})."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional

from .cubic import TernaryCubic
from .exact import Matrix, MultiPoly, div, kernel_basis, normal_form
from .exact.fields import NFElement, NumberField
from .flex import FlexResult, check_flexmat, flexmat
from .lattice import hnf_saturate, lll_reduce
from .models import (GenusOneModel, EmbeddingData, ModelError, SHAPES, QUADRIC_COUNT,
                     cover_any_to_E, embed23, embed34, minors_map, quadric_coeffs,
                     quadric_from_coeffs, quadric_monomials)
from .quartic import BinaryQuartic, DegenerateModelError


class InvariantMismatchError(ModelError):
    pass


class DimensionDropError(ModelError):
    pass


@dataclass
class CoveringBundle:
    model: GenusOneModel
    down_model: GenusOneModel
    up_model: GenusOneModel
    flex: Optional[FlexResult] = None
    sign: int = 1
    map_note: str = "minors"
    info: dict = field(default_factory=dict)

    def minors(self, point):
        r, c = self.model.shape
        A = [list(point[i * c:(i + 1) * c]) for i in range(r)]
        return minors_map(A, r)

    def descend(self, point):
        return descend_point(self, point)


# ---------------------------------------------------------------------------
# the space of quadrics through the embedded curve

def _reduce_on_curve(p: MultiPoly, emb: EmbeddingData) -> MultiPoly:
    if emb.n == 2:
        # (x1, x2, y): replace y^2 by U(x1, x2); the ring is free over {1, y}
        U = emb.source.payload.poly.homogenize_embed(3, [0, 1])
        out = MultiPoly(3)
        for e, c in p.terms.items():
            k, r = divmod(e[2], 2)
            mono = MultiPoly(3, {(e[0], e[1], r): c})
            out = out + mono * U ** k if k else out + mono
        return out
    return normal_form(p, emb.source.payload.poly)


def image_quadrics(emb: EmbeddingData) -> List[MultiPoly]:
    """Basis of the quadrics in the matrix entries vanishing on the image of emb."""
    rows = emb.matrix
    entries = [a for r in rows for a in r]
    N = len(entries)
    mons = quadric_monomials(N)
    images = []
    for m in mons:
        idx = [i for i, k in enumerate(m) for _ in range(k)]
        images.append(_reduce_on_curve(entries[idx[0]] * entries[idx[1]], emb))
    support = sorted({e for p in images for e in p.terms})
    # left kernel: combinations of products that reduce to zero
    M = Matrix([[p.coeff(e) for p in images] for e in support])
    ker = kernel_basis(M)
    expected = N * (N - 3) // 2
    if len(ker) != expected:
        raise DegenerateModelError(f"expected {expected} quadrics, found {len(ker)}")
    return [quadric_from_coeffs(v, N) for v in ker]


# ---------------------------------------------------------------------------
# twisting and descent to Z

def _quadric_matrix_of(coeffs, N):
    """Symmetric matrix S with q = x^T S x (off-diagonal entries halved)."""
    S = [[Fraction(0)] * N for _ in range(N)]
    for (c, m) in zip(coeffs, quadric_monomials(N)):
        idx = [i for i, k in enumerate(m) for _ in range(k)]
        i, j = idx
        if i == j:
            S[i][i] = S[i][i] + c
        else:
            S[i][j] = S[i][j] + div(c, 2)
            S[j][i] = S[i][j]
    return S


def _twist_one(q: MultiPoly, g, shape):
    """Coefficients of q(x g) where x is the r x c matrix of variables."""
    r, c = shape
    N = r * c
    S = _quadric_matrix_of(quadric_coeffs(q), N)
    # X_{i,j} = sum_k x_{i,k} g_{k,j}, i.e. X = G x with G block diagonal
    SG = [[None] * N for _ in range(N)]
    for a in range(N):
        for i in range(r):
            for k in range(c):
                acc = 0
                for j in range(c):
                    s = S[a][i * c + j]
                    if s != 0 and g[k][j] != 0:
                        acc = acc + g[k][j] * s
                SG[a][i * c + k] = acc
    out = []
    for m in quadric_monomials(N):
        idx = [t for t, k in enumerate(m) for _ in range(k)]
        u, v = idx
        # (G^T S G)[u][v] with u = (i, k)
        i, k = divmod(u, c)
        acc = 0
        for j in range(c):
            if g[k][j] != 0:
                t = SG[i * c + j][v]
                if t != 0:
                    acc = acc + g[k][j] * t
        out.append(acc if u == v else 2 * acc)
    return out


def _components(x, degree):
    if isinstance(x, NFElement):
        return list(x.coords)
    return [Fraction(x)] + [Fraction(0)] * (degree - 1)


def _primitive(v):
    den = lcm(*[Fraction(a).denominator for a in v])
    ints = [int(Fraction(a) * den) for a in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return [a // g for a in ints] if g else ints


def integral_basis(vectors: List[list]) -> List[list]:
    """LLL-reduced basis of (Q-span of vectors) intersected with Z^N."""
    rr, piv = Matrix(vectors).rref()
    rows = [_primitive(r) for r in rr.rows[:len(piv)]]
    sat, _ = hnf_saturate(rows)
    return [list(r) for r in lll_reduce(sat)]


def twist_descend(quadrics: List[MultiPoly], g, shape, field: Optional[NumberField] = None):
    """Substitute X = x g, take power-basis components and return an integral basis of the Q-span."""
    r, c = shape
    if len(g) != c or any(len(row) != c for row in g):
        raise ValueError("g must be a square matrix of size equal to the column count")
    if Matrix(g).det() == 0:
        raise ValueError("g is singular")
    deg = field.degree if field is not None else 1
    vecs = []
    for q in quadrics:
        co = _twist_one(q, g, shape)
        comps = [_components(x, deg) for x in co]
        for t in range(deg):
            v = [cc[t] for cc in comps]
            if any(a != 0 for a in v):
                vecs.append(v)
    rank = Matrix(vecs).rank()
    if rank != len(quadrics):
        raise DimensionDropError(f"descended span has dimension {rank}, expected {len(quadrics)}")
    basis = integral_basis(vecs)
    N = r * c
    out = []
    for v in basis:
        q = quadric_from_coeffs(v, N)
        lead = q.terms[q.leading_monomial()]
        out.append(q if lead > 0 else -q)
    return out


# ---------------------------------------------------------------------------

def _rational_root(x: Fraction, k: int) -> Optional[Fraction]:
    x = Fraction(x)
    if x <= 0:
        return None

    def iroot(n):
        s = _int_root(n, k)
        return s if s ** k == n else None

    a, b = iroot(x.numerator), iroot(x.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def _int_root(n: int, k: int) -> int:
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def weight_scale(up_inv, down_inv) -> Optional[Fraction]:
    """Positive rational l with down = (l^4 c4, l^6 c6) of up, if any."""
    (a4, a6), (b4, b6) = up_inv, down_inv
    if (a4, a6) == (b4, b6):
        return Fraction(1)
    if (a4 == 0) != (b4 == 0) or (a6 == 0) != (b6 == 0):
        return None
    if a4 != 0 and a6 != 0:
        l2 = Fraction(b6, 1) / a6 / (Fraction(b4) / a4)
        l = _rational_root(l2, 2)
    elif a4 != 0:
        l = _rational_root(Fraction(b4) / a4, 4)
    else:
        l = _rational_root(Fraction(b6) / a6, 6)
    if l is None or l ** 4 * a4 != b4 or l ** 6 * a6 != b6:
        return None
    return l


def rescale_model(model: GenusOneModel, l):
    """Same curve, invariants multiplied by (l^4, l^6)."""
    if model.degree == 2:
        U = model.payload
        return GenusOneModel(2, BinaryQuartic(*[c * l * l for c in U.coeffs]))
    if model.degree == 3:
        return GenusOneModel(3, TernaryCubic(tuple(c * l for c in model.payload.coeffs)))
    raise ValueError("only the up model is rescaled")


def combine(up: GenusOneModel, down: GenusOneModel, flex: Optional[FlexResult] = None,
            sign: int = 1, flexpt=None) -> CoveringBundle:
    """The integral n(n+1)-covering built from an n-covering and an (n+1)-covering."""
    n = up.degree
    if (n, down.degree) not in ((2, 3), (3, 4)):
        raise ValueError("combine needs (up, down) of degrees (2, 3) or (3, 4)")
    if sign != 1 and n == 2:
        raise ValueError("the sign switch applies to 12-coverings only")
    if flex is None:
        if flexpt is None:
            raise ValueError("a flex point or a flex result is required")
        flex = flexmat(down, flexpt)
    if not check_flexmat(down, flex):
        raise ValueError("flex matrix fails its normal-form identity")
    target = (flex.c4, flex.c6)
    l = weight_scale(up.invariants(), target)
    if l is None:
        raise InvariantMismatchError(
            f"invariants {up.invariants()} and {target} do not describe the same Weierstrass model")
    up_used = up if l == 1 else rescale_model(up, l)
    emb = embed23(up_used.payload) if n == 2 else embed34(up_used.payload, sign)
    Q = image_quadrics(emb)
    shape = SHAPES[n * (n + 1)]
    qs = twist_descend(Q, flex.g, shape, flex.field)
    model = GenusOneModel(n * (n + 1), qs)
    return CoveringBundle(model, down, up_used, flex, sign,
                          info={"scale": l, "image_quadrics": Q})


def descend_point(bundle: CoveringBundle, point):
    """Minors to the down model, then the covering map to E."""
    pt = list(point)
    if not bundle.model.contains(pt):
        raise ModelError("point is not on the model")
    m = bundle.minors(pt)
    if all(v == 0 for v in m):
        raise ModelError("matrix point has rank below n")
    return cover_any_to_E(bundle.down_model, m)
