import random
from fractions import Fraction

import pytest

from sixtwelve import fixtures
from sixtwelve.cubic import TernaryCubic, hesse
from sixtwelve.ellcurve import WeierstrassCurve
from sixtwelve.exact import Matrix, MultiPoly
from sixtwelve.models import (ModelError, PointNotOnModelError, cover_any_to_E,
                              embed23, embed34, jacobian_from_invariants, minors_map,
                              normalize_point, trivial_model, weierstrass_embedding)
from sixtwelve.quartic import BinaryQuartic, DegenerateModelError

F = Fraction


def _rank1():
    E0 = WeierstrassCurve(0, 0, 1, -1, 0)
    c4, c6 = E0.c_invariants
    E = jacobian_from_invariants(c4, c6)
    return c4, c6, E, E.map_point_from(E0.point(0, 0))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_trivial_models_map_by_multiplication(n):
    c4, c6, E, P = _rank1()
    T = trivial_model(n, c4, c6)
    scale = 6 if n == 4 else 1  # quadric pair invariants carry weights 4 and 6 in 6
    assert T.invariants() == (scale ** 4 * c4, scale ** 6 * c6)
    for k in (1, 2, 3, 5):
        Q = k * P
        pt = weierstrass_embedding(n, Q)
        assert T.contains(pt)
        R = cover_any_to_E(T, pt)
        if R.curve != E:
            R = E.map_point_from(R)
        assert R == n * Q


def test_embed23_minors_generic():
    """Symbolic check over generic coefficients, done independently in sympy."""
    import sympy as sp

    a, b, c, d, e, x1, x2, y = sp.symbols("a b c d e x1 x2 y")
    U = a * x1 ** 4 + b * x1 ** 3 * x2 + c * x1 ** 2 * x2 ** 2 + d * x1 * x2 ** 3 + e * x2 ** 4
    F1, F2 = sp.diff(U, x1), sp.diff(U, x2)
    H = sp.expand((sp.diff(F1, x1) * sp.diff(F2, x2) - sp.diff(F1, x2) ** 2) / 3)
    J = sp.expand((F1 * sp.diff(H, x2) - F2 * sp.diff(H, x1)) / 12)
    A = sp.Matrix([[-9 * sp.diff(H, x2), -3 * sp.diff(U, x2), x1 * y],
                   [9 * sp.diff(H, x1), 3 * sp.diff(U, x1), x2 * y]])
    m = [(-1) ** i * A[:, [j for j in range(3) if j != i]].det() for i in range(3)]
    assert all(sp.expand(u - v) == 0 for u, v in zip(m, [-12 * y * U, 36 * y * H, -324 * J]))
    c4 = 16 * (12 * a * e - 3 * b * d + c ** 2)
    c6 = 32 * (72 * a * c * e - 27 * a * d ** 2 - 27 * b ** 2 * e + 9 * b * c * d - 2 * c ** 3)
    mons = [x1 ** 3, x1 ** 2 * x2, x1 * x2 ** 2, x2 ** 3, x1 * y, x2 * y]
    rows = [[sp.Poly(sp.expand(A[i, j]), x1, x2, y).coeff_monomial(mm) for mm in mons]
            for i in range(2) for j in range(3)]
    D = sp.Matrix(rows).det(method="berkowitz")
    assert sp.expand(D - 4 * 3 ** 8 * (c4 ** 3 - c6 ** 2) / 1728) == 0


def test_embed23_minors_match_package_covariants():
    emb = embed23(BinaryQuartic.from_coeffs([3, -1, 4, 1, -5]))
    data = emb.extra["data"]
    m = minors_map(emb.matrix, 2)
    L = lambda p: p.homogenize_embed(3, [0, 1])  # noqa: E731
    y = MultiPoly.var(2, 3)
    want = [-12 * y * L(data.U), 36 * y * L(data.H), -324 * L(data.J)]
    assert all((u - v).is_zero() for u, v in zip(m, want))


def test_embed23_determinant():
    emb = embed23(fixtures.model("six_quartic").payload)
    d = emb.extra["data"]
    mons = [(3, 0, 0), (2, 1, 0), (1, 2, 0), (0, 3, 0), (1, 0, 1), (0, 1, 1)]
    rows = [[p.coeff(m) for m in mons] for r in emb.matrix for p in r]
    assert Matrix(rows).det() == 4 * 3 ** 8 * d.disc


def _mu(d):
    U, H, Th, J, c4, c6 = d.U, d.H, d.Theta, d.J, d.c4, d.c6
    return [2 * H ** 4 - 6 * c4 * U ** 2 * H ** 2 - F(2, 3) * U * H * Th,
            2 * Th * H ** 2 - 18 * c4 ** 2 * U ** 3 * H - 18 * c4 * U * H ** 3 + 48 * c6 * U ** 2 * H ** 2,
            2 * J * H,
            2 * Th ** 2 + 162 * c4 ** 3 * U ** 4 - 54 * c4 ** 2 * U ** 2 * H ** 2
            - 432 * c4 * c6 * U ** 3 * H - 18 * c4 * U * H * Th + 144 * c6 * U * H ** 3]


@pytest.mark.parametrize("U", [hesse(2, 3), hesse(1, -5),
                               TernaryCubic.from_coeffs([3, -2, 1, 0, 4, -1, 2, 5, -3, 1])])
def test_embed34_minors(U):
    emb = embed34(U)
    m = minors_map(emb.matrix, 3)
    assert all((a - b).is_zero() for a, b in zip(m, _mu(emb.extra["data"])))


def test_minors_rank_drop_and_bad_shape():
    with pytest.raises(ModelError):
        minors_map([[1, 2, 3], [2, 4, 6]])
    with pytest.raises(ValueError):
        minors_map([[1, 2], [3, 4]])


def test_published_points_map_down():
    U3 = fixtures.model("six_cubic")
    pt = minors_map(fixtures.matrix("six_matrix"), 2)
    assert U3.contains(pt)
    C4 = fixtures.model("twelve_pair")
    pt4 = minors_map(fixtures.matrix("twelve_matrix"), 3)
    assert C4.contains(pt4)


def test_off_model_point_rejected():
    c4, c6, E, P = _rank1()
    with pytest.raises(PointNotOnModelError):
        cover_any_to_E(trivial_model(3, c4, c6), [1, 1, 1])
    with pytest.raises(DegenerateModelError):
        jacobian_from_invariants(1, 1)


def test_quadric_model_transform_keeps_points():
    rng = random.Random(3)
    c4, c6, E, P = _rank1()
    T = trivial_model(4, c4, c6)
    while True:
        g = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(4)]
        if Matrix(g).det():
            break
    S = T.transform(g)
    pt = weierstrass_embedding(4, 3 * P)
    y = Matrix(g).solve(pt)
    assert S.contains(y)
    assert normalize_point([2, -4, 6]) == [1, -2, 3]
