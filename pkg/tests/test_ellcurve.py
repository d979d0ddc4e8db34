import random
from fractions import Fraction

import pytest

from sixtwelve import fixtures
from sixtwelve.ellcurve import (CurveMismatchError, NotOnCurveError, WeierstrassCurve,
                                canonical_height, height_pairing, is_torsion, minimal_model,
                                regulator)
from sixtwelve.models import cover4_to_E, cover_to_E, minors_map

E37 = WeierstrassCurve(0, 0, 1, -1, 0)
P37 = E37.point(0, 0)


@pytest.fixture(scope="module")
def twelve_example():
    E, (P1,) = fixtures.curve()
    ints = fixtures.integers()
    t, r, s = ints["t"], ints["r"], ints["s"]
    P = E.point(Fraction(r, t * t), Fraction(s, t ** 3))
    return E, P1, P


def test_group_law_basics():
    O = E37.zero()
    assert P37 + O == P37 and P37 - P37 == O
    rng = random.Random(0)
    pts = [k * P37 for k in range(-6, 7)]
    for _ in range(20):
        a, b, c = rng.sample(pts, 3)
        assert (a + b) + c == a + (b + c)
    with pytest.raises(NotOnCurveError):
        E37.point(1, 1)
    with pytest.raises(CurveMismatchError):
        P37 + WeierstrassCurve(0, 0, 1, -7, 6).point(1, 0)


def test_height_of_37a_generator():
    assert canonical_height(E37.zero()) == 0
    assert abs(canonical_height(P37) - 0.0511114082) < 1e-6


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_height_is_quadratic(n):
    assert abs(canonical_height(n * P37) - n * n * canonical_height(P37)) < 1e-3


def test_pairing_is_symmetric_and_bilinear():
    E = WeierstrassCurve(0, 0, 1, -7, 6)
    P, Q, R = E.point(1, 0), E.point(2, 0), E.point(0, 2)
    assert abs(height_pairing(P, Q) - height_pairing(Q, P)) < 1e-6
    assert abs(height_pairing(P + R, Q) - height_pairing(P, Q) - height_pairing(R, Q)) < 1e-4
    assert abs(regulator([P]) - canonical_height(P)) < 1e-9
    assert abs(regulator([P, 2 * P])) < 1e-4
    assert abs(regulator([P, Q, R]) - 0.417143558758) < 1e-4


def test_torsion_has_zero_height():
    E = WeierstrassCurve(0, 0, 0, -1, 0)  # y^2 = x^3 - x: full 2-torsion, rank 0
    T = E.point(1, 0)
    assert is_torsion(T) and abs(canonical_height(T)) < 1e-6
    assert not is_torsion(P37) and canonical_height(P37) > 0


def test_minimal_model_of_scaled_curve():
    E = WeierstrassCurve(0, 0, 0, -16 ** 2 * 4, 0)
    M = minimal_model(E)
    assert M.is_isomorphic_to(E)
    assert abs(M.discriminant) <= abs(E.discriminant)


def test_published_table_heights(twelve_example):
    E, P1, P = twelve_example
    assert abs(canonical_height(P1) - 5.3208) < 1e-3


def test_published_descended_heights(twelve_example):
    E, P1, P = twelve_example
    assert abs(canonical_height(P) - 651.86) < 1e-2
    P2 = P + P1
    assert abs(canonical_height(P2) - 642.63) < 1e-2
    assert abs(regulator([P1, P2]) - 3415.49) < 5e-2


def test_covering_chains_reach_published_heights(twelve_example):
    U3 = fixtures.model("six_cubic")
    Q = cover_to_E(U3, minors_map(fixtures.matrix("six_matrix"), 2))
    assert abs(canonical_height(Q) - 308.94) < 1e-2
    E, P1, P = twelve_example
    C4 = fixtures.model("twelve_pair")
    R = cover4_to_E(C4, minors_map(fixtures.matrix("twelve_matrix"), 3))
    assert R.curve.is_isomorphic_to(E)
    assert abs(canonical_height(R) - 651.86) < 1e-2
    assert E.map_point_from(R) in (P, -P)
