import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sixtwelve import fixtures
from sixtwelve.combine import (InvariantMismatchError, combine, descend_point, image_quadrics,
                               twist_descend, weight_scale)
from sixtwelve.ellcurve import WeierstrassCurve
from sixtwelve.exact import Matrix
from sixtwelve.flex import same_span
from sixtwelve.models import (embed23, embed34, jacobian_from_invariants, minors_map,
                              trivial_model, weierstrass_embedding)


@pytest.fixture(scope="module")
def rank1():
    E0 = WeierstrassCurve(0, 0, 1, -1, 0)
    c4, c6 = E0.c_invariants
    E = jacobian_from_invariants(c4, c6)
    return c4, c6, E, E.map_point_from(E0.point(0, 0))


@pytest.fixture(scope="module")
def trivial6(rank1):
    c4, c6, E, P = rank1
    return combine(trivial_model(2, c4, c6), trivial_model(3, c4, c6), flexpt=[0, 0, 1])


def _on_model(bundle, emb, Q):
    A = emb.evaluate(weierstrass_embedding(bundle.up_model.degree, Q))
    gi = Matrix(bundle.flex.g).inverse().rows
    c = len(gi)
    M = [[sum(r[l] * gi[l][j] for l in range(c)) for j in range(c)] for r in A]
    return A, [v for r in M for v in r]


def _on_E(R, E):
    return R if R.curve == E else E.map_point_from(R)


def test_trivial_six_round_trip(rank1, trivial6):
    c4, c6, E, P = rank1
    B = trivial6
    assert len(B.model.quadrics()) == 9 and B.model.is_integral()
    emb = embed23(B.up_model.payload)
    rng = random.Random(1)
    for k in rng.sample(range(-12, 13), 20):
        Q = k * P
        if Q.is_zero:
            continue
        A, pt = _on_model(B, emb, Q)
        assert B.model.contains(pt)
        assert Matrix([minors_map(A, 2), weierstrass_embedding(3, 2 * Q)]).rank() == 1
        assert _on_E(descend_point(B, pt), E) == 6 * Q


@pytest.mark.parametrize("sign", [1, -1])
def test_trivial_twelve_round_trip(rank1, sign):
    c4, c6, E, P = rank1
    B = combine(trivial_model(3, c4, c6), trivial_model(4, c4, c6), flexpt=[0, 0, 0, 1], sign=sign)
    assert len(B.model.quadrics()) == 54
    assert B.info["scale"] == 6
    emb = embed34(B.up_model.payload, sign)
    for k in (1, 2, -3):
        Q = k * P
        _, pt = _on_model(B, emb, Q)
        assert B.model.contains(pt)
        assert _on_E(descend_point(B, pt), E) == sign * 12 * Q


def test_image_quadrics_vanish_on_sampled_points(rank1):
    c4, c6, E, P = rank1
    emb = embed23(fixtures.model("six_quartic").payload)
    Q = image_quadrics(emb)
    assert len(Q) == 9
    U = fixtures.model("six_quartic").payload
    rng = random.Random(0)
    from sixtwelve.exact import NumberField
    for _ in range(5):
        x1, x2 = rng.randint(-9, 9), rng.randint(1, 9)
        v = U(x1, x2)
        K = NumberField([-v, 0, 1])
        A = emb.evaluate([x1, x2, K.gen])
        pt = [a for r in A for a in r]
        assert all(q(pt) == 0 for q in Q)


@given(st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_twist_by_rational_matrix_preserves_span(entries):
    g = [entries[0:3], entries[3:6], entries[6:9]]
    if Matrix(g).det() == 0:
        return
    c4, c6 = Fraction(48), Fraction(-216)
    emb = embed23(trivial_model(2, c4, c6).payload)
    Q = image_quadrics(emb)
    out = twist_descend(Q, g, (2, 3))
    assert len(out) == 9
    ident = twist_descend(Q, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], (2, 3))
    assert same_span(ident, Q)
    gi = Matrix(g).inverse().rows
    back = twist_descend(out, gi, (2, 3))
    assert same_span(back, Q)
    for q in out:
        cs = list(q.terms.values())
        assert all(Fraction(c).denominator == 1 for c in cs)
        from math import gcd
        g0 = 0
        for c in cs:
            g0 = gcd(g0, int(c))
        assert g0 == 1


def test_weight_scale():
    assert weight_scale((48, -216), (48 * 6 ** 4, -216 * 6 ** 6)) == 6
    assert weight_scale((48, -216), (48, 216)) is None


def test_mismatched_invariants_rejected(rank1):
    c4, c6, E, P = rank1
    with pytest.raises(InvariantMismatchError):
        combine(trivial_model(2, c4, c6), trivial_model(3, c4 + 1, c6), flexpt=[0, 0, 1])


def test_published_configuration(six_bundle):
    B = six_bundle
    assert len(B.model.quadrics()) == 9
    assert B.model.is_integral()
    assert B.model.max_coefficient() <= 150
    pt = [a for r in fixtures.matrix("six_matrix") for a in r]
    assert B.model.contains(pt)
    E = B.down_model.jacobian()
    R = descend_point(B, pt)
    assert R.curve.is_isomorphic_to(E)
