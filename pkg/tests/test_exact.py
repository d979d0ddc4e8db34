from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sixtwelve.exact import (GF, Matrix, MixedFieldError, MultiPoly, NumberField, UPoly,
                             ZeroDivisorError, Zmod_pk, div, interpolate, kernel_basis,
                             normal_form, poly_gcd, resultant)

small = st.integers(-20, 20)
rat = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def test_div_keeps_rationals_exact():
    assert div(1, 3) == Fraction(1, 3)
    assert isinstance(div(6, 3), (int, Fraction))
    with pytest.raises(ZeroDivisionError):
        div(1, 0)


def test_number_field_basic():
    K = NumberField([-2, 0, 1])
    a = K.gen
    assert a * a == K(2)
    assert (1 / a) * a == K(1)
    assert (a + 1) ** 3 == K([7, 5])


def test_number_field_rejects_non_monic_and_mixing():
    with pytest.raises(ValueError):
        NumberField([1, 2])
    with pytest.raises(ValueError):
        NumberField([1, 0, 2])
    K, L = NumberField([-2, 0, 1]), NumberField([-3, 0, 1])
    with pytest.raises(MixedFieldError):
        K.gen + L.gen


def test_zero_divisor_surfaces():
    K = NumberField([-1, 0, 1])  # (t - 1)(t + 1)
    with pytest.raises(ZeroDivisorError):
        (K.gen - 1).inverse()


@given(st.lists(rat, min_size=3, max_size=3), st.lists(rat, min_size=3, max_size=3),
       st.lists(rat, min_size=3, max_size=3))
def test_number_field_ring_axioms(a, b, c):
    K = NumberField([-2, 0, 0, 1])  # t^3 - 2
    x, y, z = K(a), K(b), K(c)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if x:
        assert x * x.inverse() == K(1)


def test_residue_rings():
    F7 = GF(7)
    assert F7(3) * F7(5) == F7(1)
    assert F7(3).inverse() == F7(5)
    R = Zmod_pk(3, 2)
    with pytest.raises(ZeroDivisorError):
        R(3).inverse()
    assert (R(2) * R(5)).lift() == 1


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_is_multiplicative(a, b):
    A, B = Matrix(a), Matrix(b)
    assert (A * B).det() == A.det() * B.det()


@given(st.lists(st.lists(small, min_size=5, max_size=5), min_size=3, max_size=3))
def test_rank_nullity_and_kernel(rows):
    M = Matrix(rows)
    K = kernel_basis(M)
    assert M.rank() + len(K) == 5
    for v in K:
        assert all(sum(Fraction(r[j]) * v[j] for j in range(5)) == 0 for r in rows)


def test_inverse_and_solve():
    A = Matrix([[2, 1], [7, 4]])
    assert A * A.inverse() == Matrix.identity(2)
    assert A.solve([3, 11]) == [1, 1]
    assert Matrix([[1, 1], [1, 1]]).solve([1, 2]) is None


def test_matrix_over_number_field():
    K = NumberField([-2, 0, 1])
    a = K.gen
    A = Matrix([[a, 1], [1, a]])
    assert A.det() == K(1)
    assert A * A.inverse() == Matrix.identity(2, K(1))


def test_multipoly_arithmetic_and_derivatives():
    x, y, z = MultiPoly.gens(3)
    p = (x + y) ** 2 - z * x
    assert p(1, 2, 3) == 6
    assert p.diff(0) == 2 * x + 2 * y - z
    assert p.is_homogeneous(2)
    assert (x * y).linear_change([[0, 1, 0], [1, 0, 0], [0, 0, 1]]) == x * y


@given(st.lists(small, min_size=10, max_size=10))
def test_normal_form_kills_multiples(cs):
    x, y, z = MultiPoly.gens(3)
    u = x ** 3 + y ** 3 + z ** 3 - 2 * x * y * z
    q = sum((c * m for c, m in zip(cs, [x ** 3, y ** 3, z ** 3, x * y * z, x * x * y, x * x * z,
                                         y * y * x, y * y * z, z * z * x, z * z * y])), MultiPoly(3))
    assert normal_form(q * u, u).is_zero()
    r = normal_form(q, u)
    assert normal_form(r, u) == r


def test_upoly_gcd_resultant_interpolate():
    x = UPoly.x()
    f = (x - 1) * (x - 2)
    g = (x - 1) * (x + 3)
    assert poly_gcd(f, g).degree == 1
    assert resultant(f, x - 5) == f(5)
    p = interpolate([0, 1, 2, 3], [f(0), f(1), f(2), f(3)])
    assert p == f


@given(st.lists(small, min_size=1, max_size=5), st.lists(small, min_size=1, max_size=5))
def test_resultant_vanishes_on_common_root(a, b):
    f, g = UPoly(a) * UPoly([-1, 1]), UPoly(b) * UPoly([-1, 1])
    if f and g and f.degree > 0 and g.degree > 0:
        assert resultant(f, g) == 0
