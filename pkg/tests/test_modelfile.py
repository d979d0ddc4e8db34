import pytest
from hypothesis import given, strategies as st

from sixtwelve import fixtures
from sixtwelve.modelfile import (ParseError, digits_checksum, format_model, format_rational,
                                 parse_model, parse_rational)
from sixtwelve.models import minors_map


@pytest.mark.parametrize("name", ["six_quartic", "six_cubic", "six_quadrics", "twelve_cubic", "twelve_pair"])
def test_fixture_models_round_trip(name):
    m = fixtures.model(name)
    text = format_model(m)
    again = parse_model(text)
    assert format_model(again) == text
    assert again.quadrics() == m.quadrics() if m.degree >= 4 else again.payload == m.payload


def test_fixture_quartic_coefficients():
    assert fixtures.model("six_quartic").payload.coeffs == (138546, 225978, 435649, 3884, 183499)
    assert fixtures.model("six_cubic").invariants() == fixtures.model("six_quartic").invariants()


def test_every_fixture_point_verifies():
    assert all(q(fixtures.point("six_solution")) == 0 for q in fixtures.model("six_quadrics").quadrics())
    assert fixtures.model("six_cubic").contains(minors_map(fixtures.matrix("six_matrix"), 2))
    assert fixtures.model("twelve_pair").contains(minors_map(fixtures.matrix("twelve_matrix"), 3))
    assert fixtures.model("twelve_pair").jacobian().is_isomorphic_to(fixtures.curve()[0])
    assert set(fixtures.integers()) == {"t", "r", "s"}
    assert len(fixtures.curve_table()) >= 1


def test_truncated_file_reports_line():
    text = "kind: quartic\ndegree: 2\ncoeffs: 1 2 3\n"
    with pytest.raises(ParseError) as err:
        parse_model(text)
    assert err.value.line == 3


def test_non_integral_model_flagged():
    with pytest.raises(ParseError):
        parse_model("kind: quartic\ndegree: 2\ncoeffs: 1/2 0 0 0 1\nintegral: yes\n")


@given(st.fractions(max_denominator=10 ** 6))
def test_rational_round_trip(x):
    assert parse_rational(format_rational(x)) == x


def test_checksum_is_stable():
    assert digits_checksum(12345) == digits_checksum(12345)
    assert digits_checksum(12345) != digits_checksum(12346)
