import pytest
from hypothesis import given
from hypothesis import strategies as st

from knotstates.algebra import (
    ONE,
    ZERO,
    ConstantTermNonzero,
    NonUnitLeading,
    NotDivisible,
    Polynomial,
    Series,
    X,
    format_poly,
    poly,
    poly_div_exact,
    poly_divmod,
    poly_shift_down,
    poly_shift_up,
    series_rational_expand,
)

polys = st.lists(st.integers(-50, 50), max_size=6).map(Polynomial)


def test_trailing_zeros_trimmed():
    assert poly(1, 2, 0, 0).coeffs == (1, 2)
    assert poly(0, 0) == ZERO
    assert ZERO.degree == -1


def test_format_descending_with_signs():
    assert format_poly(poly(0, 3, 4, 1)) == "x^3 + 4x^2 + 3x"
    assert format_poly(poly(-2, -1, 2, 1)) == "x^3 + 2x^2 - x - 2"
    assert format_poly(poly(0, 0, -1)) == "-x^2"
    assert str(ZERO) == "0"
    assert str(ONE) == "1"


def test_big_coefficients_stay_exact():
    p = (3 * X + 3) ** 40
    assert p[20] == 3**40 * 137846528820
    assert p(1) == 6**40


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(polys, polys)
def test_div_exact_inverts_mul(a, b):
    if b.is_zero():
        return
    assert poly_div_exact(a * b, b) == a


@given(polys, st.integers(-3, 3))
def test_evaluation_is_a_homomorphism(a, v):
    assert (a * a)(v) == a(v) ** 2
    assert (a + ONE)(v) == a(v) + 1


def test_divmod_remainder_and_failures():
    q, r = poly_divmod(poly(1, 0, 1), poly(1, 1))
    assert q * poly(1, 1) + r == poly(1, 0, 1)
    with pytest.raises(NotDivisible):
        poly_div_exact(poly(1, 0, 1), poly(1, 1))
    with pytest.raises(NotDivisible):
        poly_divmod(poly(0, 1), poly(0, 2))
    with pytest.raises(ZeroDivisionError):
        poly_divmod(X, ZERO)


def test_shifts():
    assert poly_shift_down(poly(0, 2, 1)) == poly(2, 1)
    assert poly_shift_up(poly(2, 1), 2) == poly(0, 0, 2, 1)
    with pytest.raises(ConstantTermNonzero):
        poly_shift_down(poly(1, 1))


def test_pow_edge_cases():
    assert ZERO**0 == ONE
    assert (X + 1) ** 3 == poly(1, 3, 3, 1)
    with pytest.raises(ValueError):
        X ** -1


def test_series_geometric():
    # 1 / (1 - (x+1) y) = sum (x+1)^n y^n
    s = series_rational_expand(Series.from_terms([1]), Series.from_terms([1, -(X + 1)]), 5)
    assert s.order == 5
    assert [s[n] for n in range(6)] == [(X + 1) ** n for n in range(6)]


def test_series_needs_exact_leading_division():
    with pytest.raises(NonUnitLeading):
        series_rational_expand(Series.from_terms([1]), Series.from_terms([2 * X]), 2)
    with pytest.raises(NonUnitLeading):
        series_rational_expand(Series.from_terms([1]), Series.from_terms([0, 1]), 2)


def test_series_arithmetic_truncates():
    a = Series.from_terms([1, 1], 3)
    b = Series.from_terms([1, -1], 2)
    assert (a * b).order == 2
    assert list((a * b).terms) == [ONE, ZERO, -ONE]
    assert (a + b)[0] == poly(2)
