"""Exact series arithmetic: documented examples and randomized properties."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tangles.algebra import (
    BiSeries,
    ColorPoly,
    GaussianRational,
    I,
    Series,
    SeriesError,
    compose,
    eval_poly,
    newton_lift,
    revert,
    series_arith,
    specialize,
    sqrt,
)
from tangles.n1 import QUINTIC

from oracles import binomial_series_sqrt

# -- strategies -----------------------------------------------------------------------

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
ORDER = 7


def series_strategy(order=ORDER, constant=None, zero_constant=False, unit_linear=False):
    @st.composite
    def build(draw):
        coeffs = draw(st.lists(fractions, min_size=order + 1, max_size=order + 1))
        if zero_constant:
            coeffs[0] = Fraction(0)
        if constant is not None:
            coeffs[0] = Fraction(constant)
        if unit_linear:
            coeffs[1] = draw(fractions.filter(lambda c: c != 0))
        return Series(coeffs, order)

    return build()


colour_polys = st.lists(fractions, min_size=0, max_size=4).map(ColorPoly)
gaussians = st.builds(GaussianRational, fractions, fractions)

# -- documented examples --------------------------------------------------------------


def test_difference_of_squares():
    g = Series.variable(4)
    assert (1 + g) * (1 - g) == 1 - g * g


def test_geometric_series():
    g = Series.variable(3)
    assert list((1 / (1 - g)).coeffs) == [1, 1, 1, 1]


def test_square_of_two_point_series():
    a = Series([1, 2, 9], 2)
    assert list((a * a).coeffs) == [1, 4, 22]


def test_division_by_zero_constant_term_fails():
    g = Series.variable(3)
    with pytest.raises(SeriesError):
        1 / g


def test_mixed_order_truncates_to_minimum():
    a = Series([1, 1, 1, 1, 1], 4)
    b = Series([1, 1], 1)
    assert (a * b).order == 1


def test_series_arith_dispatch():
    a, b = Series([1, 2, 3], 2), Series([1, -1, 0], 2)
    assert series_arith(a, b, "add") == a + b
    assert series_arith(a, b, "div") == a / b
    with pytest.raises(ValueError):
        series_arith(a, b, "pow")


def test_compose_examples():
    g = Series.variable(5)
    geo = Series([1] * 6, 5)
    assert compose(geo, g) == geo
    w2 = Series([0, 0, 1], 5)
    assert list(compose(w2, g + g * g).coeffs) == [0, 0, 1, 2, 1, 0]


def test_compose_sqrt_consistency():
    f = sqrt(Series([1, -12], 6))
    assert compose(f, Series.variable(6)) == f


def test_compose_rejects_constant_inner():
    with pytest.raises(SeriesError):
        compose(Series([1, 1], 3), Series([1, 1], 3))


def test_revert_identity_and_catalan():
    w = Series.variable(5)
    assert revert(w) == w
    assert list(revert(w - w * w).coeffs) == [0, 1, 1, 2, 5, 14]


def test_revert_rejects_degenerate():
    with pytest.raises(SeriesError):
        revert(Series([0, 0, 1], 4))
    with pytest.raises(SeriesError):
        revert(Series([1, 1], 4))


def test_sqrt_examples():
    assert sqrt(Series([1], 4)) == Series([1], 4)
    assert list(sqrt(Series([1, -12], 3)).coeffs) == [1, -6, -18, -108]
    assert list(sqrt(Series([1, 2, 1], 4)).coeffs) == [1, 1, 0, 0, 0]


def test_sqrt_matches_binomial_oracle():
    assert list(sqrt(Series([1, -12], 10)).coeffs) == binomial_series_sqrt(-12, 10)


def test_sqrt_rejects_irrational_constant():
    with pytest.raises(SeriesError):
        sqrt(Series([2, 1], 3))


def test_newton_lift_square_root():
    A = newton_lift({(2, 0): 1, (0, 0): -1, (0, 1): -1}, 1, 4)
    assert list(A.coeffs)[:3] == [1, Fraction(1, 2), Fraction(-1, 8)]


def test_newton_lift_quintic_base_point():
    A = newton_lift(QUINTIC, 2, 6)
    assert list(A.coeffs)[:2] == [2, 2]
    assert eval_poly(QUINTIC, A).is_zero()


def test_newton_lift_degenerate_root():
    with pytest.raises(SeriesError):
        newton_lift({(2, 0): 1, (0, 1): -1}, 0, 4)


def test_newton_lift_non_root():
    with pytest.raises(SeriesError):
        newton_lift({(2, 0): 1, (0, 0): -1}, 2, 4)


# -- randomized properties ------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(series_strategy(), series_strategy(), series_strategy())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a + b) - b == a


@settings(max_examples=60, deadline=None)
@given(series_strategy(constant=1), series_strategy())
def test_division_inverts_multiplication(a, b):
    assert (b / a) * a == b


@settings(max_examples=60, deadline=None)
@given(series_strategy(zero_constant=True, unit_linear=True))
def test_revert_is_two_sided_inverse(f):
    g = revert(f)
    x = Series.variable(f.order)
    assert compose(f, g) == x
    assert compose(g, f) == x


@settings(max_examples=60, deadline=None)
@given(series_strategy(), series_strategy(zero_constant=True), series_strategy(zero_constant=True))
def test_compose_is_associative(f, g, h):
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


@settings(max_examples=60, deadline=None)
@given(st.fractions(min_value=Fraction(1, 9), max_value=50, max_denominator=9), series_strategy())
def test_sqrt_squares_back(r, f):
    f = Series([r * r] + list(f.coeffs)[1:], f.order)
    root = sqrt(f)
    assert root * root == f
    assert root[0] == r


@settings(max_examples=40, deadline=None)
@given(
    st.lists(fractions, min_size=1, max_size=3),
    st.fractions(min_value=1, max_value=5, max_denominator=3),
)
def test_newton_lift_residual_vanishes(perturbation, a0):
    # P(A, g) = (A - a0)(A + a0 + 1) + g * (c0 + c1 A + c2 A^2): simple root at a0
    P = {(2, 0): 1, (1, 0): 1, (0, 0): -a0 * (a0 + 1)}
    for i, c in enumerate(perturbation):
        P[(i, 1)] = P.get((i, 1), 0) + c
    A = newton_lift(P, a0, 9)
    assert A[0] == a0
    assert eval_poly(P, A).is_zero()


@settings(max_examples=60, deadline=None)
@given(colour_polys, colour_polys.filter(bool))
def test_colour_poly_exact_division(a, b):
    assert (a * b).exact_div(b) == a


def test_colour_poly_inexact_division_fails():
    with pytest.raises(ArithmeticError):
        ColorPoly([1, 1]).exact_div(ColorPoly.n())


@settings(max_examples=60, deadline=None)
@given(gaussians, gaussians.filter(bool))
def test_gaussian_field(a, b):
    assert (a / b) * b == a
    assert (a * a.conjugate()).is_real()
    assert a.norm() == (a * a.conjugate()).re


def test_imaginary_unit():
    assert I * I == -1


@st.composite
def biseries(draw, order=3):
    terms = {}
    for j in range(order + 1):
        for k in range(order + 1 - j):
            terms[(j, k)] = ColorPoly(draw(st.lists(fractions, min_size=0, max_size=2)))
    return BiSeries(terms, order)


@settings(max_examples=40, deadline=None)
@given(biseries(), biseries(), st.fractions(min_value=-3, max_value=3, max_denominator=4))
def test_specialization_commutes(a, b, n):
    lhs = (a * b + a).specialize(n)
    rhs = a.specialize(n) * b.specialize(n) + a.specialize(n)
    assert lhs == rhs
    one = BiSeries.constant(ColorPoly([1]), 3)
    inv = (one + a - BiSeries.constant(a[(0, 0)], 3)).inverse()
    assert inv.specialize(n) == (one + a - BiSeries.constant(a[(0, 0)], 3)).specialize(n).inverse()


@settings(max_examples=40, deadline=None)
@given(biseries())
def test_biseries_inverse(a):
    one = BiSeries.constant(ColorPoly([1]), 3)
    unit = one + a - BiSeries.constant(a[(0, 0)], 3)
    assert unit * unit.inverse() == one


def test_specialize_passes_scalars_through():
    assert specialize(Fraction(3, 2), 5) == Fraction(3, 2)
    assert specialize(ColorPoly([1, 2]), Fraction(-2)) == -3
