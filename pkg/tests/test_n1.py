"""The n = 1 closed-form pipeline."""

from fractions import Fraction

import mpmath
import pytest
import sympy

from tangles.algebra import Series, eval_poly
from tangles.golden import load_table
from tangles.n1 import (
    QUINTIC,
    asymptotics,
    bare_A,
    bare_connected,
    bare_free_energy,
    bare_moments,
    c_const,
    connected,
    critical_point,
    h2pi_check,
    h2pi_function,
    moments,
    resolvent_check,
    singular_expansion,
    solve_A,
    tangle_table,
)

from oracles import free_energy_one_matrix, one_matrix_two_point, quintic_critical_point

TAB1 = load_table("tab1")


# -- quintic solution -----------------------------------------------------------------


def test_base_point_and_slope(quintic32):
    assert quintic32.A[0] == 2
    assert quintic32.A[1] == 2


def test_quintic_residual_vanishes(quintic32):
    assert quintic32.residual().is_zero()


def test_A_coefficients_positive(quintic32):
    assert all(c > 0 for c in quintic32.A.coeffs[1:])


def test_solve_A_rejects_order_zero():
    with pytest.raises(ValueError):
        solve_A(0)


# -- moments and connected functions --------------------------------------------------


def test_two_point_is_one(quintic32):
    assert moments(1, quintic32) == Series.constant(1, 32)


def test_four_point_at_zero_coupling(quintic32):
    assert moments(2, quintic32)[0] == 2


def test_connected_four_point_is_cumulant(quintic32):
    G2 = moments(1, quintic32)
    assert moments(2, quintic32) - 2 * G2 * G2 == connected(2, quintic32).series


def test_c2():
    assert c_const(2) == Fraction(1, 2)


def test_c_const_rejects_zero():
    with pytest.raises(ValueError):
        c_const(0)


def test_connected_examples(quintic32):
    assert connected(2, quintic32).coefficients()[:5] == [1, 2, 4, 10, 29]
    assert connected(3, quintic32).coefficient(3) == 14
    assert connected(4, quintic32).coefficient(3) == 12
    assert connected(4, quintic32).coefficient(32) == 12675855143073018219570


def test_connected_rejects_two_legs(quintic32):
    with pytest.raises(ValueError):
        connected(1, quintic32)


@pytest.mark.parametrize("column", ["G4c", "G6c", "G8c"])
def test_tab1_column_exact(quintic32, column):
    legs = int(column[1])
    got = connected(legs // 2, quintic32).coefficients()
    for p, value in TAB1.column(column).items():
        assert got[p - 1] == value, (column, p)
    # cells left blank in the table are zero
    for p in range(1, 33):
        if p not in TAB1.column(column):
            assert got[p - 1] == 0


def test_tangle_table_validation():
    assert tangle_table(4, 0) == []
    with pytest.raises(ValueError):
        tangle_table(5, 3)
    with pytest.raises(ValueError):
        tangle_table(2, 3)


# -- bare one-matrix model against independent counts ---------------------------------


def test_bare_two_point_counts_rooted_maps():
    ms = bare_moments(1, 8)
    assert list(ms[1].coeffs) == one_matrix_two_point(8)


def test_bare_A_closed_form():
    A = bare_A(6)
    assert A[0] == 2
    three_g = Series([0, 3], 6)
    # 3 g A^2 - 2 A + 4 = 0 at t = 1
    assert (three_g * A * A - 2 * A + 4).is_zero()


def test_bare_free_energy_matches_integrated_two_point():
    assert list(bare_free_energy(8).coeffs) == free_energy_one_matrix(8)


def test_bare_six_leg_cumulant():
    k6 = bare_connected(3, 4)[3]
    assert list(k6.coeffs) == [0, 0, 3, 56, 756]


# -- consistency checks ---------------------------------------------------------------


def test_resolvent_check(quintic32):
    report = resolvent_check(quintic32, lmax=4)
    assert report, report


def test_h2pi_check(quintic32):
    report = h2pi_check(quintic32)
    assert report, report


def test_h2pi_low_orders():
    sol = solve_A(2)
    H = h2pi_function(sol)
    assert H[0] == 0 and H[1] == 0
    g = Series.variable(2)
    assert sol.g0() == g * (1 - 2 * H)


def test_bare_couplings_from_A(quintic32):
    g0 = quintic32.g0()
    t = quintic32.t()
    assert g0[0] == 0 and g0[1] == 1
    assert t[0] == 1


# -- exact singularity ----------------------------------------------------------------


def test_critical_point_closed_form():
    cp = critical_point()
    assert sympy.simplify(cp.g_c - (sympy.sqrt(21001) - 101) / 270) == 0
    assert cp.A_c == 3
    assert cp.t_c == sympy.Rational(4, 3)
    assert cp.g0_c == sympy.Rational(4, 27)


def test_critical_point_independent_route():
    P, A, g = quintic_critical_point()
    g_c = (sympy.sqrt(21001) - 101) / 270
    at = {A: 3, g: g_c}
    assert sympy.simplify(P.subs(at)) == 0
    assert sympy.simplify(sympy.diff(P, A).subs(at)) == 0
    # the package's polynomial is the same quintic
    assert sympy.expand(P - sum(c * A**i * g**j for (i, j), c in QUINTIC.items())) == 0


def test_expansion_constants():
    data = singular_expansion()
    s = sympy.sqrt(21001)
    assert sympy.simplify(data.a2 - (2877137 + 7087 * s) / 339696) == 0
    assert sympy.simplify(data.b - 5 * (99397733 + 2127733 * s) / 901510722) == 0
    assert float(data.a2) > 0
    assert 0 < float(data.g_c) < 1
    assert abs(float(data.g_c) - 0.16266) < 1e-5


def test_expansion_matches_numerical_root():
    """A(g) near g_c follows 3 - a eps^(1/2) + b eps."""
    data = singular_expansion()
    P, A, g = quintic_critical_point()
    with mpmath.workdps(40):
        gc = mpmath.mpf(sympy.N(data.g_c, 50))
        a = mpmath.sqrt(mpmath.mpf(sympy.N(data.a2, 50)))
        b = mpmath.mpf(sympy.N(data.b, 50))
        eps = mpmath.mpf("1e-8")
        f = sympy.lambdify(A, P.subs(g, sympy.Float(gc - eps, 50)), "mpmath")
        guess = 3 - a * mpmath.sqrt(eps) + b * eps
        root = mpmath.findroot(f, guess)
        assert abs(root - guess) < 10 * eps**1.5


@pytest.mark.parametrize("l", [2, 3, 4])
def test_asymptotic_ratio_within_ten_percent(quintic32, l):
    _, cmp = asymptotics(quintic32, l, 32)
    assert abs(cmp.ratio - 1) < 0.10


def test_asymptotics_validation(quintic32):
    with pytest.raises(ValueError):
        asymptotics(quintic32, 1, 10)
    with pytest.raises(ArithmeticError):
        asymptotics(quintic32, 2, 40)


def test_eval_poly_on_lifted_root(quintic32):
    assert eval_poly(QUINTIC, quintic32.A).is_zero()
