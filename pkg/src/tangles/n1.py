"""Closed-form counting at n = 1 (uncolored alternating tangles).

Everything is driven by the algebraic function ``A(g)``, the root of a
quintic with ``A(0) = 2``.  Correlators with ``2l`` legs are polynomials
in ``A``; their large-order behaviour follows from the square-root
singularity of ``A`` at ``g_c = (sqrt(21001) - 101)/270`` where ``A = 3``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
import sympy

from .algebra import Series, SeriesError, eval_poly, newton_lift, revert, sqrt

# 32(1-g) - 64(1-g)A + 32(1-g)A^2 - 4(1+2g-g^2)A^3 + 6g(1-g)A^4 - g(1-g)A^5,
# keyed by (power of A, power of g).
QUINTIC: dict[tuple[int, int], int] = {
    (0, 0): 32, (0, 1): -32,
    (1, 0): -64, (1, 1): 64,
    (2, 0): 32, (2, 1): -32,
    (3, 0): -4, (3, 1): -8, (3, 2): 4,
    (4, 1): 6, (4, 2): -6,
    (5, 1): -1, (5, 2): 1,
}


def double_factorial(k: int) -> int:
    """``k!!`` with ``(-1)!! = 0!! = 1``."""
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


@lru_cache(maxsize=None)
def c_const(l: int) -> Fraction:
    """The constant ``c_l`` multiplying the connected ``2l``-leg function."""
    if l < 1:
        raise ValueError("l must be positive")
    m = l - 1
    total = Fraction(0)
    for q in range((m + 1) // 2, m + 1):
        total += Fraction(-4) ** (q - m) * Fraction(
            math.factorial(m + q), math.factorial(2 * q - m) * math.factorial(m - q)
        )
    return total / (3 * m + 1)


@dataclass(frozen=True)
class QuinticSolution:
    A: Series

    @property
    def order(self) -> int:
        return self.A.order

    def residual(self) -> Series:
        return eval_poly(QUINTIC, self.A)

    def t(self) -> Series:
        """Bare quadratic coupling ``t = 4(2A - 3)/A^2``."""
        A = self.A
        return (A * 8 - 12) / (A * A)

    def g0(self) -> Series:
        """Bare quartic coupling from ``3 A^2 g0 - 2 A t + 4 = 0``."""
        A = self.A
        return (A * self.t() * 2 - 4) / (A * A * 3)


def solve_A(order: int) -> QuinticSolution:
    if order < 1:
        raise ValueError("order must be >= 1")
    return QuinticSolution(newton_lift(QUINTIC, Fraction(2), order))


# -- polynomials in A ---------------------------------------------------------


def _poly_at(coeffs: list[Fraction], A: Series) -> Series:
    out = Series([coeffs[-1]], A.order)
    for c in reversed(coeffs[:-1]):
        out = out * A + c
    return out


def moment_poly(l: int) -> list[Fraction]:
    """``G_2l`` as coefficients of a polynomial in ``A`` (renormalized, G = 1)."""
    pref = 2 * Fraction(double_factorial(2 * l - 1), math.factorial(l + 2))
    coeffs = [Fraction(0)] * (l + 1)
    # 2 A^(l-1) (2l-1)!!/(l+2)! (3l - (l-1) A)
    coeffs[l - 1] += pref * 3 * l
    coeffs[l] -= pref * (l - 1)
    return coeffs


def connected_poly(l: int) -> list[Fraction]:
    """``G_2l^c`` as a polynomial in ``A``: (c_l/l!)(A-2)^(l-1)(3l-2-(l-1)A)."""
    base = [Fraction(1)]
    for _ in range(l - 1):  # multiply by (A - 2)
        base = [Fraction(0)] + base
        for i in range(len(base) - 1):
            base[i] -= 2 * base[i + 1]
    lin = [Fraction(3 * l - 2), Fraction(-(l - 1))]
    out = [Fraction(0)] * (len(base) + 1)
    for i, x in enumerate(base):
        for j, y in enumerate(lin):
            out[i + j] += x * y
    pref = c_const(l) / math.factorial(l)
    return [pref * c for c in out]


def moments(l: int, sol: QuinticSolution) -> Series:
    if l < 1:
        raise ValueError("l must be positive")
    return _poly_at(moment_poly(l), sol.A)


@dataclass(frozen=True)
class TangleSeries:
    legs: int
    series: Series

    def coefficient(self, p: int) -> int | Fraction:
        c = self.series[p]
        return c.numerator if c.denominator == 1 else c

    def coefficients(self) -> list:
        """Coefficients for ``p = 1 .. order``."""
        return [self.coefficient(p) for p in range(1, self.series.order + 1)]


def connected(l: int, sol: QuinticSolution) -> TangleSeries:
    if l < 2:
        raise ValueError("connected tangle series need l >= 2")
    return TangleSeries(2 * l, _poly_at(connected_poly(l), sol.A))


def tangle_table(legs: int, order: int) -> list:
    """Counts of prime alternating tangles with ``legs`` legs, p = 1..order."""
    if legs < 4 or legs % 2:
        raise ValueError("legs must be an even integer >= 4")
    if order == 0:
        return []
    return connected(legs // 2, solve_A(order)).coefficients()


# -- bare one-matrix model -----------------------------------------------------


def bare_A(order: int) -> Series:
    """``A(g0) = (1 - sqrt(1 - 12 g0)) / (3 g0)`` at ``t = 1``."""
    s = sqrt(Series([1, -12], order + 1))
    return ((1 - s) / 3).shift(-1)


def bare_moments(lmax: int, order: int) -> list[Series]:
    """Planar moments ``<tr M^2l>/N`` at ``t = 1`` for ``l = 0..lmax``.

    Series in ``g0`` for the action ``-M^2/2 + g0 M^4/4``.
    """
    A = bare_A(order)
    out = [Series.constant(1, order)]
    for l in range(1, lmax + 1):
        pref = Fraction(double_factorial(2 * l - 1), math.factorial(l + 2))
        out.append(A**l * (2 * (l + 1) - A * Fraction(l, 2)) * pref)
    return out


def _cumulants_from_moments(ms: list[Series], order_x: int) -> list[Series]:
    """Free cumulants from even moments via resolvent inversion.

    With ``f(x) = x sum_l m_l x^(2l)``, ``K(w) = w / f^{-1}(w)`` has
    ``[w^(2l)] K = kappa_2l``.
    """
    T = ms[0].order
    zero = Series([0], T)
    fx = [zero] * (order_x + 1)
    for l, m in enumerate(ms):
        if 2 * l + 1 <= order_x:
            fx[2 * l + 1] = m
    inv = revert(Series(fx, order_x))
    K = inv.shift(-1).inverse()
    return [K[2 * l] for l in range(len(ms)) if 2 * l <= order_x - 1]


def bare_connected(lmax: int, order: int) -> list[Series]:
    """Connected planar correlators at ``t = 1`` as series in ``g0``."""
    ms = bare_moments(lmax, order)
    return _cumulants_from_moments(ms, 2 * lmax + 1)


def bare_free_energy(order: int) -> Series:
    """Planar free energy of ``-M^2/2 + g0 M^4/4``: sum (3 g0)^k (2k-1)!/(k!(k+2)!)."""
    return Series.from_function(
        lambda k: Fraction(0)
        if k == 0
        else Fraction(3**k * math.factorial(2 * k - 1), math.factorial(k) * math.factorial(k + 2)),
        order,
    )


# -- consistency checks --------------------------------------------------------


@dataclass
class CheckReport:
    name: str
    ok: bool
    first_failure: int | None = None
    detail: str = ""
    checked: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _first_mismatch(a: Series, b: Series) -> int | None:
    T = min(a.order, b.order)
    for k in range(T + 1):
        if a[k] != b[k]:
            return k
    return None


def resolvent_check(sol: QuinticSolution, lmax: int = 4) -> CheckReport:
    """Expand the one-cut resolvent in ``1/lambda`` and compare with the closed forms.

    Moments from the resolvent must equal :func:`moments`; inverting the
    resolvent must give :func:`connected`.
    """
    A, t, g0 = sol.A, sol.t(), sol.g0()
    T = sol.order
    # sqrt(1 - 2 A y) = sum s_k y^k, s_k = binom(1/2, k) (-2A)^k
    s = []
    binom = Fraction(1)
    Ak = Series.constant(1, T)
    for k in range(lmax + 3):
        s.append(Ak * binom * (-2) ** k)
        binom = binom * (Fraction(1, 2) - k) / (k + 1)
        Ak = Ak * A

    def omega_coeff(l: int) -> Series:
        # [lambda^-(2l+1)] omega = (1/2)(-t s_(l+1) + g0 s_(l+2) + g0 A s_(l+1))
        return (-(t * s[l + 1]) + g0 * s[l + 2] + g0 * A * s[l + 1]) / 2

    report = CheckReport("resolvent", True)
    lead = omega_coeff(0)
    if not (lead - 1).is_zero():
        return CheckReport("resolvent", False, 0, "1/lambda coefficient is not 1")
    report.checked.append("1/lambda coefficient = 1")
    ms = [lead]
    for l in range(1, lmax + 1):
        m = omega_coeff(l)
        ms.append(m)
        expect = moments(l, sol)
        bad = _first_mismatch(m, expect)
        if bad is not None:
            return CheckReport(
                "resolvent", False, bad, f"moment G_{2*l} differs at order g^{bad}"
            )
        report.checked.append(f"G_{2*l} matches closed form")
    cum = _cumulants_from_moments(ms, 2 * lmax + 1)
    for l in range(2, lmax + 1):
        bad = _first_mismatch(cum[l], connected(l, sol).series)
        if bad is not None:
            return CheckReport(
                "resolvent", False, bad, f"connected G_{2*l}^c differs at order g^{bad}"
            )
        report.checked.append(f"G_{2*l}^c matches closed form")
    return report


def h2pi_function(sol: QuinticSolution) -> Series:
    """Generating function of non-trivial H-2PI tangles, ``1 - 1/((1-g)(1+Gamma))``."""
    g = Series.variable(sol.order)
    gamma = connected(2, sol).series
    return 1 - 1 / ((1 - g) * (1 + gamma))


def h2pi_check(sol: QuinticSolution) -> CheckReport:
    """``g0(g) = g (1 - 2 H(g))`` with the bare ``g0`` from the one-cut solution."""
    g = Series.variable(sol.order)
    lhs = sol.g0()
    rhs = g * (1 - 2 * h2pi_function(sol))
    bad = _first_mismatch(lhs, rhs)
    if bad is not None:
        return CheckReport("h2pi", False, bad, f"renormalized coupling differs at g^{bad}")
    return CheckReport("h2pi", True, checked=[f"g0 = g(1-2H) through g^{sol.order}"])


# -- singularity and asymptotics -----------------------------------------------

_A, _g = sympy.symbols("A g")


def quintic_expr() -> sympy.Expr:
    return sum(c * _A**i * _g**j for (i, j), c in QUINTIC.items())


@dataclass(frozen=True)
class CriticalPoint:
    g_c: sympy.Expr
    A_c: sympy.Expr
    t_c: sympy.Expr
    g0_c: sympy.Expr
    locus: sympy.Expr  # polynomial in g whose root is g_c


@lru_cache(maxsize=None)
def critical_point() -> CriticalPoint:
    """Locate the dominant singularity of ``A(g)`` on the discriminant locus."""
    P = quintic_expr()
    disc = sympy.factor_list(sympy.discriminant(P, _A))[1]
    best = None
    for fac, _ in disc:
        if sympy.degree(fac, _g) < 1:
            continue
        for r in sympy.solve(fac, _g):
            val = complex(sympy.N(r))
            if abs(val.imag) < 1e-30 and val.real > 0:
                if best is None or val.real < complex(sympy.N(best[0])).real:
                    best = (sympy.radsimp(r), fac)
    g_c, locus = best
    ext = sympy.sqrt(21001)
    Pc = sympy.Poly(sympy.expand(P.subs(_g, g_c)), _A, extension=ext)
    dPc = Pc.diff(_A)
    common = sympy.gcd(Pc, dPc)
    roots = sympy.solve(common.as_expr(), _A)
    if len(roots) != 1:
        raise ArithmeticError(f"expected a single double root, got {roots}")
    A_c = sympy.nsimplify(roots[0])
    t_c = 4 * (2 * A_c - 3) / A_c**2
    g0_c = (2 * A_c * t_c - 4) / (3 * A_c**2)
    return CriticalPoint(g_c, A_c, sympy.nsimplify(t_c), sympy.nsimplify(g0_c), locus)


@dataclass(frozen=True)
class AsymptoticData:
    g_c: sympy.Expr
    a2: sympy.Expr
    b: sympy.Expr

    @property
    def a(self) -> sympy.Expr:
        return sympy.sqrt(self.a2)

    def amplitude(self, l: int) -> sympy.Expr:
        """Coefficient of ``(g_c - g)^(3/2)`` in ``G_2l^c``."""
        if l < 2:
            raise ValueError("l must be >= 2")
        return (
            sympy.Rational(c_const(l).numerator, c_const(l).denominator)
            / sympy.factorial(l - 2)
            * self.a
            * (self.b + sympy.Rational(l - 2, 3) * self.a2)
        )

    def predict(self, l: int, p: int, dps: int = 30) -> mpmath.mpf:
        with mpmath.workdps(dps):
            amp = mpmath.mpf(sympy.N(self.amplitude(l), dps + 5))
            gc = mpmath.mpf(sympy.N(self.g_c, dps + 5))
            return (
                3 / (4 * mpmath.sqrt(mpmath.pi))
                * amp
                * mpmath.mpf(p) ** mpmath.mpf(-2.5)
                * gc ** (mpmath.mpf(1.5) - p)
            )


@lru_cache(maxsize=None)
def singular_expansion() -> AsymptoticData:
    """Exact ``g_c``, ``a^2`` and ``b`` in ``A = 3 - a (g_c-g)^(1/2) + b (g_c-g) + ...``.

    With ``eps = g_c - g`` and ``P_A = 0`` at the critical point, matching
    orders ``eps`` and ``eps^(3/2)`` of ``P(A, g) = 0`` gives
    ``a^2 = 2 P_g / P_AA`` and ``b = (P_Ag - P_AAA a^2 / 6) / P_AA``.
    """
    cp = critical_point()
    P = quintic_expr()
    at = {_A: cp.A_c, _g: cp.g_c}

    def d(expr):
        return sympy.radsimp(sympy.expand(expr.subs(at)))

    P_g = d(sympy.diff(P, _g))
    P_AA = d(sympy.diff(P, _A, 2))
    P_Ag = d(sympy.diff(P, _A, _g))
    P_AAA = d(sympy.diff(P, _A, 3))
    a2 = sympy.radsimp(sympy.expand(2 * P_g / P_AA))
    b = sympy.radsimp(sympy.expand((P_Ag - P_AAA * a2 / 6) / P_AA))
    return AsymptoticData(cp.g_c, a2, b)


@dataclass(frozen=True)
class AsymptoticComparison:
    legs: int
    p: int
    predicted: mpmath.mpf
    actual: int

    @property
    def ratio(self) -> float:
        return float(self.predicted / self.actual)


def asymptotics(sol: QuinticSolution, l: int, p_check: int) -> tuple[AsymptoticData, AsymptoticComparison]:
    if l < 2:
        raise ValueError("l must be >= 2")
    if p_check > sol.order:
        raise SeriesError("p_check beyond the computed order")
    data = singular_expansion()
    actual = connected(l, sol).coefficient(p_check)
    return data, AsymptoticComparison(2 * l, p_check, data.predict(l, p_check), actual)
