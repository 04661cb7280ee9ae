"""Counterterm fixed point for the general-n model.

Given the bare planar correlators ``G``, ``Gamma1``, ``Gamma2`` at ``t = 1``
as series in ``(h1, h2)``, find ``h1(g)``, ``h2(g)`` such that

    h1 G^2 = g (1 - 2 H'2),        h2 G^2 = -g (H'1 + V'2),

where the auxiliary functions ``H'1``, ``H'2``, ``V'2`` are fixed by the
renormalized four-point functions ``Gamma_i / G^2``.  Then ``t = G`` and the
bare couplings are ``g_i = h_i t^2``.

Because every right-hand side carries a factor ``g`` and the auxiliary
functions start at ``g^2``, the order-``k`` coefficients of ``h1, h2`` only
depend on lower orders; plain fixed-point iteration settles one order per
pass and the number of passes is asserted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import BiSeries, ColorPoly, Series, specialize
from .planar import PlanarModel, check_budget, two_and_four_point

FORMAL = "formal"


class RenormError(ArithmeticError):
    pass


@dataclass(frozen=True)
class BareCorrelators:
    G: BiSeries
    gamma1: BiSeries
    gamma2: BiSeries
    n: object = FORMAL  # "formal" when coefficients are ColorPoly

    @property
    def order(self) -> int:
        return min(self.G.order, self.gamma1.order, self.gamma2.order)

    def check(self) -> None:
        if self.G[(0, 0)] != 1:
            raise RenormError("bare G must start at 1")
        if self.gamma1[(0, 0)] != 0 or self.gamma2[(0, 0)] != 0:
            raise RenormError("bare four-point functions must vanish at zero coupling")

    def specialize(self, n) -> "BareCorrelators":
        if self.n != FORMAL:
            raise RenormError("correlators are already specialised")
        n = Fraction(n)
        return BareCorrelators(
            self.G.specialize(n), self.gamma1.specialize(n), self.gamma2.specialize(n), n
        )


def bare_correlators(P: int, n=FORMAL, model: PlanarModel | None = None) -> BareCorrelators:
    """Bare correlators from the planar oracle at ``t = 1``."""
    check_budget(P)
    fp = two_and_four_point(P, 1, model)
    bare = BareCorrelators(fp.G, fp.gamma1, fp.gamma2)
    return bare if n == FORMAL else bare.specialize(n)


@dataclass(frozen=True)
class RenormSolution:
    n: object
    t: Series
    h1: Series
    h2: Series
    gamma1: Series  # renormalized, Gamma_i / G^2 on the solution
    gamma2: Series
    Hp1: Series
    Hp2: Series
    Vp2: Series
    iterations: int

    @property
    def order(self) -> int:
        return self.gamma1.order

    def specialize(self, n) -> "RenormSolution":
        n = Fraction(n)
        sp = lambda s: s.map(lambda c: specialize(c, n))
        return RenormSolution(
            n, sp(self.t), sp(self.h1), sp(self.h2), sp(self.gamma1), sp(self.gamma2),
            sp(self.Hp1), sp(self.Hp2), sp(self.Vp2), self.iterations,
        )

    def combination(self, a, b) -> Series:
        """``a Gamma1 + b Gamma2``; e.g. ``(1, 2)`` at n = 1, ``(1, -1)`` at n = -2."""
        return self.gamma1 * a + self.gamma2 * b


def _n_value(n):
    return ColorPoly.n() if n == FORMAL else Fraction(n)


def auxiliary_functions(gamma1: Series, gamma2: Series, g: Series, n=FORMAL):
    """``(H'1, H'2, V'2)`` from the decomposition of the four-point functions.

    ``H'2 +- H'1 = 1 - 1/((1 -+ g)(1 + Gamma2 +- Gamma1))`` and
    ``H'2 + n V'2 + H'1 = 1 - 1/((1 - g)(1 + (n+1) Gamma2 + Gamma1))``.
    With formal ``n`` the last relation is divided by ``n`` exactly.
    """
    nv = _n_value(n)
    if n != FORMAL and nv == 0:
        raise RenormError("V'2 cannot be isolated at n = 0; keep n formal and specialise after")
    plus = 1 - 1 / ((1 - g) * (1 + gamma2 + gamma1))  # H'2 + H'1
    minus = 1 - 1 / ((1 + g) * (1 + gamma2 - gamma1))  # H'2 - H'1
    Hp2 = (plus + minus) / 2
    Hp1 = (plus - minus) / 2
    nV = 1 - 1 / ((1 - g) * (1 + (nv + 1) * gamma2 + gamma1)) - plus
    if n == FORMAL:
        Vp2 = nV.map(lambda c: ColorPoly.coerce(c).exact_div(ColorPoly.n()))
    else:
        Vp2 = nV / nv
    return Hp1, Hp2, Vp2


def solve_fixed_point(bare: BareCorrelators, P: int | None = None) -> RenormSolution:
    """Renormalized ``Gamma1``, ``Gamma2`` and counterterms through ``g^P``."""
    P = bare.order if P is None else P
    if P > bare.order:
        raise RenormError(f"bare correlators known to order {bare.order}, {P} requested")
    if P < 1:
        raise ValueError("order must be >= 1")
    bare.check()
    G_b = bare.G.truncate(P)
    g1_b = bare.gamma1.truncate(P)
    g2_b = bare.gamma2.truncate(P)
    zero = Series.constant(0, P)
    g = Series.variable(P)
    h1, h2 = g, zero  # seed
    for it in range(1, P + 2):
        G = G_b.substitute(h1, h2)
        G2 = G * G
        gam1 = g1_b.substitute(h1, h2) / G2
        gam2 = g2_b.substitute(h1, h2) / G2
        Hp1, Hp2, Vp2 = auxiliary_functions(gam1, gam2, g, bare.n)
        new1 = g * (1 - 2 * Hp2) / G2
        new2 = -g * (Hp1 + Vp2) / G2
        if new1 == h1 and new2 == h2:
            return RenormSolution(bare.n, G, h1, h2, gam1, gam2, Hp1, Hp2, Vp2, it)
        h1, h2 = new1, new2
    raise RenormError(f"fixed point not reached after {P + 1} passes: system is not triangular")


def renormalized_counterterms(sol: RenormSolution) -> tuple[Series, Series]:
    """Bare couplings ``g_i(g) = h_i(g) t(g)^2``."""
    t2 = sol.t * sol.t
    return sol.h1 * t2, sol.h2 * t2


def renorm_residuals(sol: RenormSolution, bare: BareCorrelators) -> dict[str, Series]:
    """Every defining relation evaluated on the solution; all must vanish."""
    P = sol.order
    g = Series.variable(P)
    G = bare.G.truncate(P).substitute(sol.h1, sol.h2)
    G2 = G * G
    Hp1, Hp2, Vp2 = auxiliary_functions(sol.gamma1, sol.gamma2, g, sol.n)
    g1, g2 = renormalized_counterterms(sol)
    nv = _n_value(sol.n)
    return {
        "h1": sol.h1 * G2 - g * (1 - 2 * Hp2),
        "h2": sol.h2 * G2 + g * (Hp1 + Vp2),
        "t": sol.t - G,
        "gamma1": sol.gamma1 * G2 - bare.gamma1.truncate(P).substitute(sol.h1, sol.h2),
        "gamma2": sol.gamma2 * G2 - bare.gamma2.truncate(P).substitute(sol.h1, sol.h2),
        "H+": Hp2 + Hp1 - (1 - 1 / ((1 - g) * (1 + sol.gamma2 + sol.gamma1))),
        "H-": Hp2 - Hp1 - (1 - 1 / ((1 + g) * (1 + sol.gamma2 - sol.gamma1))),
        "V": Hp2 + Vp2 * nv + Hp1 - (1 - 1 / ((1 - g) * (1 + (nv + 1) * sol.gamma2 + sol.gamma1))),
        "g1": g1 - g * (1 - 2 * Hp2) * (sol.t * sol.t) / G2,
        "g2": g2 + g * (Hp1 + Vp2) * (sol.t * sol.t) / G2,
    }


def general_table(P: int, n=FORMAL, model: PlanarModel | None = None) -> RenormSolution:
    """Oracle plus fixed point: renormalized ``Gamma1, Gamma2`` at order ``P``."""
    bare = bare_correlators(P, FORMAL, model)
    sol = solve_fixed_point(bare, P)
    return sol if n == FORMAL else sol.specialize(n)
