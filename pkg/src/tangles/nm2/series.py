"""Exact series for the n = -2 fermionic model and its renormalization.

The model is parametrised by the elliptic modulus ``u = k^2``.  With
``K = (pi/2) Khat(u)`` and ``E = (pi/2) Ehat(u)`` every power of ``pi``
cancels, so the coupling ``g0(u)``, the two-point function ``G(u)`` and
the rescaled four-point function ``Gamma(u)`` have rational coefficients.

The renormalization condition ``g0 G^2 = g R(Gamma, g)`` is solved for
``g(u) = -u^2/256 + ...``.  Its inverse needs ``u`` as a series in
``s = sqrt(g)`` with leading term ``16 i s``.  Writing ``y = 16 i s``
keeps the reversion rational: ``u = sigma^{-1}(y)`` with
``sigma(u) = u sqrt(-256 g(u) / u^2)`` and ``y^2 = -256 g``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..algebra import GaussianRational, I, Series, SeriesError, compose, revert, sqrt


@dataclass(frozen=True)
class EllipticSeries:
    K: Series  # K(u) / (pi/2)
    E: Series  # E(u) / (pi/2)


def elliptic_series(order: int) -> EllipticSeries:
    if order < 0:
        raise ValueError("order must be >= 0")
    k = [Fraction(1)]
    for m in range(1, order + 1):
        ratio = Fraction(2 * m - 1, 2 * m)
        k.append(k[-1] * ratio * ratio)
    e = [Fraction(1)] + [-k[m] / (2 * m - 1) for m in range(1, order + 1)]
    return EllipticSeries(Series(k, order), Series(e, order))


@dataclass(frozen=True)
class ModelSeries:
    g0: Series  # quartic coupling at t = 1
    G: Series  # two-point function at t = 1
    gamma: Series  # Gamma_bare / G^2 = (1 - G)/(2 g0 G^2) + 1

    @property
    def order(self) -> int:
        return self.gamma.order


def model_series(order: int) -> ModelSeries:
    """``g0(u)``, ``G(u)`` and the rescaled ``Gamma(u)`` through ``u^order``."""
    if order < 2:
        raise ValueError("order must be >= 2")
    M = order + 2
    ell = elliptic_series(M + 4)
    K, E = ell.K, ell.E
    u = Series.variable(M + 4)
    # g0 = -(1/8 pi^2) K((2-u)K - 2E) = -(1/32) Khat((2-u)Khat - 2Ehat)
    g0 = -(K * ((2 - u) * K - 2 * E)) / 32
    q = g0.shift(-2)  # g0 = u^2 q, q(0) = -1/256
    # G - 1/(4 g0) + 2 = Khat^3((8 - 8u + 3u^2)Khat + 4(u-2)Ehat) / (1536 g0^2)
    X = K * K * K * ((8 - 8 * u + 3 * u * u) * K + 4 * (u - 2) * E)
    q = q.truncate(M + 2)
    # G u^4 q^2 = X/1536 + u^2 q/4 - 2 u^4 q^2; the u^0..u^3 terms must cancel
    numer = (
        X.truncate(M + 4) / 1536
        + q.shift(2).truncate(M + 4) / 4
        - (q * q).truncate(M).shift(4) * 2
    )
    low = [numer[k] for k in range(4)]
    if any(c != 0 for c in low):
        raise SeriesError(f"Laurent poles of G do not cancel: {low}")
    G = numer.shift(-4) / (q * q).truncate(M)
    if G[0] != 1:
        raise SeriesError(f"G(0) = {G[0]}, expected 1")
    one_minus = 1 - G
    if one_minus[1] != 0:
        raise SeriesError("1 - G is not O(u^2)")
    gamma = 1 + one_minus.shift(-2) / (2 * q.truncate(M - 2) * (G * G).truncate(M - 2))
    return ModelSeries(g0.truncate(order), G.truncate(order), gamma.truncate(order))


def renorm_rhs(gamma: Series, g: Series) -> Series:
    """``1 - 2H'2 + H'1 + V'2`` expressed through the n = -2 four-point function."""
    return -1 + Fraction(3, 2) / ((1 + g) * (1 - gamma)) + Fraction(1, 2) / ((1 - g) * (1 + gamma))


@dataclass(frozen=True)
class HalfPowerSeries:
    """``u`` as a series in ``s = sqrt(g)`` with Gaussian-rational coefficients."""

    u: Series

    def leading(self) -> GaussianRational:
        return self.u[1]

    def check(self) -> None:
        if self.u[0] != 0:
            raise SeriesError("u(0) must vanish")
        if self.u[1] != 16 * I:
            raise SeriesError(f"leading coefficient {self.u[1]} is not 16i")


@dataclass(frozen=True)
class Nm2Solution:
    model: ModelSeries
    g_of_u: Series  # rational, g = -u^2/256 + ...
    u_of_y: Series  # rational reversion, y = 16 i s
    gamma_of_y: Series  # rational, even in y
    gamma: Series  # Gamma_ren(g), rational

    @property
    def order(self) -> int:
        return self.gamma.order

    def u_of_s(self) -> HalfPowerSeries:
        return HalfPowerSeries(
            Series((GaussianRational(c) for c in self.u_of_y), self.u_of_y.order).scale(16 * I)
        )

    def gamma_of_s(self) -> Series:
        """``Gamma_ren`` as a Gaussian series in ``s``; odd and imaginary parts vanish."""
        return Series(
            (GaussianRational(c) for c in self.gamma_of_y), self.gamma_of_y.order
        ).scale(16 * I)

    def coefficients(self) -> list[int]:
        out = []
        for p in range(1, self.order + 1):
            c = self.gamma[p]
            if c.denominator != 1:
                raise SeriesError(f"non-integer coefficient {c} at g^{p}")
            out.append(c.numerator)
        return out


def solve_g_of_u(model: ModelSeries) -> Series:
    """Solve ``g0 G^2 = g R(Gamma, g)`` for ``g(u)`` by fixed-point iteration.

    ``g = O(u^2)`` so each pass fixes two more coefficients.
    """
    M = model.order
    lhs = model.g0 * model.G * model.G
    g = lhs
    for _ in range(M // 2 + 1):
        nxt = lhs / renorm_rhs(model.gamma, g)
        if nxt == g:
            break
        g = nxt
    else:
        nxt = lhs / renorm_rhs(model.gamma, g)
        if nxt != g:
            raise SeriesError("fixed-point iteration for g(u) did not settle")
    return g


def solve_renorm_nm2(order: int) -> Nm2Solution:
    """``Gamma_ren(g)`` through ``g^order`` at n = -2."""
    if order < 1:
        raise ValueError("order must be >= 1")
    M = 2 * order
    model = model_series(M + 1)
    g = solve_g_of_u(model)
    w = g.shift(-2)
    if w[0] != Fraction(-1, 256):
        raise SeriesError(f"g(u) = {w[0]} u^2 + ..., expected -u^2/256")
    rho = sqrt(w.truncate(M - 1) * -256)
    sigma = rho.shift(1)  # order M
    u_of_y = revert(sigma)
    gamma_y = compose(model.gamma, u_of_y)
    odd = [k for k in range(1, M + 1, 2) if gamma_y[k] != 0]
    if odd:
        raise SeriesError(f"odd powers of sqrt(g) survive at {odd[:5]}: branch error")
    gamma = Series(
        (gamma_y[2 * p] * Fraction(-256) ** p for p in range(order + 1)), order
    )
    if gamma[1] != 1:
        raise SeriesError(f"Gamma_ren = {gamma[1]} g + ..., expected g")
    return Nm2Solution(model, g, u_of_y, gamma_y, gamma)


def renorm_residual(sol: Nm2Solution, order_s: int) -> Series:
    """Substitute ``u(s)`` into the renormalization condition; should vanish.

    Works over Gaussian rationals in ``s`` through ``s^order_s``.
    """
    us = sol.u_of_s().u.truncate(order_s)
    gauss = lambda ser: Series((GaussianRational(c) for c in ser), ser.order)
    g0 = compose(gauss(sol.model.g0.truncate(order_s)), us)
    G = compose(gauss(sol.model.G.truncate(order_s)), us)
    gam = compose(gauss(sol.model.gamma.truncate(order_s)), us)
    s = Series.variable(order_s, GaussianRational(1))
    g = s * s
    return g0 * G * G - g * renorm_rhs(gam, g)


def gamma_table(order: int) -> list[int]:
    if order == 0:
        return []
    return solve_renorm_nm2(order).coefficients()
