"""High-precision numerics for the n = -2 model.

The exact series only see a neighbourhood of ``g = 0``.  The dominant
singularities of ``Gamma_ren(g)`` lie where the parametrisation
``u -> (g(u), Gamma(u))`` has ``dg/du = 0``; they are located here by
complex Newton iteration on closed forms evaluated with mpmath numbers.
Complete elliptic integrals come from the arithmetic-geometric mean and
derivatives in ``u`` are carried by truncated Taylor jets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import mpmath

from .series import Nm2Solution, solve_renorm_nm2

DEFAULT_DPS = 60


class NumericError(ArithmeticError):
    pass


# -- elliptic integrals ----------------------------------------------------------


def agm(a, b, max_iter: int = 200):
    """Arithmetic-geometric mean with the right choice of square root.

    Also returns the ``c_n = (a_n - b_n)/2`` sequence needed for ``E``.
    """
    a, b = mpmath.mpc(a), mpmath.mpc(b)
    eps = mpmath.mpf(2) ** (-mpmath.mp.prec + 4)
    cs = []
    for _ in range(max_iter):
        if abs(a - b) <= eps * abs(a):
            return a, cs
        an = (a + b) / 2
        bn = mpmath.sqrt(a * b)
        if abs(an - bn) > abs(an + bn):
            bn = -bn
        cs.append((a - b) / 2)
        a, b = an, bn
    raise NumericError("AGM did not converge (argument too close to the branch cut)")


def elliptic_eval(m) -> tuple[mpmath.mpc, mpmath.mpc]:
    """Complete elliptic integrals ``K(m)``, ``E(m)`` with parameter ``m = k^2``.

    Principal branch, cut along ``[1, inf)``.
    """
    m = mpmath.mpc(m)
    if m.imag == 0 and m.real >= 1:
        raise NumericError(f"m = {m} lies on the branch cut [1, inf)")
    if m == 0:
        half_pi = mpmath.pi / 2
        return mpmath.mpc(half_pi), mpmath.mpc(half_pi)
    b0 = mpmath.sqrt(1 - m)
    M, cs = agm(1, b0)
    K = mpmath.pi / (2 * M)
    # E = K (1 - sum_{n>=0} 2^(n-1) c_n^2), c_0^2 = m, c_(n+1) = (a_n - b_n)/2
    total = m / 2
    for n, c in enumerate(cs):
        total += mpmath.mpf(2) ** n * c * c
    return K, K * (1 - total)


# -- Taylor jets -----------------------------------------------------------------


class Jet:
    """Truncated Taylor expansion ``sum c_k (x - x0)^k``, ``k <= order``."""

    __slots__ = ("c",)

    def __init__(self, c: Sequence):
        self.c = list(c)

    @property
    def order(self) -> int:
        return len(self.c) - 1

    @classmethod
    def variable(cls, x0, order: int) -> "Jet":
        if order == 0:
            return cls([mpmath.mpc(x0)])
        return cls([mpmath.mpc(x0), mpmath.mpc(1)] + [mpmath.mpc(0)] * (order - 1))

    def _lift(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet([other] + [0] * self.order)

    def __add__(self, other):
        o = self._lift(other)
        return Jet([a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Jet([-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet([a * other for a in self.c])
        n = min(self.order, other.order)
        return Jet(
            [sum(self.c[i] * other.c[k - i] for i in range(k + 1)) for k in range(n + 1)]
        )

    __rmul__ = __mul__

    def inverse(self) -> "Jet":
        a = self.c
        out = [1 / a[0]]
        for k in range(1, len(a)):
            out.append(-sum(a[j] * out[k - j] for j in range(1, k + 1)) / a[0])
        return Jet(out)

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet([a / other for a in self.c])
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        out = self._lift(1)
        for _ in range(k):
            out = out * self
        return out

    def __getitem__(self, k):
        return self.c[k]

    def derivative(self, k: int = 1):
        """``d^k f / dx^k`` at the expansion point."""
        return self.c[k] * math.factorial(k)


def elliptic_jet(u, order: int) -> tuple[Jet, Jet]:
    """Principal-branch jets of ``Khat = 2K/pi`` and ``Ehat = 2E/pi`` at ``u``.

    Uses ``dK/du = (E - (1-u)K)/(2u(1-u))`` and ``dE/du = (E - K)/(2u)``.
    """
    if order == 0:
        K, E = elliptic_eval(u)
        scale = 2 / mpmath.pi
        return Jet([K * scale]), Jet([E * scale])
    K, E = elliptic_jet(u, order - 1)
    U = Jet.variable(u, order - 1)
    dK = (E - (1 - U) * K) / (2 * U * (1 - U))
    dE = (E - K) / (2 * U)
    return (
        Jet([K[0]] + [dK[k] / (k + 1) for k in range(order)]),
        Jet([E[0]] + [dE[k] / (k + 1) for k in range(order)]),
    )


# -- analytic continuation of K and E ------------------------------------------------


def elliptic_taylor(u0, K0, E0, terms: int) -> tuple[list, list]:
    """Taylor coefficients of ``(Khat, Ehat)`` at ``u0`` from values there.

    Both functions solve the first-order system quoted in :func:`elliptic_jet`,
    whose only finite singular points are ``u = 0`` and ``u = 1``, so the
    coefficients follow from a three-term recurrence for any starting values.
    """
    u0 = mpmath.mpc(u0)
    a0 = 2 * u0 * (1 - u0)
    a1 = 2 * (1 - 2 * u0)
    Kc, Ec = [mpmath.mpc(K0)], [mpmath.mpc(E0)]
    for n in range(terms):
        k_prev = Kc[n - 1] if n else 0
        Kc.append(
            (Ec[n] - (1 - u0) * Kc[n] - a1 * n * Kc[n] + (2 * n - 1) * k_prev) / (a0 * (n + 1))
        )
        Ec.append((Ec[n] - Kc[n] - 2 * n * Ec[n]) / (2 * u0 * (n + 1)))
    return Kc, Ec


def _taylor_jet(coeffs: list, d, order: int) -> Jet:
    """Re-expand ``sum c_n (x - x0)^n`` around ``x0 + d`` through ``order``."""
    c = list(coeffs)
    out = []
    for _ in range(order + 1):
        # synthetic division by (x - (x0 + d)): remainder is the next coefficient
        acc = mpmath.mpc(0)
        quot = [None] * (len(c) - 1)
        for n in range(len(c) - 1, -1, -1):
            acc = acc * d + c[n]
            if n:
                quot[n - 1] = acc
        out.append(acc)
        # quot holds coefficients of (f(x) - f(x0+d)) / (x - x0 - d) in powers of x - x0
        c = quot
        if not c:
            break
    return Jet(out + [mpmath.mpc(0)] * (order + 1 - len(out)))


class EllipticBranch:
    """``(Khat, Ehat)`` on an arbitrary sheet, continued along a path in ``u``.

    Holds a Taylor expansion around a base point; moving the base point in
    small steps carries the functions across the principal cut ``[1, inf)``.
    """

    REACH = 0.3  # fraction of the distance to {0, 1} covered by one expansion

    def __init__(self, u0, K0, E0):
        self.u0 = mpmath.mpc(u0)
        self.radius = min(abs(self.u0), abs(1 - self.u0))
        if self.radius == 0:
            raise NumericError("cannot expand K, E at u = 0 or u = 1")
        digits = mpmath.mp.dps + 5
        self.terms = int(digits * math.log(10) / -math.log(self.REACH)) + 5
        self.Kc, self.Ec = elliptic_taylor(self.u0, K0, E0, self.terms)

    @classmethod
    def principal(cls, u) -> "EllipticBranch":
        K, E = elliptic_eval(u)
        scale = 2 / mpmath.pi
        return cls(u, K * scale, E * scale)

    def covers(self, u) -> bool:
        return abs(mpmath.mpc(u) - self.u0) <= self.REACH * self.radius

    def jets(self, u, order: int) -> tuple[Jet, Jet]:
        d = mpmath.mpc(u) - self.u0
        if abs(d) > self.REACH * self.radius * 1.5:
            raise NumericError(f"u = {u} is outside the expansion disc around {self.u0}")
        return _taylor_jet(self.Kc, d, order), _taylor_jet(self.Ec, d, order)

    def values(self, u) -> tuple[mpmath.mpc, mpmath.mpc]:
        K, E = self.jets(u, 0)
        return K[0], E[0]

    def walk(self, u, max_steps: int = 100000) -> "EllipticBranch":
        """Continue along the straight segment to ``u``; returns a branch covering it."""
        u = mpmath.mpc(u)
        b = self
        for _ in range(max_steps):
            d = u - b.u0
            if abs(d) <= 0.5 * self.REACH * b.radius:
                return b
            step = d if abs(d) <= self.REACH * b.radius else d * (self.REACH * b.radius / abs(d))
            K, E = b.values(b.u0 + step)
            b = EllipticBranch(b.u0 + step, K, E)
        raise NumericError(f"continuation to u = {u} passes too close to u = 0 or 1")


# -- the model at a point -----------------------------------------------------------


@dataclass(frozen=True)
class ModelJets:
    g0: Jet
    G: Jet
    gamma: Jet


def model_jets(u, order: int = 0, branch: EllipticBranch | None = None) -> ModelJets:
    """Coupling, two-point function and rescaled four-point function at ``u``.

    Without ``branch`` the principal values of ``K`` and ``E`` are used.
    """
    if branch is None:
        K, E = elliptic_jet(u, order)
    else:
        K, E = branch.jets(u, order)
    U = Jet.variable(u, order)
    g0 = -(K * ((2 - U) * K - 2 * E)) / 32
    X = K * K * K * ((8 - 8 * U + 3 * U * U) * K + 4 * (U - 2) * E)
    G = X / (1536 * g0 * g0) + 1 / (4 * g0) - 2
    gamma = 1 + (1 - G) / (2 * g0 * G * G)
    return ModelJets(g0, G, gamma)


def renorm_R(gamma, g):
    return -1 + mpmath.mpf(3) / 2 / ((1 + g) * (1 - gamma)) + mpmath.mpf(1) / 2 / ((1 - g) * (1 + gamma))


def renorm_R_g(gamma, g):
    """Partial derivative of :func:`renorm_R` in ``g`` at fixed ``gamma``."""
    return -mpmath.mpf(3) / 2 / ((1 + g) ** 2 * (1 - gamma)) + mpmath.mpf(1) / 2 / ((1 - g) ** 2 * (1 + gamma))


def residual_jets(u, g, order: int, branch: EllipticBranch | None = None) -> tuple[Jet, Jet]:
    """``F = g0 G^2 - g R(Gamma, g)`` and ``dF/dg`` as jets in ``u``."""
    m = model_jets(u, order, branch)
    F = m.g0 * m.G * m.G - g * renorm_R(m.gamma, g)
    Fg = -renorm_R(m.gamma, g) - g * renorm_R_g(m.gamma, g)
    return F, Fg


# -- root finding ----------------------------------------------------------------


def _tolerance():
    return mpmath.mpf(10) ** (-(mpmath.mp.dps - 10))


def solve_u(g, u0, branch: EllipticBranch | None = None, max_iter: int = 60):
    """Newton in ``u`` for ``F(u, g) = 0`` at fixed ``g``.

    With a ``branch`` every step is continued analytically and the pair
    ``(u, branch)`` is returned; without one the principal sheet is used
    and only ``u`` is returned.
    """
    tol = _tolerance()
    u = mpmath.mpc(u0)
    b = branch.walk(u) if branch is not None else None
    for _ in range(max_iter):
        F, _ = residual_jets(u, g, 1, b)
        step = F[0] / F[1]
        if b is not None and abs(step) > EllipticBranch.REACH * b.radius:
            raise NumericError(f"Newton step for u left the continuation disc at g={g}")
        u -= step
        if b is not None:
            b = b.walk(u)
        if abs(step) <= tol * max(1, abs(u)):
            return u if branch is None else (u, b)
    raise NumericError(f"Newton for u did not converge from {u0} at g={g}")


def newton_critical(
    u0, g0, branch: EllipticBranch | None = None, max_iter: int = 40, g_bound: float = 2.0
):
    """Solve ``F = 0`` and ``dF/du = 0`` jointly for ``(u, g)``.

    Newton runs in ``w = log u``: away from the origin the functions vary on
    the scale ``|u|``, and the critical points of interest sit at ``|u|``
    of a few tens.  Steps are damped to ``|dw| <= 0.3``.  Returns
    ``(u, g, branch)``.
    """
    tol = _tolerance()
    u, g = mpmath.mpc(u0), mpmath.mpc(g0)
    b = (branch or EllipticBranch.principal(u)).walk(u)
    for _ in range(max_iter):
        F, Fg = residual_jets(u, g, 2, b)
        f_w = u * F[1]
        f_ww = 2 * u * u * F[2] + u * F[1]
        J = mpmath.matrix([[f_w, Fg[0]], [f_ww, u * Fg[1]]])
        dw, dg = mpmath.lu_solve(J, mpmath.matrix([F[0], f_w]))
        if abs(dw) > 0.3:
            scale = mpmath.mpf(0.3) / abs(dw)
            dw, dg = dw * scale, dg * scale
        u *= mpmath.exp(-dw)
        g -= dg
        if not (mpmath.isfinite(u.real) and mpmath.isfinite(g.real)) or abs(g) > g_bound:
            break
        b = b.walk(u)
        if abs(dw) + abs(dg) <= tol:
            return u, g, b
    raise NumericError(f"critical-point Newton diverged from u={u0}, g={g0}")


# -- continuation from g = 0 ----------------------------------------------------------


@dataclass
class PathPoint:
    g: mpmath.mpc
    u: mpmath.mpc
    branch: EllipticBranch

    @property
    def gamma(self) -> mpmath.mpc:
        return model_jets(self.u, 0, self.branch).gamma[0]


def _series_u_seed(sol: Nm2Solution, g, terms: int = 12):
    """Partial sum of ``u(y)``, ``y = 16 i sqrt(g)``; reliable for ``|g|`` below 0.02."""
    y = 16j * mpmath.sqrt(mpmath.mpc(g))
    coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in sol.u_of_y.coeffs[: terms + 1]]
    return mpmath.polyval(coeffs[::-1], y)


START_RADIUS = 0.01


def start_point(sol: Nm2Solution, direction) -> PathPoint:
    """Physical root at ``|g| = START_RADIUS`` in the given direction."""
    direction = mpmath.mpc(direction)
    g = direction / abs(direction) * START_RADIUS
    u = solve_u(g, _series_u_seed(sol, g))
    return PathPoint(g, u, EllipticBranch.principal(u))


def track(point: PathPoint, g_target, min_step: float = 1e-12) -> PathPoint:
    """Continue the root ``u(g)`` along the straight segment to ``g_target``."""
    g_target = mpmath.mpc(g_target)
    g_start = point.g
    tau, step = mpmath.mpf(0), mpmath.mpf("0.02")
    cur, prev = point, None
    while tau < 1:
        h = min(step, 1 - tau)
        g_new = g_start + (g_target - g_start) * (tau + h)
        if prev is None:
            guess = cur.u
        else:
            # linear predictor in tau
            guess = cur.u + (cur.u - prev[1]) * (h / prev[0])
        try:
            u, b = solve_u(g_new, guess, cur.branch.walk(guess), max_iter=12)
            if abs(u - guess) > EllipticBranch.REACH * cur.branch.radius:
                raise NumericError("corrector jumped")
        except (NumericError, ZeroDivisionError):
            step = h / 4
            if step < min_step:
                raise NumericError(f"continuation stalled at g = {mpmath.nstr(g_new, 8)}")
            prev = None
            continue
        prev = (h, cur.u)
        cur = PathPoint(g_new, u, b)
        tau += h
        step = min(h * 2, mpmath.mpf("0.05"))
    return cur


def gamma_at(u, branch: EllipticBranch | None = None) -> mpmath.mpc:
    return model_jets(u, 0, branch).gamma[0]


# -- singularities -----------------------------------------------------------------


@dataclass
class Singularity:
    g_c: mpmath.mpc
    u_c: mpmath.mpc
    gamma_c: mpmath.mpc
    amplitude: mpmath.mpc  # C in Gamma ~ Gamma_c + C (1 - g/g_c)^(1/2)
    cst: mpmath.mpc  # gamma_p ~ Re(cst p^(-3/2) g_c^(-p)), conjugate pair summed
    exponent: float | None = None
    dps: int = DEFAULT_DPS

    def __repr__(self):
        return (
            f"Singularity(g_c={mpmath.nstr(self.g_c, 12)}, u_c={mpmath.nstr(self.u_c, 12)}, "
            f"cst={mpmath.nstr(self.cst, 8)}, exponent={self.exponent})"
        )

    def conjugate(self) -> "Singularity":
        c = mpmath.conj
        return Singularity(
            c(self.g_c), c(self.u_c), c(self.gamma_c), c(self.amplitude), c(self.cst),
            self.exponent, self.dps,
        )


def _local_data(u_c, g_c, branch):
    """``Gamma_u`` and ``g_uu`` at a critical point, where ``g_u = 0``."""
    F, Fg = residual_jets(u_c, g_c, 2, branch)
    g_uu = -2 * F[2] / Fg[0]
    gam = model_jets(u_c, 1, branch).gamma
    return gam[1], g_uu


def local_exponent(u_c, g_c, branch, deltas=(1e-6, 1e-10)) -> float:
    """Slope of ``log|Gamma - Gamma_c|`` against ``log|g - g_c|`` near ``g_c``."""
    gam_c = gamma_at(u_c, branch)
    _, g_uu = _local_data(u_c, g_c, branch)
    pts = []
    for d in deltas:
        g = g_c * (1 - mpmath.mpf(d))
        u0 = u_c + mpmath.sqrt(2 * (g - g_c) / g_uu)
        u, b = solve_u(g, u0, branch)
        pts.append((mpmath.log(abs(g - g_c)), mpmath.log(abs(gamma_at(u, b) - gam_c))))
    (x0, y0), (x1, y1) = pts
    return float((y1 - y0) / (x1 - x0))


def characterize(sol: Nm2Solution, u_c, g_c, branch, delta: float = 1e-6) -> Singularity:
    """Check that ``g_c`` is reached from ``g = 0`` and fix the amplitude sign.

    The root is continued along the ray from the origin to ``g_c (1 - delta)``;
    it must land next to ``u_c`` on the same sheet.  The sign of the
    square-root amplitude is the one matching the continued value.
    """
    gam_c = gamma_at(u_c, branch)
    gam_u, g_uu = _local_data(u_c, g_c, branch)
    C = gam_u * mpmath.sqrt(-2 * g_c / g_uu)
    g = g_c * (1 - mpmath.mpf(delta))
    end = track(track(start_point(sol, g_c), g_c * (1 - 100 * mpmath.mpf(delta))), g)
    expected = mpmath.sqrt(2 * (g - g_c) / g_uu)
    if abs(end.u - u_c) > 10 * abs(expected):
        raise NumericError("continuation from g = 0 does not reach this critical point")
    K_here, _ = end.branch.values(u_c)
    K_crit, _ = branch.values(u_c)
    if abs(K_here - K_crit) > mpmath.mpf(10) ** (-(mpmath.mp.dps // 2)) * abs(K_crit):
        raise NumericError("critical point lies on another sheet of K")
    root = mpmath.sqrt(1 - g / g_c)
    actual = end.gamma
    if abs(actual - (gam_c - C * root)) < abs(actual - (gam_c + C * root)):
        C = -C
    cst = -C / mpmath.sqrt(mpmath.pi)
    return Singularity(g_c, u_c, gam_c, C, cst)


def seed_grid(radii=(0.1, 0.2, 0.3, 0.4, 0.5), angles: int = 8) -> list[mpmath.mpc]:
    """Points of the annulus ``0.1 <= |g| <= 0.5`` in the upper half plane.

    ``Gamma`` has real coefficients, so critical points come in conjugate
    pairs and the lower half plane adds nothing.
    """
    out = []
    for k in range(angles):
        phase = mpmath.expjpi(mpmath.mpf(2 * k + 1) / (2 * angles))
        for r in radii:
            out.append(mpmath.mpf(r) * phase)
    return out


@dataclass
class SearchResult:
    pair: tuple[Singularity, Singularity]
    candidates: list[tuple[mpmath.mpc, mpmath.mpc]] = field(default_factory=list)
    tried: int = 0


def _seed_rays(seeds: list) -> dict:
    rays: dict = {}
    for g in seeds:
        g = mpmath.mpc(g)
        key = round(float(mpmath.arg(g)), 12)
        rays.setdefault(key, []).append(g)
    return {k: sorted(v, key=abs) for k, v in rays.items()}


def _search_ray(sol: Nm2Solution, points: list, g_bound: float = 2.0) -> list:
    """Track outward along one ray and launch critical-point Newton at each seed."""
    out = []
    try:
        cur = start_point(sol, points[0])
    except NumericError:
        return out
    for g_seed in points:
        try:
            cur = track(cur, g_seed)
        except NumericError:
            break  # the ray runs into a singularity; further seeds are unreachable
        try:
            u_c, g_c, b = newton_critical(cur.u, cur.g, cur.branch, g_bound=g_bound)
        except (NumericError, ZeroDivisionError, ValueError):
            continue
        out.append((g_c, u_c, b))
    return out


def find_singularities(
    dps: int = DEFAULT_DPS,
    seeds: Iterable | None = None,
    sol: Nm2Solution | None = None,
    box: float = 0.6,
    threads: int = 1,
) -> SearchResult:
    """Smallest-``|g|`` conjugate pair of critical points ``dg/du = 0``.

    Seeds in the ``g`` annulus are mapped to the ``u`` plane by continuing
    the physical root outward along rays from the origin; each is refined
    by Newton on ``F = dF/du = 0``.  Candidates are merged deterministically
    (sorted by ``|g_c|``, deduplicated) and the first one that is reached by
    continuation from ``g = 0`` is returned with its conjugate.
    """
    with mpmath.workdps(dps):
        sol = sol or solve_renorm_nm2(12)
        seeds = list(seeds) if seeds is not None else seed_grid()
        rays = list(_seed_rays(seeds).values())
        if threads > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(threads) as pool:
                results = list(pool.map(lambda pts: _search_ray(sol, pts, 2 * box), rays))
        else:
            results = [_search_ray(sol, pts, 2 * box) for pts in rays]
        found: list = []
        for g_c, u_c, b in (c for r in results for c in r):
            if mpmath.im(g_c) < 0:
                g_c, u_c = mpmath.conj(g_c), mpmath.conj(u_c)
                b = None  # rebuilt from the conjugate below if needed
            if abs(g_c) > box or abs(g_c) < mpmath.mpf(10) ** -6:
                continue
            if any(abs(g_c - h) < mpmath.mpf(10) ** (-(dps // 2)) for h, _, _ in found):
                continue
            found.append((g_c, u_c, b))
        if not found:
            shown = ", ".join(mpmath.nstr(x, 4) for x in seeds)
            raise NumericError(f"Newton diverged from all {len(seeds)} seeds: {shown}")
        found.sort(key=lambda c: (abs(c[0]), float(mpmath.arg(c[0]))))
        for g_c, u_c, b in found:
            if b is None:
                continue
            try:
                first = characterize(sol, u_c, g_c, b)
            except (NumericError, ZeroDivisionError):
                continue  # not on the principal sheet
            first.exponent = local_exponent(u_c, g_c, b)
            first.dps = dps
            pair = (first, first.conjugate())
            return SearchResult(pair, [(g, u) for g, u, _ in found], len(seeds))
        raise NumericError("no critical point is visible from g = 0")


# -- asymptotics -----------------------------------------------------------------


@dataclass
class AsymptoticReport:
    p: list[int]
    actual: list[int]
    predicted: list[float]
    relative_error: list[float]  # |actual - predicted| / |actual|
    envelope_error: list[float]  # |actual - predicted| / (|cst| p^(-3/2) |g_c|^(-p))
    sign_match: bool
    growth_rate: float

    def at(self, p: int) -> tuple[float, float]:
        i = self.p.index(p)
        return self.relative_error[i], self.envelope_error[i]


def predicted_coefficient(s: Singularity, p: int) -> mpmath.mpf:
    return mpmath.re(s.cst * mpmath.mpf(p) ** mpmath.mpf(-1.5) * s.g_c ** (-p))


def envelope(s: Singularity, p: int) -> mpmath.mpf:
    return abs(s.cst) * mpmath.mpf(p) ** mpmath.mpf(-1.5) * abs(s.g_c) ** (-p)


def asymptotic_check(
    coeffs: Sequence[int], singularity: Singularity, window: Iterable[int] | None = None
) -> AsymptoticReport:
    """Compare ``gamma_p`` with the leading singular behaviour.

    The prediction oscillates through zero, so next to a zero of the cosine
    the plain relative error is large however good the fit; the error is
    therefore also reported relative to the envelope.  Signs are compared
    wherever the prediction is at least half its envelope.
    """
    P = len(coeffs)
    window = list(window) if window is not None else list(range(max(1, P - 3), P + 1))
    with mpmath.workdps(max(30, singularity.dps)):
        pred = [predicted_coefficient(singularity, p) for p in window]
        act = [coeffs[p - 1] for p in window]
        rel = [float(abs(x - y) / abs(y)) for x, y in zip(pred, act)]
        env = [float(abs(x - y) / envelope(singularity, p)) for p, x, y in zip(window, pred, act)]
        signs = True
        for p in range(1, P + 1):
            pr = predicted_coefficient(singularity, p)
            if abs(pr) >= envelope(singularity, p) / 2 and (pr > 0) != (coeffs[p - 1] > 0):
                signs = False
    return AsymptoticReport(
        window, act, [float(x) for x in pred], rel, env, signs, float(1 / abs(singularity.g_c))
    )
