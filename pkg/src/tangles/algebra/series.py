"""Truncated univariate power series over an exact coefficient ring.

A :class:`Series` stores ``c_0 .. c_T`` together with the inclusive
truncation order ``T``.  Binary operations truncate to the smaller of the
two orders.  Coefficients may be ``Fraction``, :class:`GaussianRational`
or :class:`ColorPoly`; nothing here ever touches floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .rings import ColorPoly, GaussianRational


class SeriesError(ArithmeticError):
    """Raised when a series operation has no valid result."""


def _coerce(c):
    return Fraction(c) if isinstance(c, int) else c


def _is_zero(c) -> bool:
    return c == 0


class Series:
    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable = (), order: int | None = None):
        c = [_coerce(x) for x in coeffs]
        if order is None:
            order = len(c) - 1
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        if len(c) > order + 1:
            c = c[: order + 1]
        else:
            c.extend([Fraction(0)] * (order + 1 - len(c)))
        self.coeffs = tuple(c)
        self.order = order

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c, order: int) -> "Series":
        return cls([c], order)

    @classmethod
    def variable(cls, order: int, coeff=1) -> "Series":
        """The series ``coeff * x`` truncated at ``order``."""
        return cls([0, coeff], order)

    @classmethod
    def from_function(cls, fn: Callable[[int], object], order: int) -> "Series":
        return cls((fn(k) for k in range(order + 1)), order)

    # -- basic access -----------------------------------------------------
    def __getitem__(self, k: int):
        if k < 0:
            return Fraction(0)
        if k > self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise SeriesError(f"cannot extend order {self.order} to {order}")
        return Series(self.coeffs[: order + 1], order)

    def valuation(self) -> int:
        """Index of the first nonzero coefficient, or ``order + 1``."""
        for k, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return k
        return self.order + 1

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coeffs)

    def map(self, fn: Callable) -> "Series":
        return Series((fn(c) for c in self.coeffs), self.order)

    # -- ring operations --------------------------------------------------
    def _binary_order(self, other: "Series") -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        if not isinstance(other, Series):
            return Series((self.coeffs[0] + other,) + self.coeffs[1:], self.order)
        T = self._binary_order(other)
        return Series((self.coeffs[k] + other.coeffs[k] for k in range(T + 1)), T)

    __radd__ = __add__

    def __neg__(self):
        return Series((-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        if not isinstance(other, Series):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series):
            return Series((c * other for c in self.coeffs), self.order)
        T = self._binary_order(other)
        a, b = self.coeffs, other.coeffs
        out = [0] * (T + 1)
        na = [k for k in range(T + 1) if not _is_zero(a[k])]
        nb = [k for k in range(T + 1) if not _is_zero(b[k])]
        for i in na:
            ai = a[i]
            for j in nb:
                if i + j > T:
                    break
                out[i + j] += ai * b[j]
        return Series(out, T)

    __rmul__ = __mul__

    def inverse(self) -> "Series":
        c0 = self.coeffs[0]
        if _is_zero(c0):
            raise SeriesError("series with zero constant term is not invertible")
        inv0 = 1 / c0
        T = self.order
        a = self.coeffs
        out = [inv0]
        for k in range(1, T + 1):
            acc = 0
            for j in range(1, k + 1):
                if not _is_zero(a[j]):
                    acc += a[j] * out[k - j]
            out.append(-acc * inv0)
        return Series(out, T)

    def __truediv__(self, other):
        if not isinstance(other, Series):
            if _is_zero(other):
                raise ZeroDivisionError("division of a series by zero")
            return Series((c / other for c in self.coeffs), self.order)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = Series.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Series):
            if self.order != other.order:
                return False
            return all(x == y for x, y in zip(self.coeffs, other.coeffs))
        # a scalar compares as a constant series (lets series nest as coefficients)
        return self.coeffs[0] == other and all(_is_zero(c) for c in self.coeffs[1:])

    def __hash__(self):
        return hash((self.coeffs, self.order))

    # -- calculus & shifts ------------------------------------------------
    def derivative(self) -> "Series":
        if self.order == 0:
            return Series([0], 0)
        return Series(
            (k * self.coeffs[k] for k in range(1, self.order + 1)), self.order - 1
        )

    def integral(self) -> "Series":
        """Antiderivative with zero constant term (order grows by one)."""
        return Series(
            [0] + [self.coeffs[k] / (k + 1) for k in range(self.order + 1)],
            self.order + 1,
        )

    def shift(self, k: int) -> "Series":
        """Multiply by ``x**k`` (``k >= 0``) or divide by ``x**-k``.

        Division requires the low coefficients to vanish exactly.
        """
        if k >= 0:
            return Series([0] * k + list(self.coeffs), self.order + k)
        k = -k
        if any(not _is_zero(c) for c in self.coeffs[:k]):
            raise SeriesError(f"cannot divide by x^{k}: low coefficients nonzero")
        if self.order < k:
            raise SeriesError("not enough terms to divide")
        return Series(self.coeffs[k:], self.order - k)

    def scale(self, lam) -> "Series":
        """``f(lam * x)``."""
        out = []
        p = 1
        for c in self.coeffs:
            out.append(c * p)
            p = p * lam
        return Series(out, self.order)

    def __call__(self, inner: "Series") -> "Series":
        return compose(self, inner)

    def __repr__(self):
        return f"Series({[str(c) for c in self.coeffs]}, order={self.order})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            terms.append(f"{c}" if not mono else f"({c})*{mono}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(x^{self.order + 1})"


# ---------------------------------------------------------------------------
# Free-function API
# ---------------------------------------------------------------------------


def series_arith(a: Series, b: Series, op: str) -> Series:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def compose(f: Series, g: Series) -> Series:
    """``f(g(x))``; ``g`` must have zero constant term."""
    if not _is_zero(g.coeffs[0]):
        raise SeriesError("inner series must have zero constant term")
    v = g.valuation()
    if v > g.order:
        return Series([f.coeffs[0]], g.order)
    T = min(g.order, (f.order + 1) * v - 1)
    gt = g.truncate(T)
    # Horner from the top coefficient that can still contribute.
    top = min(f.order, T // v)
    out = Series([f.coeffs[top]], T)
    for k in range(top - 1, -1, -1):
        out = out * gt + f.coeffs[k]
    return out


series_compose = compose


def revert(f: Series) -> Series:
    """Compositional inverse via Lagrange inversion.

    ``[x^m] g = (1/m) [w^{m-1}] (w / f(w))^m``.
    """
    if not _is_zero(f.coeffs[0]):
        raise SeriesError("reversion needs f(0) = 0")
    if f.order < 1 or _is_zero(f.coeffs[1]):
        raise SeriesError("reversion needs an invertible linear coefficient")
    T = f.order
    phi = f.shift(-1).inverse()  # w / f(w), order T-1
    out = [0] * (T + 1)
    power = Series.constant(1, T - 1)
    for m in range(1, T + 1):
        power = power * phi
        out[m] = power.coeffs[m - 1] / m
    return Series(out, T)


series_revert = revert


def _rational_sqrt(c):
    if isinstance(c, Fraction):
        if c < 0:
            raise SeriesError(f"no real rational square root of {c}")
        p, q = math.isqrt(c.numerator), math.isqrt(c.denominator)
        if p * p != c.numerator or q * q != c.denominator:
            raise SeriesError(f"{c} is not the square of a rational")
        return Fraction(p, q)
    if isinstance(c, GaussianRational) and c.is_real() and c.re >= 0:
        return GaussianRational(_rational_sqrt(c.re))
    if isinstance(c, ColorPoly) and c.is_constant():
        return ColorPoly((_rational_sqrt(c.constant()),))
    if c == 1:
        return c
    raise SeriesError(f"no exact square root available for {c}")


def sqrt(f: Series) -> Series:
    """Principal square root; the constant term must be a rational square."""
    r0 = _rational_sqrt(f.coeffs[0])
    if _is_zero(r0):
        raise SeriesError("square root of a series with zero constant term")
    inv = 1 / (2 * r0)
    T = f.order
    r = [r0]
    for k in range(1, T + 1):
        acc = f.coeffs[k]
        for j in range(1, k):
            acc = acc - r[j] * r[k - j]
        r.append(acc * inv)
    return Series(r, T)


series_sqrt = sqrt


# ---------------------------------------------------------------------------
# Polynomial equations with series coefficients
# ---------------------------------------------------------------------------

BivariatePoly = Mapping[tuple, object]


def _poly_in_A(P: BivariatePoly, order: int) -> list[Series]:
    """Split ``P(A, g)`` into series coefficients of each ``A**i``."""
    deg = max(i for i, _ in P)
    rows = [[0] * (order + 1) for _ in range(deg + 1)]
    for (i, j), c in P.items():
        if j <= order:
            rows[i][j] += c
    return [Series(r, order) for r in rows]


def _horner(coeffs: Sequence[Series], x: Series) -> Series:
    out = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        out = out * x + c
    return out


def eval_poly(P: BivariatePoly, A: Series) -> Series:
    """``P(A(g), g)`` through the order of ``A``."""
    return _horner(_poly_in_A(P, A.order), A)


def newton_lift(P: BivariatePoly, a0, T: int) -> Series:
    """Lift the simple root ``a0`` of ``P(A, 0)`` to a series ``A(g)``.

    ``P`` maps ``(i, j)`` to the coefficient of ``A**i g**j``.  Newton's
    iteration doubles the number of correct terms each step.
    """
    rows = _poly_in_A(P, T)
    drows = [r * i for i, r in enumerate(rows)][1:] or [Series([0], T)]
    base = _horner([r.truncate(0) for r in rows], Series([a0], 0))
    if not base.is_zero():
        raise SeriesError(f"{a0} is not a root of P(A, 0)")
    slope = _horner([r.truncate(0) for r in drows], Series([a0], 0)).coeffs[0]
    if _is_zero(slope):
        raise SeriesError(f"degenerate root: dP/dA vanishes at A={a0}, g=0")
    A = Series([a0], 0)
    m = 0
    while m < T:
        m = min(2 * m + 1, T)
        A = Series(A.coeffs, m)
        res = _horner([r.truncate(m) for r in rows], A)
        der = _horner([r.truncate(m) for r in drows], A)
        A = A - res / der
    residual = _horner(rows, A)
    if not residual.is_zero():
        raise SeriesError("Newton lift failed to annihilate the residual")
    return A
