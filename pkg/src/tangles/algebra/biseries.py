"""Truncated series in the two quartic couplings ``(h1, h2)``.

Monomials ``h1**j h2**k`` are kept for total degree ``j + k <= order``.
Coefficients are usually :class:`ColorPoly` but any exact ring works.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping

from .rings import ColorPoly, specialize
from .series import Series


class BiSeries:
    __slots__ = ("terms", "order")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None, order: int = 0):
        self.order = order
        self.terms: dict[tuple[int, int], object] = {}
        for (j, k), c in (terms or {}).items():
            if j + k <= order and c != 0:
                self.terms[(j, k)] = Fraction(c) if isinstance(c, int) else c

    @classmethod
    def constant(cls, c, order: int) -> "BiSeries":
        return cls({(0, 0): c}, order)

    @classmethod
    def h1(cls, order: int) -> "BiSeries":
        return cls({(1, 0): 1}, order)

    @classmethod
    def h2(cls, order: int) -> "BiSeries":
        return cls({(0, 1): 1}, order)

    def __getitem__(self, jk: tuple[int, int]):
        j, k = jk
        if j + k > self.order:
            raise IndexError(f"monomial {jk} beyond total order {self.order}")
        return self.terms.get(jk, Fraction(0))

    def items(self):
        return sorted(self.terms.items())

    def truncate(self, order: int) -> "BiSeries":
        if order > self.order:
            raise ValueError("cannot raise the truncation order")
        return BiSeries(self.terms, order)

    def map(self, fn: Callable) -> "BiSeries":
        return BiSeries({jk: fn(c) for jk, c in self.terms.items()}, self.order)

    def specialize(self, n) -> "BiSeries":
        """Evaluate every :class:`ColorPoly` coefficient at ``n``."""
        return self.map(lambda c: specialize(c, n))

    def is_zero(self) -> bool:
        return not self.terms

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, BiSeries):
            other = BiSeries.constant(other, self.order)
        T = min(self.order, other.order)
        out = dict(self.terms)
        for jk, c in other.terms.items():
            out[jk] = out.get(jk, 0) + c
        return BiSeries(out, T)

    __radd__ = __add__

    def __neg__(self):
        return self.map(lambda c: -c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BiSeries):
            return self.map(lambda c: c * other)
        T = min(self.order, other.order)
        out: dict = {}
        for (j1, k1), a in self.terms.items():
            for (j2, k2), b in other.terms.items():
                if j1 + j2 + k1 + k2 <= T:
                    key = (j1 + j2, k1 + k2)
                    out[key] = out.get(key, 0) + a * b
        return BiSeries(out, T)

    __rmul__ = __mul__

    def inverse(self) -> "BiSeries":
        c0 = self[(0, 0)]
        if c0 == 0:
            raise ArithmeticError("BiSeries with zero constant term is not invertible")
        # 1/(c0 (1 + r)) = (1/c0) sum (-r)^m, r has no constant term
        rest = self * (1 / c0) - 1
        out = BiSeries.constant(1, self.order)
        term = BiSeries.constant(1, self.order)
        for _ in range(self.order):
            term = term * (-rest)
            out = out + term
        return out * (1 / c0)

    def __truediv__(self, other):
        if not isinstance(other, BiSeries):
            return self.map(lambda c: c / other)
        return self * other.inverse()

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self.order == other.order and (self - other).is_zero()

    def __hash__(self):
        return hash((tuple(self.items()), self.order))

    # -- calculus ---------------------------------------------------------
    def d_h1(self) -> "BiSeries":
        return BiSeries(
            {(j - 1, k): j * c for (j, k), c in self.terms.items() if j > 0},
            self.order - 1,
        )

    def d_h2(self) -> "BiSeries":
        return BiSeries(
            {(j, k - 1): k * c for (j, k), c in self.terms.items() if k > 0},
            self.order - 1,
        )

    def degree_weighted(self, fn: Callable[[int], object]) -> "BiSeries":
        """Multiply the ``(j, k)`` coefficient by ``fn(j + k)``."""
        return BiSeries(
            {(j, k): c * fn(j + k) for (j, k), c in self.terms.items()}, self.order
        )

    # -- substitution -----------------------------------------------------
    def substitute(self, h1: Series, h2: Series) -> Series:
        """``sum c_jk h1^j h2^k`` with ``h1, h2`` series vanishing at 0."""
        if h1.coeffs[0] != 0 or h2.coeffs[0] != 0:
            raise ArithmeticError("substituted couplings must vanish at zero")
        T = min(h1.order, h2.order)
        p1 = [Series.constant(1, T)]
        p2 = [Series.constant(1, T)]
        for _ in range(self.order):
            p1.append(p1[-1] * h1.truncate(T))
            p2.append(p2[-1] * h2.truncate(T))
        out = Series([0], T)
        for (j, k), c in self.terms.items():
            out = out + p1[j] * p2[k] * c
        v = min(h1.valuation(), h2.valuation())
        return out.truncate(min(T, (self.order + 1) * v - 1)) if v <= T else out

    def along_line(self, a, b) -> Series:
        """Restrict to ``h1 = a*x, h2 = b*x`` as a series in ``x``."""
        out = [0] * (self.order + 1)
        for (j, k), c in self.terms.items():
            out[j + k] += c * (Fraction(a) ** j) * (Fraction(b) ** k)
        return Series(out, self.order)

    def __repr__(self):
        body = ", ".join(f"{jk}: {c}" for jk, c in self.items())
        return f"BiSeries({{{body}}}, order={self.order})"
