"""Exact coefficient rings used by the series code.

Rationals are plain :class:`fractions.Fraction`.  Two extra rings are
provided here:

* :class:`GaussianRational` -- ``re + i*im`` with rational parts;
* :class:`ColorPoly` -- polynomials in the color variable ``n`` whose
  coefficients are rationals or Gaussian rationals.

Both accept ``int`` and ``Fraction`` operands on either side, so the
generic series code can start its sums at the integer ``0``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def _is_scalar(x) -> bool:
    return isinstance(x, Rational)


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re: Scalar = 0, im: Scalar = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if _is_scalar(x):
            return cls(x, 0)
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return NotImplemented

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if _is_scalar(other):
            return GaussianRational(self.re * other, self.im * other)
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return GaussianRational(self.re / other, self.im / other)
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return o
        d = o.norm()
        if d == 0:
            raise ZeroDivisionError("division by zero")
        num = self * o.conjugate()
        return GaussianRational(num.re / d, num.im / d)

    def __rtruediv__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return 1 / (self**-k)
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"


I = GaussianRational(0, 1)


def _trim(coeffs: Sequence) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class ColorPoly:
    """Polynomial in ``n``; ``coeffs[k]`` multiplies ``n**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim(
            c if isinstance(c, GaussianRational) else Fraction(c) for c in coeffs
        )

    @classmethod
    def n(cls) -> "ColorPoly":
        return cls((0, 1))

    @classmethod
    def coerce(cls, x) -> "ColorPoly":
        if isinstance(x, ColorPoly):
            return x
        if _is_scalar(x) or isinstance(x, GaussianRational):
            return cls((x,))
        return NotImplemented

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant(self):
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __call__(self, n):
        """Evaluate at ``n`` (Horner)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc if self.coeffs else Fraction(0)

    def map(self, fn) -> "ColorPoly":
        return ColorPoly(fn(c) for c in self.coeffs)

    def __add__(self, other):
        o = ColorPoly.coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return ColorPoly(
            [x + b[i] for i, x in enumerate(a[: len(b)])] + list(a[len(b):])
        )

    __radd__ = __add__

    def __neg__(self):
        return ColorPoly(-c for c in self.coeffs)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = ColorPoly.coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = ColorPoly.coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if _is_scalar(other) or isinstance(other, GaussianRational):
            if other == 0:
                return ColorPoly()
            return ColorPoly(c * other for c in self.coeffs)
        o = ColorPoly.coerce(other)
        if o is NotImplemented:
            return o
        if not self.coeffs or not o.coeffs:
            return ColorPoly()
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(o.coeffs):
                out[i + j] += x * y
        return ColorPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = ColorPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def divmod_poly(self, other: "ColorPoly"):
        other = ColorPoly.coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return ColorPoly(), self
        quot = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            quot[k] = c
            if c != 0:
                for j, y in enumerate(other.coeffs):
                    rem[k + j] -= c * y
        return ColorPoly(quot), ColorPoly(rem)

    def exact_div(self, other) -> "ColorPoly":
        q, r = self.divmod_poly(other)
        if r.coeffs:
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return q

    def __truediv__(self, other):
        if _is_scalar(other) or isinstance(other, GaussianRational):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return ColorPoly(c / other for c in self.coeffs)
        o = ColorPoly.coerce(other)
        if o is NotImplemented:
            return o
        if o.is_constant():
            return self / o.constant()
        return self.exact_div(o)

    def __rtruediv__(self, other):
        o = ColorPoly.coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __eq__(self, other):
        o = ColorPoly.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.constant())
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"ColorPoly({list(map(str, self.coeffs))})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("n" if k == 1 else f"n^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def specialize(x, n):
    """Evaluate ``x`` at color value ``n`` if it is a :class:`ColorPoly`."""
    if isinstance(x, ColorPoly):
        return x(n)
    return x
