"""Exact Gaussian rationals a + b*i with a, b in Q."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

__all__ = ["GaussRational", "I", "ZERO", "ONE", "as_gauss", "to_mpq"]


def to_mpq(x) -> mpq:
    if isinstance(x, mpq):
        return x
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, Rational):
        return mpq(int(x.numerator), int(x.denominator))
    raise TypeError(f"not an exact rational: {x!r}")


class GaussRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = to_mpq(re)
        self.im = to_mpq(im)

    @classmethod
    def _raw(cls, re: mpq, im: mpq) -> "GaussRational":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, GaussRational):
            return GaussRational._raw(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, mpq, Fraction)):
            return GaussRational._raw(self.re + to_mpq(other), self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussRational._raw(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, GaussRational):
            return GaussRational._raw(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, mpq, Fraction)):
            return GaussRational._raw(self.re - to_mpq(other), self.im)
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, GaussRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussRational._raw(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, mpq, Fraction)):
            q = to_mpq(other)
            return GaussRational._raw(self.re * q, self.im * q)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "GaussRational":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussRational._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, GaussRational):
            return self * other.inverse()
        if isinstance(other, (int, mpq, Fraction)):
            q = to_mpq(other)
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return GaussRational._raw(self.re / q, self.im / q)
        return NotImplemented

    def __rtruediv__(self, other):
        return as_gauss(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GaussRational":
        return GaussRational._raw(self.re, -self.im)

    def norm(self) -> mpq:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    # comparisons ------------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, mpq, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    # formatting ---------------------------------------------------------------
    def __repr__(self):
        return f"GaussRational({_qstr(self.re)!r}, {_qstr(self.im)!r})"

    def __str__(self):
        re, im = self.re, self.im
        if im == 0:
            return _qstr(re)
        ims = "i" if im == 1 else "-i" if im == -1 else f"{_qstr(im)}*i"
        if re == 0:
            return ims
        if im > 0:
            return f"{_qstr(re)} + {ims}"
        return f"{_qstr(re)} - {ims[1:]}"

    def to_json(self) -> str:
        """Exact string form "a/b" or "a/b+c/d*i"; never a float."""
        if self.im == 0:
            return _qstr(self.re)
        sign = "+" if self.im > 0 else "-"
        return f"{_qstr(self.re)}{sign}{_qstr(abs(self.im))}*i"

    @classmethod
    def from_json(cls, text: str) -> "GaussRational":
        s = text.replace(" ", "")
        if not s.endswith("*i"):
            return cls(mpq(s.lstrip("+")))
        body = s[:-2]
        # split at the last sign that is not the leading one
        for pos in range(len(body) - 1, 0, -1):
            if body[pos] in "+-":
                return cls(mpq(body[:pos].lstrip("+")), mpq(body[pos:].lstrip("+")))
        return cls(0, mpq(body.lstrip("+")))


def _qstr(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_gauss(x) -> GaussRational:
    if isinstance(x, GaussRational):
        return x
    if isinstance(x, complex):
        raise TypeError("floating complex values are not exact")
    return GaussRational(x)


ZERO = GaussRational(0, 0)
ONE = GaussRational(1, 0)
I = GaussRational(0, 1)  # noqa: E741
