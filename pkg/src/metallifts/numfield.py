"""Exact arithmetic in the quadratic field Q(sqrt(d)).

Every coefficient in the library is a ``QuadScalar``: an element
``a + b*sqrt(d)`` with exact rational parts and a shared squarefree
radicand ``d``.  ``d == 0`` marks a pure rational.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from sympy import factorint


class IncompatibleRadicands(ValueError):
    """Two operands live in different quadratic fields."""


def squarefree_split(n: int) -> tuple[int, int]:
    """Return (k, d) with n = k**2 * d and d squarefree."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0, 0
    k, d = 1, 1
    for p, e in factorint(n).items():
        k *= p ** (e // 2)
        if e % 2:
            d *= p
    return k, d


def _normalize(a: Fraction, b: Fraction, d: int) -> tuple[Fraction, Fraction, int]:
    if d < 0:
        raise ValueError("negative radicand")
    k, d0 = squarefree_split(d)
    if d0 == 1:
        # sqrt(d) is the integer k: collapse to a rational.
        a, b, d = a + b * k, Fraction(0), 0
    else:
        b, d = b * k, d0
    if b == 0:
        d = 0
    return a, b, d


@dataclass(frozen=True)
class QuadScalar:
    """a + b*sqrt(d), d squarefree; immutable and hashable."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 0

    def __post_init__(self):
        a, b, d = _normalize(Fraction(self.a), Fraction(self.b), self.d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @classmethod
    def rational(cls, p, q=1) -> QuadScalar:
        return cls(Fraction(p, q))

    @classmethod
    def root(cls, n: int) -> QuadScalar:
        """The exact square root of a nonnegative integer n."""
        return cls(Fraction(0), Fraction(1), n)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _join(self, other: QuadScalar) -> int:
        if self.d == other.d:
            return self.d
        if self.d == 0:
            return other.d
        if other.d == 0:
            return self.d
        raise IncompatibleRadicands(f"sqrt({self.d}) vs sqrt({other.d})")

    @staticmethod
    def _coerce(x) -> QuadScalar:
        if isinstance(x, QuadScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadScalar(Fraction(x))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._join(other)
        return QuadScalar(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._join(other)
        return QuadScalar(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadScalar:
        # (a + b*sqrt(d))^-1 = (a - b*sqrt(d)) / (a^2 - b^2 d); the norm
        # vanishes only at zero since d is squarefree and > 1.
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("inverse of zero quadratic scalar")
        return QuadScalar(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._join(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def to_float(self, radical_value: float | None = None) -> float:
        if radical_value is None:
            radical_value = self.d ** 0.5
        return float(self.a) + float(self.b) * radical_value

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt({self.d})"
        sign, b = ("-", -self.b) if self.b < 0 else ("+", self.b)
        return f"{self.a} {sign} {b}*sqrt({self.d})"

    _TERM = re.compile(
        r"\s*(?P<sign>[+-]?)\s*(?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?"
        r"(?P<rad>sqrt\(\s*(?P<d>\d+)\s*\))?\s*"
    )

    @classmethod
    def parse(cls, text: str) -> QuadScalar:
        """Parse 'a + b*sqrt(d)' with exact rationals 'p/q'."""
        pos, total = 0, cls.rational(0)
        seen = False
        while pos < len(text) and text[pos:].strip():
            m = cls._TERM.match(text, pos)
            if not m or m.end() == pos or (m["coef"] is None and m["rad"] is None):
                raise ValueError(f"bad quadratic scalar at position {pos}: {text!r}")
            coef = Fraction(m["coef"]) if m["coef"] else Fraction(1)
            if m["sign"] == "-":
                coef = -coef
            if m["rad"]:
                total = total + cls(Fraction(0), coef, int(m["d"]))
            else:
                total = total + cls(coef)
            pos, seen = m.end(), True
        if not seen:
            raise ValueError(f"empty quadratic scalar: {text!r}")
        return total


ZERO = QuadScalar.rational(0)
ONE = QuadScalar.rational(1)


@dataclass(frozen=True)
class MetallicParams:
    """The pair (alpha, beta) with its derived exact constants."""

    alpha: int
    beta: int
    discriminant: int
    sigma: QuadScalar
    sqrtD: QuadScalar

    @property
    def radicand(self) -> int:
        return self.sqrtD.d

    def conjugate_root(self) -> QuadScalar:
        """alpha - sigma, the negative root of x^2 - alpha*x - beta."""
        return QuadScalar.rational(self.alpha) - self.sigma


def make_params(alpha: int, beta: int) -> MetallicParams:
    if not (isinstance(alpha, int) and isinstance(beta, int)):
        raise TypeError("alpha, beta must be integers")
    if alpha < 1 or beta < 1:
        raise ValueError("alpha, beta must be positive")
    disc = alpha * alpha + 4 * beta
    sqrt_d = QuadScalar.root(disc)
    sigma = (QuadScalar.rational(alpha) + sqrt_d) / 2
    params = MetallicParams(alpha, beta, disc, sigma, sqrt_d)
    assert sigma * sigma == alpha * sigma + QuadScalar.rational(beta)
    assert sqrt_d * sqrt_d == QuadScalar.rational(disc)
    return params
