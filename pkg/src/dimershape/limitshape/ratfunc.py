"""Exact polynomials and rational functions over the rationals.

Coefficients are stored lowest degree first. These are used to clear
denominators symbolically before handing a polynomial to a float root
finder, and to compare known closed forms coefficient by coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from numpy.polynomial import Polynomial


def _trim(c: Sequence[Fraction]) -> tuple[Fraction, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Poly:
    coef: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coef", _trim(Fraction(v) for v in self.coef))

    @classmethod
    def const(cls, v) -> "Poly":
        return cls((Fraction(v),))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        p = cls.const(1)
        for r in roots:
            p = p * cls((-Fraction(r), Fraction(1)))
        return p

    @property
    def degree(self) -> int:
        return len(self.coef) - 1

    def __bool__(self):
        return bool(self.coef)

    def _lift(self, other) -> "Poly":
        return other if isinstance(other, Poly) else Poly.const(other)

    def __add__(self, other):
        o = self._lift(other)
        k = max(len(self.coef), len(o.coef))
        a = self.coef + (Fraction(0),) * (k - len(self.coef))
        b = o.coef + (Fraction(0),) * (k - len(o.coef))
        return Poly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-v for v in self.coef))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if not self.coef or not o.coef:
            return Poly(())
        out = [Fraction(0)] * (len(self.coef) + len(o.coef) - 1)
        for i, a in enumerate(self.coef):
            if a:
                for j, b in enumerate(o.coef):
                    out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __call__(self, t):
        acc = 0
        for v in reversed(self.coef):
            acc = acc * t + v
        return acc

    def deriv(self) -> "Poly":
        return Poly(tuple(i * v for i, v in enumerate(self.coef))[1:])

    def monic(self) -> "Poly":
        return Poly(tuple(v / self.coef[-1] for v in self.coef))

    def to_numpy(self) -> Polynomial:
        return Polynomial([float(v) for v in self.coef] or [0.0])


def prod(polys: Iterable[Poly]) -> Poly:
    out = Poly.const(1)
    for p in polys:
        out = out * p
    return out


@dataclass(frozen=True)
class RationalFunction:
    num: Poly
    den: Poly

    @classmethod
    def const(cls, v) -> "RationalFunction":
        return cls(Poly.const(v), Poly.const(1))

    def __call__(self, t):
        return self.num(t) / self.den(t)

    def _lift(self, other) -> "RationalFunction":
        return other if isinstance(other, RationalFunction) else RationalFunction.const(other)

    def __add__(self, other):
        o = self._lift(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return self + RationalFunction(-o.num, o.den)

    def __mul__(self, other):
        o = self._lift(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("reciprocal of the zero function")
        return RationalFunction(self.den, self.num)

    def same_as(self, other: "RationalFunction") -> bool:
        """Equality as rational functions: cross-multiplied coefficients agree."""
        return (self.num * other.den - other.num * self.den).coef == ()
