"""Boundary and weight profiles feeding the limit-shape formulas."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..lattice import LatticeSpec, validate_omega
from ..partitions import parse_rational


@dataclass(frozen=True)
class BoundaryProfile:
    """Staircase boundary: unit density on each [alpha_i, b_i].

    ``gamma`` is the fraction of vanishing x weights in a period. The tilded
    endpoints rescale the profile onto the reduced partition.
    """

    alpha: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    gamma: Fraction = Fraction(0)

    def __post_init__(self):
        a, b = self.alpha, self.b
        if len(a) != len(b) or not a:
            raise ValueError("alpha and b must be nonempty and of equal length")
        if a[0] != 0:
            raise ValueError("alpha_1 must be 0")
        seq = [v for pair in zip(a, b) for v in pair]
        if any(seq[i] >= seq[i + 1] for i in range(len(seq) - 1)):
            raise ValueError("need 0 = alpha_1 < b_1 < alpha_2 < ... < b_s")
        if sum(bi - ai for ai, bi in zip(a, b)) != 1:
            raise ValueError("segment lengths must sum to 1")
        if not 0 <= self.gamma < 1:
            raise ValueError("gamma must lie in [0, 1)")
        if self.gamma > b[0]:
            raise ValueError("gamma must not exceed b_1")

    @classmethod
    def make(cls, alpha: Sequence, b: Sequence, gamma=0) -> "BoundaryProfile":
        return cls(
            tuple(parse_rational(v) for v in alpha),
            tuple(parse_rational(v) for v in b),
            parse_rational(gamma),
        )

    @property
    def s(self) -> int:
        return len(self.alpha)

    @property
    def alpha_t(self) -> tuple[Fraction, ...]:
        g = self.gamma
        return (Fraction(0),) + tuple((v - g) / (1 - g) for v in self.alpha[1:])

    @property
    def b_t(self) -> tuple[Fraction, ...]:
        g = self.gamma
        return tuple((v - g) / (1 - g) for v in self.b)

    def reduced_segments(self) -> list[tuple[Fraction, Fraction]]:
        """Tilded segments with empty ones (alpha~ = b~) dropped."""
        return [(a, b) for a, b in zip(self.alpha_t, self.b_t) if a != b]

    def staircase_moment(self, j: int) -> Fraction:
        """j-th moment of the tilded staircase measure."""
        return sum((b ** (j + 1) - a ** (j + 1) for a, b in self.reduced_segments()), Fraction(0)) / (j + 1)


def profile_from_omega(omega: Sequence[int], gamma=0) -> BoundaryProfile:
    """Profile of a finite boundary: alpha_i = (A_i - 1)/N, b_i = B_i/N."""
    validate_omega(omega)
    N = len(omega)
    blocks = [[omega[0], omega[0]]]
    for v in omega[1:]:
        if v == blocks[-1][1] + 1:
            blocks[-1][1] = v
        else:
            blocks.append([v, v])
    return BoundaryProfile(
        tuple(Fraction(A - 1, N) for A, _ in blocks),
        tuple(Fraction(B, N) for _, B in blocks),
        parse_rational(gamma),
    )


@dataclass(frozen=True)
class WeightProfile:
    """Per-period weight data: which indices carry square rows and their c_i."""

    n: int
    i2: tuple[int, ...]
    y: tuple[Fraction, ...]
    x: Fraction

    def __post_init__(self):
        if len(self.i2) != len(self.y):
            raise ValueError("one y value per index of I2")
        if self.x <= 0 or any(v <= 0 for v in self.y):
            raise ValueError("x and the y values must be positive")

    @classmethod
    def make(cls, n: int, i2: Sequence[int], y: Sequence, x=1) -> "WeightProfile":
        return cls(n, tuple(i2), tuple(parse_rational(v) for v in y), parse_rational(x))

    @classmethod
    def from_c(cls, n: int, cs: Sequence, x=1) -> "WeightProfile":
        """Weights with prescribed c_i = 1/(y_i x), indices 1..len(cs)."""
        x = parse_rational(x)
        return cls(n, tuple(range(1, len(cs) + 1)), tuple(1 / (parse_rational(c) * x) for c in cs), x)

    @property
    def c(self) -> tuple[Fraction, ...]:
        return tuple(1 / (yi * self.x) for yi in self.y)

    @property
    def l(self) -> int:
        return len(self.i2)

    @property
    def distinct_c(self) -> tuple[tuple[Fraction, int], ...]:
        out: dict = {}
        for v in self.c:
            out[v] = out.get(v, 0) + 1
        return tuple(out.items())

    @property
    def m(self) -> int:
        return len(self.distinct_c)


def weights_from_spec(spec: LatticeSpec) -> WeightProfile:
    """Weight profile of a lattice whose nonzero x weights share one value."""
    if spec.regime != "bipartite":
        raise ValueError("limit-shape formulas need one common nonzero x value")
    x = next(v for v in spec.x if v != 0)
    i2 = tuple(j + 1 for j in range(spec.n) if spec.a[j] == 0)
    return WeightProfile(spec.n, i2, tuple(parse_rational(spec.y[j - 1]) for j in i2), parse_rational(x))
