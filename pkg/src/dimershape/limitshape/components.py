"""Disconnected liquid regions: one curve per weight class.

When the x weights of the n classes are separated exponentially in N, the
boundary partition splits into groups of blocks, one group per class. The
blocks are described by their limit sizes ``K_t`` (fractions of N, ``K_s``
being the block of largest parts) and heights ``r_t = mu_t / N`` with
``r_1 > ... > r_s``. Class i owns the blocks ``d_i, ..., d_{i+1} - 1``
counted from the largest part, and its curve is the double-root locus of
``t - kappa J_i(t) = n chi``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..partitions import parse_rational
from .curves import FrozenBoundaryCurve, trace_system
from .profiles import WeightProfile
from .ratfunc import Poly, RationalFunction
from .system import CurveSystem


class CutConditionError(ValueError):
    """A class boundary i/n falls inside a block of equal parts."""


class SeparationError(RuntimeError):
    """Bounding regions of two component curves overlap."""


@dataclass(frozen=True)
class ComponentCurveFamily:
    n: int
    K: tuple[Fraction, ...]
    r: tuple[Fraction, ...]
    d: tuple[int, ...]
    beta: tuple[tuple[Fraction, ...], ...]
    gamma: tuple[tuple[Fraction, ...], ...]
    weights: WeightProfile | None

    @property
    def s(self) -> int:
        return len(self.K)

    @property
    def D(self) -> tuple[int, ...]:
        ds = self.d + (self.s + 1,)
        return tuple(ds[i + 1] - ds[i] - 1 for i in range(self.n))

    def intervals(self) -> list[tuple[int, int, Fraction, Fraction]]:
        """Support intervals (i, k, beta_ik, gamma_ik), 1-based i."""
        return [(i + 1, k, b, g) for i in range(self.n) for k, (b, g) in enumerate(zip(self.beta[i], self.gamma[i]))]

    def psi(self, i: int) -> RationalFunction:
        return RationalFunction(Poly.from_roots(self.beta[i - 1]), Poly.from_roots(self.gamma[i - 1]))

    def _g_data(self, i: int):
        if i == 1 and self.weights is not None and self.weights.l:
            terms = tuple((c, mult * c) for c, mult in self.weights.distinct_c)
            return Fraction(self.n - self.weights.l), terms
        if i == 1:
            return Fraction(self.n), ()
        return Fraction(self.n - i + 1), ()

    def J(self, i: int) -> RationalFunction:
        """J_i as a rational function of t_i, built from Psi_i."""
        psi = self.psi(i)
        g0, terms = self._g_data(i)
        out = (psi - 1).reciprocal() + g0
        for c, w in terms:
            out = out + RationalFunction.const(w) * (psi + c).reciprocal()
        return out

    def system(self, i: int) -> CurveSystem:
        g0, terms = self._g_data(i)
        chi_map = (Fraction(1, self.n), Fraction(0), Fraction(0))
        return CurveSystem(self.beta[i - 1], self.gamma[i - 1], g0, terms, chi_map, f"component {i}")

    def class_degree(self, i: int) -> int:
        m = self.weights.m if (i == 1 and self.weights is not None) else 0
        return (m + 1) * (self.D[i - 1] + 1)

    def region(self, i: int, kappa: float) -> tuple[float, float]:
        """Horizontal extent of the bounding region of curve i at level kappa."""
        n = self.n
        lo, hi = self.beta[i - 1][-1], self.gamma[i - 1][0]
        if i == 1:
            return float(lo / n - Fraction(n - 1, n)), float(hi / n)
        shift = kappa * (n - i)
        return (float(lo) - shift) / n, (float(hi) - shift) / n

    def overlapping_regions(self) -> list[tuple[int, int]]:
        """Pairs of curves whose bounding regions meet for some kappa in [0, 1]."""
        bad = []
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                for kap in (0.0, 1.0):
                    (a0, a1), (b0, b1) = self.region(i, kap), self.region(j, kap)
                    if a0 <= b1 and b0 <= a1:
                        bad.append((i, j))
                        break
        return bad


def _segments(K: Sequence[Fraction], r: Sequence[Fraction]):
    """Left-to-right segments [alpha_t, b_t]; segment t holds the parts mu_{s+1-t}."""
    s = len(K)
    alpha, b = [], []
    acc = Fraction(0)
    for t in range(s):
        a = r[s - 1 - t] + acc
        alpha.append(a)
        b.append(a + K[t])
        acc += K[t]
    return alpha, b


def component_params(K: Sequence, r: Sequence, n: int, weights: WeightProfile | None = None) -> ComponentCurveFamily:
    """Cut points, support intervals, Psi_i and J_i for n weight classes.

    ``K[t-1]`` is the limit size of the t-th block from the left and ``r``
    lists the block heights from the largest down; ``r[-1]`` must be 0.
    """
    K = tuple(parse_rational(v) for v in K)
    r = tuple(parse_rational(v) for v in r)
    s = len(K)
    if len(r) != s:
        raise ValueError("need one height per block")
    if sum(K) != 1 or any(v <= 0 for v in K):
        raise ValueError("block sizes must be positive and sum to 1")
    if r[-1] != 0 or any(r[t] <= r[t + 1] for t in range(s - 1)):
        raise ValueError("heights must decrease strictly to 0")
    if weights is not None and weights.n != n:
        raise ValueError("weight profile has a different period")
    alpha, b = _segments(K, r)
    if any(alpha[t + 1] <= b[t] for t in range(s - 1)):
        raise ValueError("blocks overlap: heights are not separated enough")

    # parts counted from the largest: block mu_t covers a suffix of K
    suffix = [sum(K[s - t :], Fraction(0)) for t in range(1, s + 1)]
    d = [1]
    for i in range(1, n):
        cut = Fraction(i, n)
        if cut not in suffix:
            raise CutConditionError(f"class boundary {cut} splits a block of equal parts")
        d.append(suffix.index(cut) + 2)
    if len(set(d)) != n:
        raise CutConditionError("a weight class owns no block")
    ds = d + [s + 1]

    def pos(upper: int) -> Fraction:
        return alpha[0] + sum((alpha[l - 1] - b[l - 2] for l in range(2, upper + 1)), Fraction(0))

    def mass(lo: int, hi: int) -> Fraction:
        return sum((b[l - 1] - alpha[l - 1] for l in range(lo, hi + 1)), Fraction(0))

    betas, gammas = [], []
    for i in range(1, n + 1):
        di = ds[i - 1]
        Di = ds[i] - di - 1
        bi, gi = [], []
        for k in range(Di + 1):
            base = n * pos(s - di - k + 1) + n - i + 1
            bi.append(base - n * mass(s - di - k + 1, s - di + 1))
            gi.append(base - n * mass(s - di - k + 2, s - di + 1))
        betas.append(tuple(bi))
        gammas.append(tuple(gi))
    return ComponentCurveFamily(n, K, r, tuple(d), tuple(betas), tuple(gammas), weights)


def supports_disjoint(params: ComponentCurveFamily) -> bool:
    iv = sorted((lo, hi) for _, _, lo, hi in params.intervals())
    return all(iv[k][1] < iv[k + 1][0] for k in range(len(iv) - 1))


def component_curves(params: ComponentCurveFamily, allow_overlap: bool = False) -> list[FrozenBoundaryCurve]:
    """Sample every component curve; overlapping bounding regions are an error."""
    bad = params.overlapping_regions()
    if bad and not allow_overlap:
        raise SeparationError(f"bounding regions overlap for curve pairs {bad}")
    return [trace_system(params.system(i), params.class_degree(i)) for i in range(1, params.n + 1)]
