"""Young-diagram combinatorics and Schur polynomial evaluation.

Partitions are plain tuples of nonnegative integers in weakly decreasing
order. Trailing zeros are significant: ``(3, 1, 0)`` has length 3 and is
evaluated in three variables.

Exact evaluation works over :class:`fractions.Fraction` (ints are
promoted). Float evaluation is opt-in and only offered where it is needed
for large inputs (:func:`log_schur_bialternant`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

Partition = tuple[int, ...]

SSYT_BOUND = 10**6


class EnumerationBoundError(RuntimeError):
    """Raised when an explicit enumeration would exceed its size guard."""


def as_partition(parts: Iterable[int]) -> Partition:
    p = tuple(int(v) for v in parts)
    if any(v < 0 for v in p):
        raise ValueError(f"negative part in {p}")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"parts are not weakly decreasing: {p}")
    return p


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not text:
        return ()
    return as_partition(int(v) for v in text.split(","))


def format_partition(p: Sequence[int]) -> str:
    return ",".join(str(v) for v in p)


def parse_rational(text: str | int | float | Fraction) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, float):
        return Fraction(text).limit_denominator(10**12)
    return Fraction(str(text).strip())


def format_rational(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _part(p: Sequence[int], i: int) -> int:
    return p[i] if i < len(p) else 0


def interlaces(lower: Sequence[int], upper: Sequence[int]) -> bool:
    """True iff ``lower`` ≺ ``upper``: upper_i >= lower_i >= upper_{i+1}.

    Missing parts count as zero on both sides.
    """
    k = max(len(lower), len(upper))
    for i in range(k):
        if not _part(upper, i) >= _part(lower, i) >= _part(upper, i + 1):
            return False
    return True


def conjugate(p: Sequence[int]) -> Partition:
    if not p or p[0] == 0:
        return ()
    return tuple(sum(1 for v in p if v > j) for j in range(p[0]))


def co_interlaces(lower: Sequence[int], upper: Sequence[int]) -> bool:
    """True iff conjugates interlace, i.e. upper/lower is a vertical strip."""
    k = max(len(lower), len(upper))
    for i in range(k):
        d = _part(upper, i) - _part(lower, i)
        if d not in (0, 1):
            return False
    # containment plus 0/1 row increments; columns must stay a partition
    return all(_part(upper, i) >= _part(upper, i + 1) for i in range(k))


@dataclass(frozen=True)
class CountingMeasure:
    atoms: tuple[tuple[Fraction, Fraction], ...]

    @property
    def total_mass(self) -> Fraction:
        return sum((m for _, m in self.atoms), Fraction(0))

    def positions(self) -> list[Fraction]:
        return [x for x, _ in self.atoms]

    def moment(self, j: int) -> Fraction:
        return sum((m * x**j for x, m in self.atoms), Fraction(0))

    def cdf(self, x: float) -> float:
        return float(sum(m for p, m in self.atoms if p <= x))


def counting_measure(p: Sequence[int]) -> CountingMeasure:
    """Atoms of mass 1/N at (p_i + N - i)/N, i = 1..N."""
    n = len(p)
    if n == 0:
        raise ValueError("counting measure needs a partition of length >= 1")
    w = Fraction(1, n)
    return CountingMeasure(tuple((Fraction(p[i] + n - 1 - i, n), w) for i in range(n)))


# ---------------------------------------------------------------------------
# Schur polynomials
# ---------------------------------------------------------------------------


def _exact(u: Sequence) -> bool:
    return all(isinstance(v, (int, Rational)) for v in u)


def _horizontal_strips_below(lam: Partition) -> Iterable[Partition]:
    """All kappa of length len(lam) - 1 with kappa ≺ lam."""
    ranges = [range(lam[i + 1], lam[i] + 1) for i in range(len(lam) - 1)]
    for kappa in product(*ranges):
        yield kappa


def schur_ssyt(p: Sequence[int], u: Sequence, bound: int = SSYT_BOUND):
    """Sum over semistandard tableaux of shape p with entries in 1..N.

    Tableaux are generated through their Gelfand-Tsetlin chains (the
    entries <= k form a sub-diagram of length k), one chain per tableau.
    """
    lam = as_partition(p)
    if len(u) != len(lam):
        raise ValueError("need one variable per part")
    if schur_weyl_ones(lam, len(lam)) > bound:
        raise EnumerationBoundError(f"more than {bound} tableaux of shape {lam}")
    u = [Fraction(v) if isinstance(v, int) else v for v in u]
    one = Fraction(1) if _exact(u) else 1.0

    def rec(shape: Partition) -> object:
        k = len(shape)
        if k == 0:
            return one
        total = 0 * one
        size = sum(shape)
        for kappa in _horizontal_strips_below(shape):
            total += u[k - 1] ** (size - sum(kappa)) * rec(kappa)
        return total

    return rec(lam)


def _det_exact(m: list[list[Fraction]]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    a = [row[:] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def schur_bialternant(p: Sequence[int], u: Sequence, *, cond_limit: float = 1e-8):
    """det(u_i^(p_j + N - j)) / prod_{i<j}(u_i - u_j).

    Exact when every u_i is rational; otherwise evaluated in float through
    :func:`log_schur_bialternant`. Repeated variables are rejected, route
    those through :func:`schur_with_zeros` or :func:`schur`.
    """
    lam = as_partition(p)
    n = len(lam)
    if len(u) != n:
        raise ValueError("need one variable per part")
    if n == 0:
        return Fraction(1)
    if _exact(u):
        u = [Fraction(v) for v in u]
        if len(set(u)) < n:
            raise ValueError("repeated variables: bialternant is 0/0, use schur_with_zeros")
        exps = [lam[j] + n - 1 - j for j in range(n)]
        num = _det_exact([[ui**e for e in exps] for ui in u])
        den = Fraction(1)
        for i in range(n):
            for j in range(i + 1, n):
                den *= u[i] - u[j]
        return num / den
    sign, logabs = log_schur_bialternant(lam, u, cond_limit=cond_limit)
    return sign * math.exp(logabs)


def log_schur_bialternant(p: Sequence[int], u: Sequence[float], *, cond_limit: float = 1e-8):
    """Float bialternant as (sign, log|value|).

    Rows and columns of the alternant are rescaled in log space so the
    diagonal (the dominant term once variables are sorted by modulus) is 1
    and no entry exceeds 1. Exponentially separated variables then neither
    overflow nor underflow into a singular matrix.
    """
    lam = as_partition(p)
    n = len(lam)
    u = np.asarray([float(v) for v in u])
    if n == 0:
        return 1.0, 0.0
    scale = np.max(np.abs(u))
    if scale == 0:
        raise ValueError("all variables vanish; use schur_with_zeros")
    gaps = np.abs(u[:, None] - u[None, :])[np.triu_indices(n, 1)]
    if n > 1 and np.min(gaps) <= cond_limit * scale:
        raise ValueError(
            "variables too close for a stable bialternant; "
            "use log-domain Weyl/zero reductions (schur_with_zeros)"
        )
    if np.any(u == 0):
        raise ValueError("vanishing variable; use schur_with_zeros")
    exps = np.array([lam[j] + n - 1 - j for j in range(n)], dtype=float)
    order = np.argsort(-np.abs(u), kind="stable")
    la = np.log(np.abs(u[order]))
    # potentials make the diagonal 1 and every other entry at most 1
    q = np.zeros(n)
    for i in range(n - 2, -1, -1):
        q[i] = q[i + 1] + la[i] * (exps[i] - exps[i + 1])
    pot = exps * la - q
    logb = exps[None, :] * la[:, None] - pot[:, None] - q[None, :]
    signs = np.where((u[order][:, None] < 0) & (exps[None, :] % 2 == 1), -1.0, 1.0)
    sdet, ldet = np.linalg.slogdet(signs * np.exp(logb))
    sdet *= _perm_sign(order)
    ldet += pot.sum() + q.sum()
    diffs = (u[:, None] - u[None, :])[np.triu_indices(n, 1)]
    vsign = np.prod(np.sign(diffs)) if n > 1 else 1.0
    vlog = np.sum(np.log(np.abs(diffs))) if n > 1 else 0.0
    return float(sdet * vsign), float(ldet - vlog)


def _perm_sign(order) -> float:
    seen = [False] * len(order)
    sign = 1.0
    for i in range(len(order)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def schur_weyl_ones(p: Sequence[int], m: int) -> Fraction:
    """s_p(1, ..., 1) with m ones, by the Weyl dimension product."""
    lam = as_partition(p)
    if len(lam) != m:
        raise ValueError(f"partition length {len(lam)} != number of variables {m}")
    val = Fraction(1)
    for i in range(m):
        for j in range(i + 1, m):
            val *= Fraction(lam[i] - lam[j] + j - i, j - i)
    return val


def log_weyl_ones(p: Sequence[int]) -> float:
    """log s_p(1^m), m = len(p), in float."""
    lam = np.asarray(p, dtype=float)
    m = len(lam)
    if m < 2:
        return 0.0
    idx = np.arange(m, dtype=float)
    ell = lam - idx
    iu = np.triu_indices(m, 1)
    d = (ell[:, None] - ell[None, :])[iu]
    h = (idx[None, :] - idx[:, None])[iu]
    return float(np.sum(np.log(d)) - np.sum(np.log(h)))


def complete_homogeneous(u: Sequence, kmax: int) -> list:
    """[h_0(u), ..., h_kmax(u)]."""
    one = Fraction(1) if _exact(u) else 1.0
    h = [one] + [0 * one] * kmax
    for v in u:
        for k in range(1, kmax + 1):
            h[k] = h[k] + v * h[k - 1]
    return h


def schur_jacobi_trudi(p: Sequence[int], u: Sequence):
    """det(h_{p_i - i + j}); handles repeated and vanishing variables."""
    lam = tuple(v for v in as_partition(p) if v > 0)
    if len(lam) > len(u):
        return Fraction(0) if _exact(u) else 0.0
    u = [Fraction(v) if isinstance(v, int) else v for v in u]
    k = len(lam)
    if k == 0:
        return Fraction(1) if _exact(u) else 1.0
    h = complete_homogeneous(u, lam[0] + k)
    zero = 0 * h[0]

    def hk(d: int):
        return h[d] if d >= 0 else zero

    mat = [[hk(lam[i] - i + j) for j in range(k)] for i in range(k)]
    if _exact(u):
        return _det_exact(mat)
    return float(np.linalg.det(np.array(mat, dtype=float)))


def schur_with_zeros(p: Sequence[int], u: Sequence, b: int):
    """s_p(u) where exactly b of the variables vanish.

    Fewer zero parts than zero variables gives 0; otherwise the zero
    variables and the trailing zero parts drop out together, and equal
    nonzero variables collapse to x^|p| times a Weyl product.
    """
    lam = as_partition(p)
    n = len(lam)
    if len(u) != n:
        raise ValueError("need one variable per part")
    if b > n:
        raise ValueError(f"b={b} exceeds the number of variables {n}")
    nonzero = [v for v in u if v != 0]
    if len(nonzero) != n - b:
        raise ValueError(f"expected exactly {b} vanishing variables")
    exact = _exact(u)
    zero_parts = sum(1 for v in lam if v == 0)
    if zero_parts < b:
        return Fraction(0) if exact else 0.0
    lam_t = lam[: n - b]
    if not nonzero:
        return Fraction(1) if exact else 1.0
    x = nonzero[0]
    if all(v == x for v in nonzero):
        phi = tuple(v + b for v in lam_t)
        w = schur_weyl_ones(phi, n - b)
        if exact:
            return Fraction(x) ** sum(lam) * w
        return float(x) ** sum(lam) * float(w)
    if len(set(nonzero)) == len(nonzero):
        return schur_bialternant(lam_t, nonzero)
    return schur_jacobi_trudi(lam_t, nonzero)


def schur(p: Sequence[int], u: Sequence):
    """Evaluate s_p(u), picking the reduction that applies to u."""
    lam = as_partition(p)
    if len(u) != len(lam):
        raise ValueError("need one variable per part")
    b = sum(1 for v in u if v == 0)
    if b:
        return schur_with_zeros(lam, u, b)
    if len(set(u)) == len(u):
        return schur_bialternant(lam, u)
    return schur_with_zeros(lam, u, 0)


# ---------------------------------------------------------------------------
# split partitions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SplitPartitionFamily:
    components: dict[int, Partition]
    permutation: tuple[int, ...]
    eta: tuple[int, ...]


def sigma_zero(weights: Sequence) -> tuple[int, ...]:
    """A 1-based permutation ordering the weights decreasingly (stable)."""
    order = sorted(range(len(weights)), key=lambda j: -weights[j])
    return tuple(j + 1 for j in order)


def split_partition(p: Sequence[int], weights: Sequence, sigma: Sequence[int]) -> SplitPartitionFamily:
    """Split p into one partition per distinct weight value.

    ``sigma`` is 1-based. The distinct values must appear first among the
    weights, pairwise distinct (weights[0:n] lists each value once).
    """
    lam = as_partition(p)
    N = len(lam)
    if len(weights) != N:
        raise ValueError("need one weight per part")
    if sorted(sigma) != list(range(1, N + 1)):
        raise ValueError("sigma is not a permutation of 1..N")
    distinct = list(dict.fromkeys(weights))
    n = len(distinct)
    if list(weights[:n]) != distinct:
        raise ValueError("the first n weights must be the n pairwise distinct values")
    xs = [weights[s - 1] for s in sigma]
    eta = tuple(sum(1 for k in range(j + 1, N) if xs[k] != xs[j]) for j in range(N))
    comps = {}
    for i in range(n):
        vals = sorted((lam[j] + eta[j] for j in range(N) if xs[j] == weights[i]), reverse=True)
        comps[i + 1] = tuple(vals)
    return SplitPartitionFamily(comps, tuple(sigma), eta)
