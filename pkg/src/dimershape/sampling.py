"""Boltzmann sampling of perfect matchings as a chain of partitions.

The chain is grown from the boundary partition omega upward. At each step
the next partition is drawn with probability proportional to the local
transition weight times the partition function of the lattice above it,
which is ``s_kappa(x_{m+1}, ..., x_N)`` up to factors that do not depend on
kappa:

* hexagon step m: ``kappa`` interlaces below ``lambda``, weight
  ``x_m^{|lambda| - |kappa|}``;
* square step m with ``a_m = 0``: ``nu / kappa`` is a vertical strip, weight
  ``y_m^{|nu| - |kappa|}``; with ``a_m = 1`` the row is copied.

Two evaluators exist. The exact one enumerates every candidate with
rational weights. The float one covers lattices whose nonzero x weights
share one value; there the top partition function is a Weyl product, the
step law is a product of one-coordinate weights times a Vandermonde
determinant, and coordinates are drawn one at a time from conditional
marginals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .dimer import MatchingSequence, sequence_weight
from .lattice import LatticeSpec, boundary_partition
from .partitions import EnumerationBoundError, Partition, schur

CANDIDATE_GUARD = 200_000
EXACT_AUTO_MAX_N = 4


@dataclass(frozen=True)
class BoltzmannSample:
    sequence: MatchingSequence
    weight: object
    rng_seed: tuple[int, int]


def make_rng(seed: int, index: int = 0) -> np.random.Generator:
    """Counter-based stream for sample ``index`` under master ``seed``."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(index,))
    return np.random.Generator(np.random.Philox(ss))


def _steps(spec: LatticeSpec):
    for m in range(1, spec.N + 1):
        yield "x", m
        if m < spec.N:
            yield "y", m


# ---------------------------------------------------------------------------
# exact evaluator
# ---------------------------------------------------------------------------


def _hstrip_candidates(lam: Partition):
    ranges = [range(lam[i + 1], lam[i] + 1) for i in range(len(lam) - 1)]
    return product(*ranges)


def _vstrip_candidates(kap: Partition):
    L = len(kap)
    for bits in product((0, 1), repeat=L):
        nu = tuple(kap[i] + bits[i] for i in range(L))
        if all(nu[i] >= nu[i + 1] for i in range(L - 1)):
            yield nu


def _count_candidates(kind: str, lam: Partition) -> int:
    if kind == "x":
        c = 1
        for i in range(len(lam) - 1):
            c *= lam[i] - lam[i + 1] + 1
        return c
    return 2 ** len(lam)


@lru_cache(maxsize=200_000)
def _exact_transition(spec: LatticeSpec, kind: str, m: int, lam: Partition):
    if _count_candidates(kind, lam) > CANDIDATE_GUARD:
        raise EnumerationBoundError("too many candidate partitions for the exact sampler")
    top = [spec.x_at(t) for t in range(m + 1, spec.N + 1)]
    out = []
    if kind == "x":
        xm = spec.x_at(m)
        size = sum(lam)
        for kap in _hstrip_candidates(lam):
            d = size - sum(kap)
            if xm == 0 and d:
                continue
            w = (xm**d if d else 1) * schur(kap, top)
            if w:
                out.append((kap, w))
    else:
        if spec.a_at(m) == 1:
            return ((lam, Fraction(1)),)
        ym = spec.y_at(m)
        size = sum(lam)
        for nu in _vstrip_candidates(lam):
            e = sum(nu) - size
            w = (ym**e if e else 1) * schur(nu, top)
            if w:
                out.append((nu, w))
    total = sum(w for _, w in out)
    if total == 0:
        raise ValueError("zero partition function: no perfect matching exists")
    return tuple((p, Fraction(w) / total if spec.exact else w / total) for p, w in out)


def transition_distribution(spec: LatticeSpec, kind: str, m: int, lam: Partition):
    """Exact law of the next partition as a tuple of (partition, probability)."""
    return _exact_transition(spec, kind, m, tuple(lam))


def sequence_probability(spec: LatticeSpec, seq: MatchingSequence):
    """Probability that the exact sampler emits ``seq``."""
    prob = Fraction(1)
    rows = seq.rows
    idx = 1
    for kind, m in _steps(spec):
        law = dict(transition_distribution(spec, kind, m, rows[idx]))
        prob *= law.get(rows[idx + 1], 0)
        idx += 1
    return prob


def _draw(rng: np.random.Generator, probs: Sequence) -> int:
    cum = np.cumsum(np.asarray([float(p) for p in probs]))
    return int(min(np.searchsorted(cum, rng.random() * cum[-1], side="right"), len(cum) - 1))


# ---------------------------------------------------------------------------
# float evaluator for a single nonzero x value
# ---------------------------------------------------------------------------


def _arnoldi_basis(points: np.ndarray, degree: int) -> np.ndarray:
    """Orthonormal polynomial values on ``points`` up to ``degree``."""
    k = len(points)
    q = np.zeros((k, degree + 1))
    q[:, 0] = 1.0 / np.sqrt(k)
    for j in range(degree):
        v = points * q[:, j]
        for _ in range(2):
            v -= q[:, : j + 1] @ (q[:, : j + 1].T @ v)
        q[:, j + 1] = v / np.linalg.norm(v)
    return q


def sample_vandermonde_product(cands: list[np.ndarray], weights: list[np.ndarray], rng: np.random.Generator) -> list[int]:
    """Draw one point per candidate set from prod w_i(l_i) * |Delta(l)|.

    The candidate sets must be ordered so that any admissible choice is
    strictly decreasing; colliding choices get zero weight automatically.
    Returns the chosen index within each candidate set.
    """
    L = len(cands)
    if L == 0:
        return []
    if L == 1:
        return [_draw(rng, weights[0])]
    grid = np.unique(np.concatenate(cands))
    pos = {int(v): i for i, v in enumerate(grid)}
    center = 0.5 * (grid[0] + grid[-1])
    half = max(0.5 * (grid[-1] - grid[0]), 1.0)
    basis = _arnoldi_basis((grid - center) / half, L - 1)
    rows_p = [basis[[pos[int(v)] for v in c]] for c in cands]
    M = np.array([w @ p for w, p in zip(weights, rows_p)])
    Minv = np.linalg.inv(M)
    chosen = []
    for i in range(L):
        c = Minv[:, i]
        pr = weights[i] * (rows_p[i] @ c)
        pr = np.clip(pr, 0.0, None)
        if pr.sum() <= 0:
            raise FloatingPointError("conditional law degenerated; sampler lost precision")
        j = _draw(rng, pr)
        chosen.append(j)
        r = rows_p[i][j]
        d = r - M[i]
        den = 1.0 + d @ c
        Minv = Minv - np.outer(c, d @ Minv) / den
        M[i] = r
    return chosen


def _float_step(spec: LatticeSpec, kind: str, m: int, lam: Partition, rng) -> Partition:
    tail = [spec.x_at(t) for t in range(m + 1, spec.N + 1)]
    b = sum(1 for v in tail if v == 0)
    if kind == "x":
        L = len(lam) - 1
        if spec.x_at(m) == 0:
            if lam[-1] != 0:
                raise ValueError("zero partition function: no perfect matching exists")
            return lam[:-1]
        Lr = L - b
        if any(lam[i + 1] != 0 for i in range(Lr, L)):
            raise ValueError("zero partition function: no perfect matching exists")
        cands = [np.arange(lam[i + 1], lam[i] + 1) - i for i in range(Lr)]
        weights = [np.ones(len(c)) for c in cands]
        idx = sample_vandermonde_product(cands, weights, rng)
        head = tuple(int(cands[i][j]) + i for i, j in enumerate(idx))
        return head + (0,) * (L - Lr)
    if spec.a_at(m) == 1:
        return lam
    L = len(lam)
    Lr = L - b
    xval = next(v for v in spec.x if v != 0)
    q = float(spec.y_at(m)) * float(xval)
    cands = [np.array([lam[i] - i, lam[i] - i + 1]) for i in range(Lr)]
    # a part stepping onto its left neighbour collides and gets zero mass
    weights = [np.array([1.0, q]) for _ in range(Lr)]
    idx = sample_vandermonde_product(cands, weights, rng)
    head = tuple(lam[i] + j for i, j in enumerate(idx))
    return head + (0,) * (L - Lr)


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------


def resolve_mode(spec: LatticeSpec, mode: str) -> str:
    if mode not in ("auto", "exact", "float"):
        raise ValueError(f"unknown sampling mode {mode!r}")
    if mode == "float" and spec.regime != "bipartite":
        raise ValueError("float sampling needs every nonzero x weight to share one value")
    if mode == "auto":
        return "exact" if spec.N <= EXACT_AUTO_MAX_N or spec.regime != "bipartite" else "float"
    return mode


def sample_matching(
    spec: LatticeSpec,
    seed: int,
    index: int = 0,
    mode: str = "auto",
    stop_row: int | None = None,
) -> BoltzmannSample:
    """One Boltzmann-distributed chain.

    ``stop_row`` (a 1-based lattice row) ends the chain early; the rows
    above it are left out and the weight is then ``None``.
    """
    mode = resolve_mode(spec, mode)
    rng = make_rng(seed, index)
    omega = boundary_partition(spec.omega)
    rows = [omega, omega]
    last = 2 * spec.N + 1 if stop_row is None else stop_row
    for kind, m in _steps(spec):
        if len(rows) >= last:
            break
        lam = rows[-1]
        if mode == "exact":
            law = transition_distribution(spec, kind, m, lam)
            nxt = law[_draw(rng, [p for _, p in law])][0]
        else:
            nxt = _float_step(spec, kind, m, lam, rng)
        rows.append(nxt)
    if stop_row is None:
        seq = MatchingSequence(tuple(rows))
        return BoltzmannSample(seq, sequence_weight(seq, spec), (seed, index))
    return BoltzmannSample(MatchingSequence(tuple(rows)), None, (seed, index))


def sample_many(spec: LatticeSpec, count: int, seed: int, mode: str = "auto", stop_row: int | None = None):
    return [sample_matching(spec, seed, i, mode, stop_row) for i in range(count)]
