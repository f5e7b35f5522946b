"""Frozen boundary curves, their duals and the cloud-curve checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from .density import double_root_residual
from .profiles import BoundaryProfile, WeightProfile
from .system import CurveSystem
from .transforms import frozen_system

BASE_SAMPLES = 400
MAX_STEP = 0.01
MAX_TURN = 0.15
MAX_ROUNDS = 12
REAL_TOL = 1e-7
KAPPA_MIN = 1e-6


@dataclass
class FrozenBoundaryCurve:
    """Sampled curve (chi(t), kappa(t)) restricted to 0 < kappa < 1."""

    t: np.ndarray
    chi: np.ndarray
    kappa: np.ndarray
    residual: np.ndarray
    poles: np.ndarray
    class_degree: int | None
    label: str = ""

    def __len__(self):
        return len(self.t)

    def segments(self):
        """Index ranges of consecutive samples drawn from one arc."""
        breaks = np.flatnonzero(np.hypot(np.diff(self.chi), np.diff(self.kappa)) > 5 * MAX_STEP)
        starts = np.concatenate([[0], breaks + 1])
        ends = np.concatenate([breaks + 1, [len(self.t)]])
        return list(zip(starts, ends))


def _interval_maps(poles: np.ndarray):
    """Maps from (0, 1) onto the open intervals between consecutive poles."""
    maps = []
    if len(poles) == 0:
        maps.append(lambda u: np.tan(np.pi * (u - 0.5)))
        return maps
    p0, p1 = poles[0], poles[-1]
    maps.append(lambda u, p=p0: p - np.tan(0.5 * np.pi * (1 - u)))
    for a, b in zip(poles[:-1], poles[1:]):
        maps.append(lambda u, a=a, b=b: a + 0.5 * (b - a) * (1 - np.cos(np.pi * u)))
    maps.append(lambda u, p=p1: p + np.tan(0.5 * np.pi * u))
    return maps


def _refine(system: CurveSystem, tmap, u: np.ndarray) -> np.ndarray:
    """Insert midpoints where the chord is long or the curve turns sharply."""
    for _ in range(MAX_ROUNDS):
        chi, kap = system.point(tmap(u))
        d = np.hypot(np.diff(chi), np.diff(kap))
        ang = np.arctan2(np.diff(kap), np.diff(chi))
        turn = np.abs(np.angle(np.exp(1j * np.diff(ang))))
        inside = (kap[:-1] > 0) & (kap[:-1] < 1) | (kap[1:] > 0) & (kap[1:] < 1)
        bad = inside & (d > MAX_STEP)
        bad[:-1] |= inside[:-1] & (turn > MAX_TURN)
        bad[1:] |= inside[1:] & (turn > MAX_TURN)
        if not bad.any():
            break
        mids = 0.5 * (u[:-1] + u[1:])[bad]
        u = np.sort(np.concatenate([u, mids]))
    return u


def trace_system(system: CurveSystem, class_degree: int | None = None, t_grid=None, label: str = "") -> FrozenBoundaryCurve:
    """Sample the double-root curve of a system, keeping 0 < kappa < 1."""
    poles = system.real_poles()
    if t_grid is not None:
        ts = [np.asarray(t_grid, dtype=float)]
    else:
        u0 = np.linspace(0, 1, BASE_SAMPLES + 2)[1:-1]
        ts = [tm(_refine(system, tm, u0)) for tm in _interval_maps(poles)]
    t = np.concatenate(ts)
    with np.errstate(all="ignore"):
        chi, kap = system.point(t)
    ok = np.isfinite(chi) & np.isfinite(kap) & (kap >= KAPPA_MIN) & (kap <= 1 - KAPPA_MIN)
    if not ok.any():
        raise ValueError("no parameter value gives a point with 0 < kappa < 1")
    t, chi, kap = t[ok], chi[ok], kap[ok]
    res = np.array([double_root_residual(c, k, system) for c, k in zip(chi, kap)])
    return FrozenBoundaryCurve(t, chi, kap, res, poles, class_degree, label or system.label)


def cloud_class(profile: BoundaryProfile, weights: WeightProfile | None) -> int:
    """Class of the frozen boundary: (m+1)s, or (m+1)(s-1) when gamma = b_1."""
    m = weights.m if weights is not None else 0
    s = profile.s
    return (m + 1) * (s - 1) if profile.gamma == profile.b[0] else (m + 1) * s


def frozen_boundary(profile: BoundaryProfile, weights: WeightProfile | None, t_grid=None) -> FrozenBoundaryCurve:
    system = frozen_system(profile, weights)
    return trace_system(system, cloud_class(profile, weights), t_grid, "frozen boundary")


def dual_curve(profile: BoundaryProfile, weights: WeightProfile | None, t):
    """Dual point (-1/t~, -J~/t~) with t~ = (1-g) t + g and J~ = (1-g) J + g."""
    g = float(profile.gamma)
    system = frozen_system(profile, weights)
    tt = (1 - g) * np.asarray(t, dtype=float) + g
    if np.any(tt == 0):
        raise ZeroDivisionError("t~ = 0 is a pole of the dual curve")
    jt = (1 - g) * system.J(t) + g
    return -1 / tt, -jt / tt


def line_polynomial(system: CurveSystem, gamma: float, c: float, e: float) -> Polynomial:
    """Cleared form of J~(t) = c - e t~: its real roots are the intersections
    of the dual curve with the line y = c x + e."""
    tt = system.linear(gamma, 1 - gamma)
    return (1 - gamma) * system._N + (gamma - c + e * tt) * system._D


def count_real_intersections(system: CurveSystem, gamma: float, c: float, e: float) -> int:
    p = line_polynomial(system, gamma, c, e)
    roots = system.roots(p)
    real = roots[np.abs(roots.imag) < REAL_TOL * (1 + np.abs(roots))].real
    return int(np.sum(np.abs(system._D(real)) > 1e-12))


@dataclass
class WindingReport:
    class_degree: int
    lines: int
    min_count: int
    center_counts: list

    @property
    def passed(self) -> bool:
        return self.min_count >= self.class_degree - 2 and all(c == self.class_degree for c in self.center_counts)


def winding_check(profile: BoundaryProfile, weights: WeightProfile | None, num_lines: int = 100, seed: int = 0) -> WindingReport:
    """Count real meetings of the dual curve with random lines.

    Lines through the origin of the dual plane, ``e = 0``, must meet it in
    exactly ``class`` points; every line must meet it in at least
    ``class - 2``.
    """
    system = frozen_system(profile, weights)
    g = float(profile.gamma)
    d = cloud_class(profile, weights)
    rng = np.random.default_rng(seed)
    counts = [count_real_intersections(system, g, *rng.normal(size=2) * 3) for _ in range(num_lines)]
    centre = [count_real_intersections(system, g, c, 0.0) for c in rng.normal(size=10) * 3]
    return WindingReport(d, num_lines, min(counts) if counts else d, centre)
