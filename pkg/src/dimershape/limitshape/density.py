"""Local density of the limit measure and the double-root residual.

Densities refer to the reduced measure at level kappa: the counting
measure of a row's partition with its forced trailing zeros removed, in
the coordinate ``x = X / (1 - kappa)``. A point is liquid when the cleared
equation ``(t - X) D - kappa Nn = 0`` has a non-real pair; the density
there is ``|arg Phi(t)| / pi``. Otherwise the root that behaves like ``x``
at infinity is followed from ``X + iH`` down to the real axis and the
sign of ``Phi`` at its end decides between 0 and 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .profiles import BoundaryProfile, WeightProfile
from .system import CurveSystem
from .transforms import frozen_system

IMAG_TOL = 1e-7
GL_NODES = 64


def _check_kappa(kappa: float) -> None:
    if not 0 < kappa < 1:
        raise ValueError(f"kappa = {kappa} must lie strictly between 0 and 1")


def nonreal_root(system: CurveSystem, X: float, kappa: float):
    roots = system.roots(system.equation(X, kappa))
    cand = roots[roots.imag > IMAG_TOL * (1 + np.abs(roots))]
    if len(cand) == 0:
        return None
    return cand[np.argmax(cand.imag)]


def tracked_root(system: CurveSystem, X: float, kappa: float, eps: float = 1e-9) -> complex:
    """Continue the root near infinity from X + iH down to X + i eps."""
    H = 10.0 * (1.0 + abs(X))
    roots = system.roots(system.equation(X + 1j * H, kappa))
    cur = roots[np.argmax(np.abs(roots))]
    h = H
    while h > eps * (1 + abs(X)):
        h *= 0.6
        roots = system.roots(system.equation(X + 1j * h, kappa))
        cur = roots[np.argmin(np.abs(roots - cur))]
    return cur


def density_X(system: CurveSystem, X: float, kappa: float) -> float:
    _check_kappa(kappa)
    t = nonreal_root(system, X, kappa)
    if t is not None:
        return float(abs(np.angle(system.phi(t))) / np.pi)
    t = tracked_root(system, X, kappa)
    z = system.phi(t)
    return 1.0 if z.real < 0 else 0.0


def density(chi: float, kappa: float, profile: BoundaryProfile, weights: WeightProfile | None) -> float:
    """Density of the reduced level-kappa measure at the point (chi, kappa)."""
    system = frozen_system(profile, weights)
    return density_X(system, system.X_of(chi, kappa), kappa)


def double_root_residual(chi: float, kappa: float, system: CurveSystem) -> float:
    """Distance from having a double root: 0 exactly on the curve.

    Minimises ``|t - kappa J(t) - X| / (1 + |X|)`` over the points where
    ``kappa J'(t) = 1``.
    """
    _check_kappa(kappa)
    X = system.X_of(chi, kappa)
    crit = system.roots(system.critical(kappa))
    # a close real pair can come back as a conjugate pair; seed both reals
    near = crit[np.abs(crit.imag) < 1e-2 * (1 + np.abs(crit.real))]
    # near a pole p of J the real critical points sit about sqrt(kappa) away
    poles = system.real_poles()
    off = np.sqrt(kappa) * np.array([0.1, 0.3, 1.0, 3.0])
    around = (poles[:, None] + np.concatenate([off, -off])[None, :]).ravel()
    seeds = np.concatenate([crit, near.real + np.abs(near.imag), near.real - np.abs(near.imag), around])
    seeds = seeds[np.abs(system._D(seeds)) > 1e-14]
    t = _polish_critical(system, seeds.astype(complex), kappa)
    with np.errstate(all="ignore"):
        res = np.abs(t - kappa * system.J(t) - X) / (1 + abs(X))
    res = res[np.isfinite(res)]
    return float(res.min()) if len(res) else float("inf")


def _critical_value(system: CurveSystem, t: np.ndarray, kappa: float):
    """kappa J'(t) - 1 and its derivative from one pass of evaluations."""
    n, dn, ddn = system._N(t), system._dN(t), system._ddN(t)
    d, dd, ddd = system._D(t), system._dD(t), system._ddD(t)
    u = dn * d - n * dd
    du = ddn * d - n * ddd
    return kappa * u / d**2 - 1, kappa * (du * d - 2 * u * dd) / d**3


def _polish_critical(system: CurveSystem, t: np.ndarray, kappa: float, iters: int = 40) -> np.ndarray:
    """Newton steps on kappa J'(t) - 1, each seed kept only while it improves.

    Near a pole of J the critical polynomial has clustered roots that the
    companion matrix resolves poorly; in this form the root is simple.
    """
    t = np.array(t, dtype=complex)
    with np.errstate(all="ignore"):
        h, dh = _critical_value(system, t, kappa)
        active = np.isfinite(h) & np.isfinite(dh)
        for _ in range(iters):
            idx = np.flatnonzero(active)
            if len(idx) == 0:
                break
            step = h[idx] / dh[idx]
            new = t[idx] - step
            hn, dhn = _critical_value(system, new, kappa)
            ok = np.isfinite(hn) & np.isfinite(dhn) & (np.abs(hn) < np.abs(h[idx]))
            t[idx[ok]], h[idx[ok]], dh[idx[ok]] = new[ok], hn[ok], dhn[ok]
            active[idx[~ok]] = False
            active[idx[ok]] = np.abs(step[ok]) > 1e-15 * (1 + np.abs(new[ok]))
    return t


def liquid_breakpoints(system: CurveSystem, kappa: float) -> np.ndarray:
    """Sorted X values where the frozen boundary crosses the level kappa."""
    crit = system.roots(system.critical(kappa))
    real = crit[np.abs(crit.imag) < 1e-8 * (1 + np.abs(crit))].real
    real = real[np.abs(system._D(real)) > 1e-14]
    return np.sort(real - kappa * system.J(real))


def sign_change_points(system: CurveSystem, kappa: float) -> np.ndarray:
    """X values where a real root crosses a zero or pole of Phi.

    There Phi changes sign, so a frozen stretch can switch between
    density 0 and density 1 without passing through a liquid region.
    """
    g_zero = float(system.G(0))
    g_inf = float(system.g0)
    pts = [float(a) - kappa * g_zero for a in system.num_roots]
    pts += [float(b) - kappa * g_inf for b in system.den_roots]
    return np.array(pts)


@dataclass
class LevelProfile:
    """Piecewise description of the reduced level-kappa density in x."""

    kappa: float
    pieces: list  # (x0, x1, value or None for liquid)
    system: CurveSystem

    def _liquid_nodes(self, x0: float, x1: float, count: int = GL_NODES):
        th, w = np.polynomial.legendre.leggauss(count)
        th = 0.5 * np.pi * (th + 1)
        w = 0.5 * np.pi * w
        x = x0 + 0.5 * (x1 - x0) * (1 - np.cos(th))
        jac = 0.5 * (x1 - x0) * np.sin(th)
        f = np.array([self.f(v) for v in x])
        return x, w * jac, f

    def f(self, x: float) -> float:
        return density_X(self.system, x * (1 - self.kappa), self.kappa)

    def moment(self, j: int) -> float:
        total = 0.0
        for x0, x1, val in self.pieces:
            if val is None:
                x, w, f = self._liquid_nodes(x0, x1)
                total += float(np.sum(w * f * x**j))
            elif val:
                total += (x1 ** (j + 1) - x0 ** (j + 1)) / (j + 1)
        return total

    def cdf_table(self, per_piece: int = 400):
        """Monotone (x, F(x)) table for interpolation."""
        xs, Fs = [self.pieces[0][0]], [0.0]
        for x0, x1, val in self.pieces:
            if val is None:
                th = np.linspace(0, np.pi, per_piece + 1)[1:]
                x = x0 + 0.5 * (x1 - x0) * (1 - np.cos(th))
                f = np.array([self.f(v) for v in x])
                prev_x, prev_f = x0, self.f(x0 + 1e-12 * (x1 - x0))
                for xi, fi in zip(x, f):
                    Fs.append(Fs[-1] + 0.5 * (fi + prev_f) * (xi - prev_x))
                    xs.append(xi)
                    prev_x, prev_f = xi, fi
            else:
                xs.append(x1)
                Fs.append(Fs[-1] + val * (x1 - x0))
        return np.array(xs), np.array(Fs)

    def cdf(self, x):
        xs, Fs = self._table()
        return np.interp(x, xs, Fs, left=0.0, right=Fs[-1])

    def _table(self):
        if not hasattr(self, "_tab"):
            self._tab = self.cdf_table()
        return self._tab


def chi_max(profile: BoundaryProfile, weights: WeightProfile | None, kappa: float) -> float:
    """Right edge of the lattice at level kappa: b_s - kappa (1 - l/n).

    Each level shortens the row by one and each square row with a = 0 can
    push the leading particle one step right.
    """
    frac = weights.l / weights.n if weights is not None else 0
    return float(profile.b[-1]) - kappa * (1 - float(frac))


def level_profile(profile: BoundaryProfile, weights: WeightProfile | None, kappa: float) -> LevelProfile:
    """Split [0, x_max] at the frozen-boundary crossings and classify pieces."""
    _check_kappa(kappa)
    system = frozen_system(profile, weights)
    lo = 0.0
    hi = float(system.X_of(chi_max(profile, weights, kappa), kappa)) / (1 - kappa)
    xs = np.concatenate([liquid_breakpoints(system, kappa), sign_change_points(system, kappa)]) / (1 - kappa)
    xs = np.sort(xs)
    cuts = [lo] + [float(v) for v in xs if lo < v < hi] + [hi]
    pieces = []
    for x0, x1 in zip(cuts[:-1], cuts[1:]):
        if x1 - x0 < 1e-13:
            continue
        mid = density_X(system, 0.5 * (x0 + x1) * (1 - kappa), kappa)
        val = mid if mid in (0.0, 1.0) else None
        pieces.append((x0, x1, val))
    merged = []
    for p in pieces:
        if merged and p[2] is not None and merged[-1][2] == p[2]:
            merged[-1] = (merged[-1][0], p[1], p[2])
        else:
            merged.append(p)
    return LevelProfile(kappa, merged, system)
