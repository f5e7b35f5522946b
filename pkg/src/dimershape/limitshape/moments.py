"""Moments of the reduced level-kappa measure from a contour integral.

The j-th moment is ``(1/(j+1)) (1/(2 pi i)) oint F(z)^{j+1} dz/z`` over a
small positive circle around ``z = 1``. The term ``z H'(z)`` of the
staircase measure equals ``t(z) - z/(z-1)``, where ``t(z)`` is the
branch of the inverse of Phi that tends to infinity as ``z -> 1``; that
branch is the largest-modulus root of ``P(t) - z Q(t)``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from numpy.polynomial import Polynomial

from .profiles import BoundaryProfile, WeightProfile
from .transforms import frozen_system

START_RADIUS = 0.05
MAX_SHRINKS = 10
NODES = 512
STABLE_TOL = 1e-9


class ContourError(RuntimeError):
    pass


def inverse_phi(P: Polynomial, Q: Polynomial, z: np.ndarray) -> np.ndarray:
    """Largest-modulus solution t of Phi(t) = z for each z."""
    out = np.empty(len(z), dtype=complex)
    for k, zk in enumerate(z):
        roots = (P - zk * Q).roots()
        out[k] = roots[np.argmax(np.abs(roots))]
    return out


def f_kappa(z: np.ndarray, kappa: float, profile: BoundaryProfile, weights: WeightProfile | None, t=None):
    system = frozen_system(profile, weights)
    if t is None:
        t = inverse_phi(system._P, system._Q, z)
    pole = z / (z - 1)
    out = (t - pole) / (1 - kappa) + pole
    if weights is not None and weights.l:
        K = float(Fraction(1) / (weights.n * (1 - profile.gamma)))
        extra = sum(1 / (z + float(c)) for c in weights.c)
        out = out + kappa * z * K * extra / (1 - kappa)
    return out


def _circle_moment(r: float, kappa, j, profile, weights):
    theta = 2 * np.pi * np.arange(NODES) / NODES
    z = 1 + r * np.exp(1j * theta)
    F = f_kappa(z, kappa, profile, weights)
    g = F ** (j + 1) * (z - 1) / z
    return np.mean(g) / (j + 1), np.max(np.abs(g))


def moments_contour(kappa: float, j: int, profile: BoundaryProfile, weights: WeightProfile | None) -> float:
    """j-th moment of the reduced measure at level kappa."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    if not 0 <= kappa < 1:
        raise ValueError(f"kappa = {kappa} must lie in [0, 1)")
    r = START_RADIUS
    prev = None
    for _ in range(MAX_SHRINKS + 1):
        val, size = _circle_moment(r, kappa, j, profile, weights)
        # rounding in the mean is about eps times the largest term
        tol = max(STABLE_TOL * (1 + abs(val)), 1e3 * np.finfo(float).eps * size)
        if not np.isfinite(val):
            prev = None
        elif prev is not None and abs(val - prev) <= tol:
            if abs(val.imag) > max(1e-8 * (1 + abs(val.real)), tol):
                raise ContourError(f"moment has imaginary part {val.imag:.3g}")
            return float(val.real)
        else:
            prev = val
        r /= 2
    raise ContourError("contour integral did not stabilise; a singularity is too close to 1")
