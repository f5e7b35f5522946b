"""Stieltjes transform, Phi_s, J and the frozen-boundary system."""

from __future__ import annotations

import cmath
from fractions import Fraction

import numpy as np

from .profiles import BoundaryProfile, WeightProfile
from .system import CurveSystem


def _check_off_support(profile: BoundaryProfile, t) -> None:
    for v in profile.alpha_t + profile.b_t:
        if t == v:
            raise ValueError(f"t = {t} is an endpoint of the support")


def stieltjes_staircase(profile: BoundaryProfile, t: complex) -> complex:
    """Stieltjes transform of the tilded staircase, sum of principal logs.

    Summing the logs of each factor keeps the branch that behaves like 1/t
    at infinity; for real t inside a segment the value is taken from above.
    """
    _check_off_support(profile, t)
    t = complex(t)
    if t.imag == 0:
        t = complex(t.real, 0.0)
    return sum(cmath.log(t - float(a)) - cmath.log(t - float(b)) for a, b in zip(profile.alpha_t, profile.b_t))


def _conv(t):
    return (lambda v: v) if isinstance(t, (int, Fraction)) else float


def phi_s(profile: BoundaryProfile, t):
    """prod (t - alpha~_i) / prod (t - b~_i); exact for rational t."""
    conv = _conv(t)
    num = 1
    den = 1
    for a, b in zip(profile.alpha_t, profile.b_t):
        num = num * (t - conv(a))
        den = den * (t - conv(b))
    if np.any(den == 0):
        raise ZeroDivisionError(f"t = {t} is a pole of Phi_s")
    return num / den


def frozen_system(profile: BoundaryProfile, weights: WeightProfile | None) -> CurveSystem:
    """Curve system of a staircase boundary with bipartite weights.

    ``J = Phi [1/(Phi - 1) - K sum_i 1/(Phi + c_i)]`` with
    ``K = 1/(n (1 - gamma))`` equals ``(1 - K l) + 1/(Phi - 1) +
    K sum_i c_i/(Phi + c_i)``; the horizontal coordinate is
    ``chi = (1 - gamma) X + gamma (1 - kappa)``.
    """
    g = profile.gamma
    terms = []
    g0 = Fraction(1)
    if weights is not None and weights.l:
        K = 1 / (weights.n * (1 - g))
        g0 = 1 - K * weights.l
        terms = [(c, K * mult * c) for c, mult in weights.distinct_c]
    return CurveSystem(profile.alpha_t, profile.b_t, g0, tuple(terms), (1 - g, g, -g), "frozen")


def j_function(profile: BoundaryProfile, weights: WeightProfile | None, t):
    """J(t) evaluated from its defining expression in Phi_s."""
    conv = _conv(t)
    z = phi_s(profile, t)
    total = 1 / (z - 1)
    if weights is not None and weights.l:
        K = conv(Fraction(1) / (weights.n * (1 - profile.gamma)))
        total = total - K * sum(1 / (z + conv(c)) for c in weights.c)
    return z * total


def j_prime(profile: BoundaryProfile, weights: WeightProfile | None, t):
    return frozen_system(profile, weights).Jp(t)
