"""The rational curve system shared by every frozen-boundary computation.

A system is fixed by

* ``Phi(t) = prod(t - a_i) / prod(t - b_i)``,
* ``G(z) = g0 + 1/(z - 1) + sum_j w_j / (z + c_j)``,
* an affine link ``chi = p X + q + r kappa`` between the horizontal
  coordinate and the reduced coordinate ``X``.

With ``J = G o Phi`` a point lies on the curve iff ``t - kappa J(t) = X``
has a double root in t, giving ``kappa = 1/J'(t)`` and
``X = t - J(t)/J'(t)``. Clearing denominators with
``D = (P - Q) prod_j (P + c_j Q)`` (``P``, ``Q`` the numerator and
denominator of Phi) turns ``J`` into ``Nn / D``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from numpy.polynomial import Polynomial

from .ratfunc import Poly, RationalFunction, prod

ROOT_POLISH_TOL = 1e-10


def cancel_roots(num: Sequence[Fraction], den: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    num, den = list(num), list(den)
    for v in list(num):
        if v in den:
            num.remove(v)
            den.remove(v)
    return num, den


def polish_roots(p: Polynomial, roots: np.ndarray, iters: int = 8) -> np.ndarray:
    """A few Newton steps on each companion-matrix root."""
    dp = p.deriv()
    out = np.array(roots, dtype=complex)
    for _ in range(iters):
        d = dp(out)
        ok = np.abs(d) > 0
        step = np.zeros_like(out)
        step[ok] = p(out[ok]) / d[ok]
        out = out - step
        if np.all(np.abs(step) <= ROOT_POLISH_TOL * (1 + np.abs(out))):
            break
    return out


def complex_poly(coefs: Sequence[complex]) -> Polynomial:
    return Polynomial(np.asarray(coefs, dtype=complex))


@dataclass
class CurveSystem:
    num_roots: tuple[Fraction, ...]
    den_roots: tuple[Fraction, ...]
    g0: Fraction
    terms: tuple[tuple[Fraction, Fraction], ...]  # (c_j, w_j)
    chi_map: tuple[Fraction, Fraction, Fraction]  # (p, q, r)
    label: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        a, b = cancel_roots(self.num_roots, self.den_roots)
        self.num_roots, self.den_roots = tuple(a), tuple(b)
        P, Q = Poly.from_roots(a), Poly.from_roots(b)
        base = P - Q
        factors = [P + c * Q for c, _ in self.terms]
        D = base * prod(factors)
        Nn = self.g0 * D + Q * prod(factors)
        for j, (_, w) in enumerate(self.terms):
            Nn = Nn + w * Q * base * prod(f for k, f in enumerate(factors) if k != j)
        self.P, self.Q, self.D, self.Nn = P, Q, D, Nn
        # float work happens in a variable scaled to [-1, 1] over the roots
        pts = [float(v) for v in a + b] + [float(c) for c, _ in self.terms] or [0.0]
        lo, hi = min(pts) - 1.0, max(pts) + 1.0
        self.domain = np.array([lo, hi])
        self._P, self._Q = self._float(P), self._float(Q)
        self._D, self._N = self._float(D), self._float(Nn)
        self._dD, self._dN = self._D.deriv(), self._N.deriv()
        self._ddD, self._ddN = self._dD.deriv(), self._dN.deriv()

    def _float(self, p: Poly) -> Polynomial:
        return p.to_numpy().convert(domain=self.domain)

    def linear(self, c0, c1) -> Polynomial:
        """The polynomial c0 + c1 t in the working domain."""
        return Polynomial([c0, c1]).convert(domain=self.domain)

    # ---- evaluation -------------------------------------------------------

    def phi(self, t):
        return self._P(t) / self._Q(t)

    def J(self, t):
        return self._N(t) / self._D(t)

    def Jp(self, t):
        d = self._D(t)
        return (self._dN(t) * d - self._N(t) * self._dD(t)) / d**2

    def Jpp(self, t):
        d = self._D(t)
        u = self._dN(t) * d - self._N(t) * self._dD(t)
        du = self._ddN(t) * d - self._N(t) * self._ddD(t)
        return (du * d - 2 * u * self._dD(t)) / d**3

    def J_rational(self) -> RationalFunction:
        return RationalFunction(self.Nn, self.D)

    def G(self, z):
        out = self.g0 + 1 / (z - 1)
        for c, w in self.terms:
            out = out + w / (z + c)
        return out

    @property
    def degree(self) -> int:
        """Degree in t of the cleared equation (t - X) D - kappa Nn."""
        return max(self.D.degree + 1, self.Nn.degree)

    # ---- coordinates --------------------------------------------------------

    def X_of(self, chi, kappa):
        p, q, r = (float(v) for v in self.chi_map)
        return (chi - q - r * kappa) / p

    def chi_of(self, X, kappa):
        p, q, r = (float(v) for v in self.chi_map)
        return p * X + q + r * kappa

    def point(self, t: np.ndarray):
        """(chi, kappa) on the curve for real parameters t."""
        jp = self.Jp(t)
        kappa = 1.0 / jp
        X = t - self.J(t) / jp
        return self.chi_of(X, kappa), kappa

    # ---- polynomials --------------------------------------------------------

    def equation(self, X, kappa) -> Polynomial:
        """(t - X) D(t) - kappa Nn(t); X may be complex."""
        return self.linear(-X, 1.0) * self._D - kappa * self._N

    def critical(self, kappa) -> Polynomial:
        """D^2 - kappa (Nn' D - Nn D'): zero iff kappa J'(t) = 1."""
        return self._D * self._D - kappa * (self._dN * self._D - self._N * self._dD)

    def roots(self, p: Polynomial) -> np.ndarray:
        return polish_roots(p, p.roots())

    def real_poles(self) -> np.ndarray:
        if "poles" not in self._cache:
            r = self.roots(self._D) if self.D.degree > 0 else np.array([])
            self._cache["poles"] = np.sort(r[np.abs(r.imag) < 1e-9].real)
        return self._cache["poles"]
