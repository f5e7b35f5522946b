import cmath
from fractions import Fraction as F

import numpy as np
import pytest

from dimershape.limitshape.curves import (
    cloud_class,
    count_real_intersections,
    dual_curve,
    frozen_boundary,
    line_polynomial,
    winding_check,
)
from dimershape.limitshape.density import density, double_root_residual, level_profile, liquid_breakpoints
from dimershape.limitshape.moments import moments_contour
from dimershape.limitshape.profiles import BoundaryProfile, WeightProfile, profile_from_omega
from dimershape.limitshape.transforms import frozen_system, j_function, phi_s, stieltjes_staircase


@pytest.fixture(scope="module")
def period3():
    profile = BoundaryProfile.make([0, 1], ["2/3", "4/3"], "1/3")
    weights = WeightProfile.make(3, [2, 3], [1, 2], 1)
    return profile, weights


@pytest.fixture(scope="module")
def period3_curve(period3):
    return frozen_boundary(*period3)


UNIT = BoundaryProfile.make([0], [1])
HEX = BoundaryProfile.make([0, 1], ["1/2", "3/2"])


def test_profile_tilde_and_omega():
    p = BoundaryProfile.make([0, 1], ["2/3", "4/3"], "1/3")
    assert p.alpha_t == (0, 1) and p.b_t == (F(1, 2), F(3, 2))
    q = profile_from_omega([1, 2, 5, 6])
    assert q.alpha == (0, 1) and q.b == (F(1, 2), F(3, 2))
    with pytest.raises(ValueError):
        BoundaryProfile.make([0, 1], ["1/2", "1"])


def test_stieltjes_values():
    assert stieltjes_staircase(UNIT, 2) == pytest.approx(np.log(2), abs=1e-15)
    p = BoundaryProfile.make([0, 1], ["2/3", "4/3"], "1/3")
    assert stieltjes_staircase(p, 3) == pytest.approx(np.log(1.6), abs=1e-14)
    t = 1e7
    assert stieltjes_staircase(p, t) * t == pytest.approx(1, rel=1e-6)
    with pytest.raises(ValueError):
        stieltjes_staircase(p, F(1, 2))


def test_exp_stieltjes_is_phi(period3):
    p, _ = period3
    rng = np.random.default_rng(0)
    for t in rng.normal(size=20) * 3 + 1j * rng.normal(size=20) * 3:
        assert abs(cmath.exp(stieltjes_staircase(p, t)) / phi_s(p, t) - 1) < 1e-12


def test_phi_and_j_closed_forms(period3):
    p, w = period3
    for t in [F(3), F(-2, 7), F(5, 4)]:
        phi = t * (t - 1) / ((t - F(1, 2)) * (t - F(3, 2)))
        assert phi_s(p, t) == phi
        J = phi * (1 / (phi - 1) - F(1, 2) * (1 / (phi + 1) + 1 / (phi + F(1, 2))))
        assert j_function(p, w, t) == J
        assert frozen_system(p, w).J_rational()(t) == J
    t = F(7, 3)
    phi = phi_s(HEX, t)
    assert j_function(HEX, None, t) == phi / (phi - 1)
    assert phi_s(p, 1e9) == pytest.approx(1, abs=1e-8)


def test_j_prime_matches_finite_differences(period3):
    p, w = period3
    s = frozen_system(p, w)
    poles = s.real_poles()
    rng = np.random.default_rng(3)
    ts = [t for t in rng.uniform(-3, 4, size=40) if np.min(np.abs(poles - t)) > 0.05]
    assert len(ts) > 20

    def cd(t, h):
        return (j_function(p, w, t + h) - j_function(p, w, t - h)) / (2 * h)

    for t in ts:
        h = 1e-3
        fd = (4 * cd(t, h / 2) - cd(t, h)) / 3
        assert abs(s.Jp(t) - fd) < 1e-8 * max(1.0, abs(fd))


def test_frozen_boundary_residuals_and_region(period3_curve):
    c = period3_curve
    assert len(c) > 500
    assert c.residual.max() < 1e-8
    assert np.all((c.kappa > 0) & (c.kappa < 1))
    assert np.all(c.chi >= 0)
    assert np.all(c.kappa <= -3 * c.chi + 4 + 1e-12)
    assert not np.any(c.kappa < -3 * c.chi + 1)


def test_hexagon_curve_touches_its_sides():
    c = frozen_boundary(HEX, None)
    assert c.residual.max() < 1e-8
    assert len(c.segments()) == 1
    assert c.chi.min() < 1e-4 and c.kappa.min() < 1e-3 and c.kappa.max() > 1 - 1e-4
    assert (1.5 - c.kappa - c.chi).min() < 1e-4


def test_triangle_is_frozen(period3):
    p, w = period3
    rng = np.random.default_rng(5)
    for _ in range(40):
        kappa = rng.uniform(0.01, 0.95)
        chi = rng.uniform(0, (1 - kappa) / 3)
        assert density(chi, kappa, p, w) in (0.0, 1.0)


def test_density_crossings_match_curve(period3, period3_curve):
    p, w = period3
    s = frozen_system(p, w)
    c = period3_curve
    for kappa in (0.3, 0.5, 0.8):
        chis = s.chi_of(liquid_breakpoints(s, kappa), kappa)
        sign = np.sign(c.kappa - kappa)
        k = np.flatnonzero(sign[:-1] != sign[1:])
        k = k[np.abs(c.chi[k + 1] - c.chi[k]) < 0.05]
        from_curve = c.chi[k] + (kappa - c.kappa[k]) * (c.chi[k + 1] - c.chi[k]) / (c.kappa[k + 1] - c.kappa[k])
        assert np.allclose(np.sort(from_curve), np.sort(chis), atol=1e-4)
        for x in chis:
            inside = [density(x + d, kappa, p, w) for d in (-1e-4, 1e-4)]
            assert sum(0 < v < 1 for v in inside) == 1


def test_liquid_points_have_positive_residual(period3):
    p, w = period3
    s = frozen_system(p, w)
    assert 0 < density(0.5, 0.5, p, w) < 1
    assert double_root_residual(0.5, 0.5, s) > 1e-3
    with pytest.raises(ValueError):
        double_root_residual(0.5, 0.0, s)
    with pytest.raises(ValueError):
        density(0.5, 1.0, p, w)


@pytest.mark.parametrize("kappa", [0.05, 0.3, 0.6, 0.9])
def test_level_profile_has_unit_mass(period3, kappa):
    lp = level_profile(*period3, kappa)
    assert lp.moment(0) == pytest.approx(1, abs=1e-6)
    assert lp.cdf(1e9) == pytest.approx(1, abs=1e-4)


def test_moments_at_kappa_zero():
    for p in (UNIT, HEX, BoundaryProfile.make([0, 1], ["2/3", "4/3"], "1/3")):
        for j in range(7):
            assert moments_contour(0, j, p, None) == pytest.approx(float(p.staircase_moment(j)), abs=1e-6)
    assert moments_contour(0, 1, UNIT, None) == pytest.approx(0.5, abs=1e-12)


def test_moments_match_density(period3):
    p, w = period3
    for kappa in (0.3, 0.6):
        lp = level_profile(p, w, kappa)
        assert moments_contour(kappa, 0, p, w) == pytest.approx(1, abs=1e-9)
        for j in range(1, 5):
            assert moments_contour(kappa, j, p, w) == pytest.approx(lp.moment(j), abs=1e-3)
    with pytest.raises(ValueError):
        moments_contour(1.0, 1, p, w)


def test_dual_curve_identities(period3):
    p, w = period3
    g = float(p.gamma)
    s = frozen_system(p, w)
    t = np.random.default_rng(2).uniform(-4, 4, size=50)
    x, y = dual_curve(p, w, t)
    tt = (1 - g) * t + g
    assert np.allclose(x * tt, -1, atol=1e-14)
    tb = (-1 / x - g) / (1 - g)
    assert np.max(np.abs(y - x * ((1 - g) * s.J(tb) + g))) < 1e-10
    xi, _ = dual_curve(p, w, np.array([1e12]))
    assert abs(xi[0]) < 1e-11


def test_cloud_class_cases(period3):
    assert cloud_class(*period3) == 6
    assert cloud_class(UNIT, None) == 1
    p = BoundaryProfile.make([0, 1], ["1/2", "3/2"], "1/2")
    assert cloud_class(p, WeightProfile.make(2, [1], [1])) == 2


def test_dual_degree_equals_class(period3):
    p, w = period3
    s = frozen_system(p, w)
    assert line_polynomial(s, float(p.gamma), 0.7, 1.3).degree() == cloud_class(p, w)


def test_winding(period3):
    rep = winding_check(*period3, num_lines=100)
    assert rep.min_count >= 4 and rep.passed
    assert rep.center_counts == [6] * len(rep.center_counts)
    assert winding_check(UNIT, None, num_lines=10).passed


def test_line_count_never_exceeds_class(period3):
    p, w = period3
    s = frozen_system(p, w)
    rng = np.random.default_rng(9)
    for c, e in rng.normal(size=(30, 2)):
        assert count_real_intersections(s, float(p.gamma), c, e) <= 6
