import numpy as np
import pytest

from pucci_halfspace.errors import InputError, PreconditionError
from pucci_halfspace.exponent import HomogeneousSolution, compute_alpha
from pucci_halfspace.hadamard import (MuCurve, check_three_surfaces, halfball_curve, mplus_monotone,
                                      mu_curve, whole_space_three_spheres)
from pucci_halfspace.matrix import Ellipticity
from pucci_halfspace.solutions import PowerFunction, radial_family

from conftest import ell_of

RADII = np.geomspace(0.1, 10, 50)


@pytest.mark.parametrize("om,n", [(2, 3), (1.5, 2), (1, 3)])
def test_mu_curves_pass(om, n):
    e = ell_of(om, n)
    for u in (PowerFunction(1, 0), PowerFunction(1, om * (n - 1) + 1), HomogeneousSolution(compute_alpha(e))):
        rep = check_three_surfaces(mu_curve(u, e, RADII))
        assert rep["pass"], rep
        assert rep["concavity"]["worst_margin"] >= -1e-8
        assert rep["monotonicity"]["worst_margin"] >= -1e-8


def test_homogeneous_curve_scales():
    e = ell_of(2, 3)
    u = PowerFunction(1, 5)
    c = mu_curve(u, e, RADII)
    # u/x_n is homogeneous of degree -5, so r**5 mu is constant
    spread = np.ptp(RADII ** 5 * c.mu) / np.abs(RADII ** 5 * c.mu).max()
    assert spread < 1e-12


def test_synthetic_violator_rejected():
    e = ell_of(2, 3)
    mu = RADII ** (-e.omega * e.n - 0.1)
    rep = check_three_surfaces(MuCurve(RADII, mu, np.ones_like(RADII), e))
    assert not rep["pass"] and not rep["monotonicity"]["pass"]


def test_curve_input_checks(tmp_path):
    e = ell_of(2, 3)
    with pytest.raises(InputError):
        mu_curve(PowerFunction(1, 0), e, [-1.0, 2.0])
    with pytest.raises(InputError):
        MuCurve([1, 2], [1.0], [1.0, 1.0], e)
    with pytest.raises(InputError):
        check_three_surfaces(MuCurve([2, 1, 3], [1, 1, 1], [1, 1, 1], e))
    c = mu_curve(PowerFunction(1, 0), e, [1.0, 2.0, 3.0])
    text = c.to_csv(tmp_path / "mu.csv")
    assert text.splitlines()[0] == "r,mu,witness_t"
    assert (tmp_path / "mu.csv").read_text() == text


@pytest.mark.parametrize("om,n", [(2, 3), (1, 3), (1, 2), (1.5, 4)])
def test_whole_space_equality(om, n):
    e = ell_of(om, n)
    rep = whole_space_three_spheres(radial_family(e), e, (0.5, 1.3, 4.0))
    assert rep["equality"] and abs(rep["margin"]) <= 1e-8


def test_whole_space_strict_for_supersolution():
    e = ell_of(2, 3)
    # concave radial profile: a strict supersolution
    rep = whole_space_three_spheres(lambda s: 5 - s ** 2, e, (0.5, 1.0, 2.0))
    assert rep["pass"]


def test_whole_space_needs_beta_two():
    with pytest.raises(PreconditionError):
        whole_space_three_spheres(lambda s: s, _Fake(), (1, 2, 3))


class _Fake:
    omega, n, lam, Lam = 0.5, 2, 1.0, 1.0


def test_halfball_mplus():
    e = ell_of(2, 4)
    u = PowerFunction(1, (e.n - 1) / e.omega + 1)
    c = halfball_curve(u, e, np.geomspace(0.5, 5, 8), s_count=60, t_count=100)
    assert mplus_monotone(c)["pass"]


def test_phi_alpha_homogeneity_and_witness():
    e = ell_of(2, 3)
    res = compute_alpha(e)
    c = mu_curve(HomogeneousSolution(res), e, RADII)
    g = RADII ** (res.alpha + 1) * c.mu
    assert np.ptp(g) / g.max() <= 1e-4
    assert c.floor_hits == [] and c.witness_t.min() >= 10 * 1e-6


def test_mplus_psi_hat_equality_and_violator():
    e = ell_of(2, 4)
    ex = (e.n - 1) / e.omega + 1
    radii = np.geomspace(0.5, 5, 8)
    c = halfball_curve(PowerFunction(1, ex), e, radii, s_count=60, t_count=100)
    g = radii ** ex * c.mu
    assert np.ptp(g) / g.max() <= 1e-8
    fake = MuCurve(radii, radii ** (-ex - 0.2), np.ones_like(radii), e)
    assert not mplus_monotone(fake)["pass"]
    xn = halfball_curve(PowerFunction(1, 0), e, radii, s_count=20, t_count=20)
    assert np.allclose(xn.mu, 1.0)
