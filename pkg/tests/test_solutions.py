import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pucci_halfspace.errors import DomainError, InputError, PreconditionError
from pucci_halfspace.grids import t_grid
from pucci_halfspace.matrix import Ellipticity, pucci_minus, pucci_plus, rank_two_eigenvalues
from pucci_halfspace.solutions import (GammaOne, GaugeD, PowerFunction, PowerOf, boundary_point,
                                       counterexample_large_p, counterexample_negative_p,
                                       dist_feasible, dist_feasible_on, gamma_build,
                                       gamma_constants, gauge_value, in_sublevel,
                                       ineq1_lower_bound, power_jet, pucci_on_power,
                                       radial_family, radial_solution)
from pucci_halfspace.verify import fd_hessian

from conftest import ell_of


def halfspace_point(rng, n, lo=0.05):
    x = rng.standard_normal(n)
    x[-1] = abs(x[-1]) + lo
    return x


def test_harmonic_power_spectrum():
    jet = power_jet(PowerFunction(1, 3), np.array([0.0, 0.0, 1.0]))
    mu = rank_two_eigenvalues(jet.hessian)
    assert np.allclose(mu, [6, -3, -3])
    assert abs(mu.sum()) < 1e-12
    H = fd_hessian(lambda y: float(PowerFunction(1, 3)(y)), np.array([0.0, 0.0, 1.0]))
    assert np.allclose(H, jet.hessian.matrix(), atol=1e-8)


def test_linear_function_has_zero_hessian(rng):
    jet = power_jet(PowerFunction(1, 0), halfspace_point(rng, 4))
    assert np.allclose(jet.hessian.matrix(), 0, atol=1e-14)


def test_power_domain_error():
    with pytest.raises(DomainError):
        power_jet(PowerFunction(1, 2), np.array([1.0, 0.0]))


def test_power_hessian_vs_fd(rng):
    for _ in range(40):
        n = int(rng.integers(2, 6))
        pf = PowerFunction(float(rng.uniform(0.2, 4)), float(rng.uniform(-1, 8)))
        x = halfspace_point(rng, n, 0.3)
        H = fd_hessian(lambda y: float(pf(y)), x)
        J = pf.jet(x).hessian.matrix()
        assert np.abs(H - J).max() <= 1e-6 * max(1.0, np.abs(J).max())


def test_gradient_euler_identity(rng):
    for _ in range(30):
        n = int(rng.integers(2, 6))
        pf = PowerFunction(float(rng.uniform(0.2, 4)), float(rng.uniform(-1, 8)))
        x = halfspace_point(rng, n)
        jet = pf.jet(x)
        assert abs(jet.gradient @ x - pf.degree * jet.value) <= 1e-9 * abs(jet.value) * max(1, abs(pf.degree))


@given(al=st.floats(0.1, 5), be=st.floats(0.1, 10), t=st.floats(1e-3, 1), s=st.floats(0.1, 10),
       n=st.integers(2, 6))
def test_homogeneity(al, be, t, s, n):
    pf = PowerFunction(al, be)
    deg = al - be
    assert math.isclose(pf.value(s, t), s ** deg * pf.value(1.0, t), rel_tol=1e-12)
    x = np.zeros(n)
    x[0], x[-1] = math.sqrt(1 - t * t), t
    mu1 = rank_two_eigenvalues(pf.jet(x).hessian)
    mus = rank_two_eigenvalues(pf.jet(s * x).hessian)
    assert np.allclose(mus, s ** (deg - 2) * mu1, rtol=1e-9, atol=1e-9 * np.abs(mus).max())


@given(al=st.floats(0.1, 5), extra=st.floats(0, 6), t=st.floats(1e-3, 1), n=st.integers(2, 7))
def test_closed_form_eigenvalues_and_sign_split(al, extra, t, n):
    pf = PowerFunction(al, al + extra)
    x = np.zeros(n)
    x[0], x[-1] = math.sqrt(1 - t * t), t
    mu = rank_two_eigenvalues(pf.jet(x).hessian)
    m1, m2, m3 = pf.mui(1.0, t)
    ref = np.sort(np.r_[m1, m2, np.full(n - 2, m3)])[::-1]
    scale = np.abs(ref).max()
    assert np.allclose(mu, ref, atol=1e-9 * scale)
    assert m1 >= -1e-12 * scale
    assert m2 <= 1e-12 * scale and m3 <= 0


def test_pucci_on_power_harmonic():
    for n in (2, 3, 5):
        e = Ellipticity(1.0, 1.0, n)
        vals = pucci_on_power(PowerFunction(1, n), e, t_grid(count=500))
        assert np.abs(vals).max() < 1e-10 * n * n


def test_pucci_on_power_matches_spectrum():
    t = t_grid(count=2000)
    for om, n in [(2, 3), (1.5, 5), (5, 2)]:
        e = ell_of(om, n)
        for pf in (PowerFunction(om, om * (n + 1) - 1), PowerFunction(1, om * (n - 1) + 1)):
            val = pucci_on_power(pf, e, t)
            a, b, c, d = pf.hessian(1.0, t)
            from pucci_halfspace.matrix import pucci_batch, rank_two_spectra
            ref = pucci_batch(rank_two_spectra(a, b, c, d, t, n), e) / t ** pf.alpha
            scale = np.abs(ref) + np.abs(pf.mui(1.0, t)[0] / t ** pf.alpha) + 1
            assert np.all(np.abs(val - ref) <= 1e-9 * scale)
            assert np.all(ineq1_lower_bound(pf, e, t) <= val + 1e-9 * scale)


def test_pucci_on_power_signs():
    t = t_grid()
    e = ell_of(2, 3)
    phi = pucci_on_power(PowerFunction(2, 7), e, t)
    hat = pucci_on_power(PowerFunction(1, 5), e, t)
    assert phi.min() >= -1e-10 * np.abs(phi).max()
    assert hat.max() <= 1e-10 * np.abs(hat).max()
    with pytest.raises(PreconditionError):
        pucci_on_power(PowerFunction(3, 2), e, 0.5)


def test_dist_named_points():
    s = np.r_[0.0, t_grid(count=999) ** 2]
    for om in (1.0, 1.5, 2.0, 5.0):
        for n in (2, 3, 5):
            e = ell_of(om, n)
            assert dist_feasible_on(om, om * (n + 1) - 1, e, s)
            a2 = 2 * om * (n - 1) - 1
            assert dist_feasible_on(a2, 2 * a2, e, s)


def test_dist_boundary_needs_alpha_above_one():
    for om in (1.5, 2.0, 5.0):
        e = ell_of(om, 3)
        assert not dist_feasible(1.0, 3.0, e, 0.0)
        assert not dist_feasible(0.8, 3.0, e, 0.0)
    with pytest.raises(InputError):
        dist_feasible(-1.0, 1.0, ell_of(2, 3), 0.5)


def test_dist_agrees_with_spectrum(rng):
    # feasibility at s is the sign of the Pucci minimum at t = sqrt(s), for beta >= alpha
    for _ in range(200):
        om, n = float(rng.uniform(1, 4)), int(rng.integers(2, 6))
        al = float(rng.uniform(0.5, 4))
        be = al + float(rng.uniform(0, 6))
        t = float(rng.uniform(0.05, 1))
        e = ell_of(om, n)
        val = pucci_on_power(PowerFunction(al, be), e, t)
        if abs(val) > 1e-6:
            assert dist_feasible(al, be, e, t * t) == (val > 0)


def test_gauge_examples(rng):
    g = GaugeD(ell_of(2, 2))
    assert g.k == 0.25
    assert gauge_value(g, np.array([0.0, 2.0])) == 2.0
    assert np.isclose(np.linalg.norm(boundary_point(g, 1.0, 0.5)), 0.5 ** 0.25)
    assert np.allclose(boundary_point(g, 3.0, 1.0), [0.0, 3.0])
    flat = GaugeD(Ellipticity(1, 1, 3))
    for _ in range(20):
        x = halfspace_point(rng, 3)
        assert gauge_value(flat, x) == pytest.approx(np.linalg.norm(x), rel=1e-15)
        assert gauge_value(GaugeD(ell_of(3, 3)), x) >= np.linalg.norm(x)
    with pytest.raises(DomainError):
        boundary_point(g, 1.0, 0.0)
    with pytest.raises(DomainError):
        gauge_value(g, np.array([1.0, -1.0]))


@given(om=st.floats(1, 8), n=st.integers(2, 6), r=st.floats(0.01, 100), t=st.floats(1e-6, 1))
def test_boundary_point_on_level_set(om, n, r, t):
    g = GaugeD(ell_of(om, n))
    assert 0 <= g.k < 1 / n
    x = boundary_point(g, r, t)
    assert gauge_value(g, x) == pytest.approx(r, rel=1e-12)
    assert x[-1] / np.linalg.norm(x) == pytest.approx(t, rel=1e-12)
    assert in_sublevel(g, 0.99 * x, r) and not in_sublevel(g, 1.01 * x, r)


@given(om=st.floats(1, 8), n=st.integers(2, 6), t=st.floats(1e-4, 1), rho=st.floats(0.1, 10))
def test_phi_as_gauge_power(om, n, t, rho):
    e = ell_of(om, n)
    g = GaugeD(e)
    phi = PowerFunction(om, om * (n + 1) - 1)
    d = g.from_polar(rho, t)
    assert phi.value(rho, t) == pytest.approx(rho * t / d ** (om * n), rel=1e-12)


def test_radial_solutions(rng):
    assert radial_solution(np.array([0.0, 0.0, 2.0]), Ellipticity(1, 1, 3)) == pytest.approx(0.5)
    assert radial_solution(np.array([3.0, 4.0]), Ellipticity(1, 1, 2)) == pytest.approx(-math.log(5))
    with pytest.raises(DomainError):
        radial_solution(np.zeros(3), Ellipticity(1, 1, 3))
    for om, n, op in [(2, 3, "minus"), (1.5, 2, "minus"), (1, 2, "minus"), (2, 3, "plus"),
                      (4, 3, "plus"), (2, 5, "plus"), (1, 3, "plus")]:
        e = ell_of(om, n)
        f = radial_family(e, op)
        for _ in range(10):
            x = halfspace_point(rng, n)
            mu = rank_two_eigenvalues(f.jet(x).hessian)
            val = (pucci_minus if op == "minus" else pucci_plus)(mu, e)
            assert abs(val) <= 1e-9 * om * np.abs(mu).sum()


def test_phi_hat_is_a_derivative(rng):
    om, n = 2.0, 3
    beta = om * (n - 1) + 1
    x = halfspace_point(rng, n)
    h = 1e-5
    e_n = np.eye(n)[-1]
    f = lambda y: np.linalg.norm(y) ** (2 - beta)
    deriv = (f(x + h * e_n) - f(x - h * e_n)) / (2 * h)
    assert deriv / (2 - beta) == pytest.approx(PowerFunction(1, beta)(x), rel=1e-8)


def test_gamma_constants():
    c = gamma_constants(Ellipticity(1, 1, 2))
    assert (c["c1"], c["c2"], c["c3"], c["a"], c["b"]) == pytest.approx((2, 8, 6, 0.375, 0.125))
    c = gamma_constants(Ellipticity(1, 2, 3))
    assert c["c2"] == 18 and c["c3"] == 8
    assert c["a"] == c["c3"] / (c["c1"] * c["c2"]) and c["b"] == 1 / c["c2"]


def test_gamma_jet(rng):
    e = ell_of(2, 3)
    gb = gamma_build(e, search=False)
    for _ in range(15):
        x = halfspace_point(rng, 3, 0.5) * 3
        if gb.gauge.from_polar(np.linalg.norm(x), x[-1] / np.linalg.norm(x)) <= 1:
            continue
        H = fd_hessian(lambda y: float(gb(y)), x)
        J = gb.jet(x).hessian.matrix()
        assert np.abs(H - J).max() <= 1e-5 * np.abs(J).max()
    s = 2.5
    on_axis = gb(np.array([0.0, 0.0, s]))
    assert on_axis == pytest.approx(s ** (1 - 6) * (gb.a * math.log(s) + gb.b), rel=1e-12)


def test_gamma_one_displayed_eigenvalues():
    for om, n in [(2, 3), (1.5, 4), (3, 2)]:
        e = ell_of(om, n)
        g1 = GammaOne(e)
        t = t_grid(count=300)
        for rho in (1.5, 10.0, 1e3):
            rr = rho * t ** GaugeD(e).k  # d = rho
            a, b, c, d = g1.hessian(rr, t)
            from pucci_halfspace.matrix import rank_two_spectra
            ref = np.sort(rank_two_spectra(a, b, c, d, t, n), axis=-1)
            got = np.sort(g1.eigenvalues(rr, t), axis=-1)
            assert np.all(np.abs(got - ref) <= 1e-9 * np.abs(ref).max(axis=-1, keepdims=True))


def test_gamma_precondition():
    with pytest.raises(PreconditionError):
        gamma_constants(_bad_ell())


def _bad_ell():
    class E:
        omega, n, lam, Lam = 0.5, 2, 2.0, 1.0
    return E()


def test_power_of_chain_rule(rng):
    base = PowerFunction(1, 2.5)
    v = PowerOf(base, 0.4, 1.7)
    for _ in range(10):
        x = halfspace_point(rng, 3, 0.5)
        H = fd_hessian(lambda y: float(v(y)), x)
        J = v.jet(x).hessian.matrix()
        assert np.abs(H - J).max() <= 1e-6 * max(1, np.abs(J).max())


def test_counterexample_negative_p():
    ce = counterexample_negative_p(-3.0, Ellipticity(1, 1, 3))
    assert ce.exponent == 0.75
    assert ce.threshold == pytest.approx(16 / 3)
    with pytest.raises(PreconditionError):
        counterexample_negative_p(-1.0, Ellipticity(1, 1, 3))
    with pytest.raises(InputError):
        counterexample_negative_p(-3.0, Ellipticity(1, 1, 3), delta=0.4)
    for p in (-1.5, -2.0, -7.0):
        ce = counterexample_negative_p(p, ell_of(2, 3))
        assert 2 / (1 - p) < ce.exponent < 1


def test_counterexample_large_p():
    ce = counterexample_large_p(3.0, Ellipticity(1, 1, 3), beta=2.5)
    assert ce.threshold == pytest.approx(0.8)
    ce = counterexample_large_p(3.5, Ellipticity(1, 1, 3))
    assert ce.exponent == pytest.approx(0.5 * (1.8 + 3))
    with pytest.raises(PreconditionError):
        counterexample_large_p(2.0, Ellipticity(1, 1, 3))
    with pytest.raises(InputError):
        counterexample_large_p(3.0, Ellipticity(1, 1, 3), beta=3.5)
