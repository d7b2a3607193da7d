"""Scaling exponent of the singular homogeneous solution by shooting.

Writes the solution as ``r**-alpha * phi(theta)`` with ``theta`` the angle
above the boundary hyperplane. At ``r = 1`` the Hessian splits into a 2x2
block on (radial, angular) directions

    [[alpha (alpha+1) phi,  -(alpha+1) phi'],
     [-(alpha+1) phi',      phi'' - alpha phi]]

and the eigenvalue ``-alpha phi - phi' tan(theta)`` with multiplicity
``n - 2``. Setting the Pucci minimum to zero gives a second-order ODE for
``phi``, solved for ``phi''`` in closed form.

The pole ``theta = pi/2`` is a regular singular point for ``n >= 3``, so
the integration starts there from the regular (axially symmetric) branch
and runs down to the boundary; the exponent is the ``alpha`` for which the
trajectory reaches ``phi(0) = 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numba
import numpy as np
from scipy.interpolate import CubicHermiteSpline

from .errors import DomainError, InputError, InvalidTrajectoryError, NumericalError
from .matrix import Ellipticity, RankTwoForm, pucci_minus, rank_two_eigenvalues
from .solutions import AxisymmetricFamily

POLE_EPS = 1e-4
GEOMETRIC_END = 0.05
GEOMETRIC_RATIO = 1.01
UNIFORM_STEPS = 10_000
ALPHA_TOL = 1e-13
SCAN_POINTS = 9


@dataclass(frozen=True)
class AngularState:
    theta: float
    phi: float
    dphi: float
    ddphi: float = 0.0


@dataclass
class ExponentResult:
    alpha: float
    bracket_low: float
    bracket_high: float
    residual: float
    normalization_c: float
    richardson_delta: float = float("nan")
    theta: np.ndarray = field(default=None, repr=False)
    phi: np.ndarray = field(default=None, repr=False)
    dphi: np.ndarray = field(default=None, repr=False)

    def profile(self, theta):
        """Max-normalized ``phi`` (``max phi/sin = 1``) at the given angles."""
        order = np.argsort(self.theta)
        spline = CubicHermiteSpline(self.theta[order], self.phi[order], self.dphi[order])
        return spline(np.asarray(theta, dtype=float))

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "bracket_low": self.bracket_low,
                "bracket_high": self.bracket_high, "residual": self.residual,
                "normalization_c": self.normalization_c,
                "richardson_delta": self.richardson_delta}


# -- Hessian of r^-alpha phi(theta) ------------------------------------------------

def homogeneous_hessian(alpha: float, state: AngularState, n: int) -> RankTwoForm:
    """Hessian of ``r**-alpha phi(theta)`` at the unit point of angle ``theta``.

    Returned in the basis ``v = x/|x|``, ``w = e_n`` through ``f(r, x_n)``.
    """
    th = float(state.theta)
    if not 0 < th <= math.pi / 2:
        raise DomainError(f"theta must lie in (0, pi/2], got {th!r}")
    if n < 2:
        raise InputError("dimension must be at least 2")
    ph, dp, ddp = state.phi, state.dphi, state.ddphi
    cs, sn = math.cos(th), math.sin(th)
    v = np.zeros(n)
    v[0], v[-1] = cs, sn
    w = np.zeros(n)
    w[-1] = 1.0
    if cs < 1e-12:
        # at the pole the axis directions coincide; use the isotropic limit
        C = ddp - alpha * ph
        return RankTwoForm(alpha * (alpha + 1) * ph - C, 0.0, 0.0, C, w, w)
    tn = sn / cs
    f_r = -(alpha * ph + dp * tn)
    f_y = dp / cs
    f_yy = (ddp * cs + dp * sn) / cs ** 3
    f_ry = -(alpha + 1) * dp / cs - tn * (ddp * cs + dp * sn) / cs ** 2
    f_rr = (alpha + 1) * (alpha * ph + dp * tn) + tn * (alpha * dp + ddp * tn + dp / cs ** 2)
    del f_y
    return RankTwoForm(f_rr - f_r, f_yy, f_ry, f_r, v, w)


def _pucci_state(alpha, theta, phi, dphi, z, ell):
    return pucci_minus(rank_two_eigenvalues(
        homogeneous_hessian(alpha, AngularState(theta, phi, dphi, z), ell.n)), ell)


def solve_angular_second(alpha: float, theta: float, phi: float, dphi: float,
                         ell: Ellipticity, rel_tol: float = 1e-12) -> float:
    """The ``phi''`` making the Pucci minimum vanish, by bracketing and bisection.

    The Pucci minimum is nondecreasing in ``phi''`` at a fixed state.
    """
    if not phi > 0:
        raise DomainError(f"phi must be positive, got {phi!r}")

    def F(z):
        return _pucci_state(alpha, theta, phi, dphi, z, ell)

    lo, hi = -1.0, 1.0
    while F(lo) > 0:
        lo *= 2
        if abs(lo) > 1e8:
            raise NumericalError(f"no bracket for phi'' at theta={theta}, phi={phi}, dphi={dphi}")
    while F(hi) < 0:
        hi *= 2
        if abs(hi) > 1e8:
            raise NumericalError(f"no bracket for phi'' at theta={theta}, phi={phi}, dphi={dphi}")
    while hi - lo > rel_tol * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        if F(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# -- compiled integrator ---------------------------------------------------------

@numba.njit(cache=True)
def _P(x, lam, Lam):
    return lam * x if x > 0 else Lam * x


@numba.njit(cache=True)
def _block_pucci(A, B, C, lam, Lam):
    half = 0.5 * (A + C)
    root = math.sqrt(0.25 * (A - C) ** 2 + B * B)
    return _P(half + root, lam, Lam) + _P(half - root, lam, Lam)


@numba.njit(cache=True)
def _solve_C(A, B, K, lam, Lam):
    """``C`` with ``P(mu+) + P(mu-) = K`` for the block ``[[A, B], [B, C]]``."""
    best = K / lam - A
    err = abs(_block_pucci(A, B, best, lam, Lam) - K)
    c2 = K / Lam - A
    e2 = abs(_block_pucci(A, B, c2, lam, Lam) - K)
    if e2 < err:
        best, err = c2, e2
    p = 0.5 * (lam + Lam)
    q = 0.5 * (Lam - lam)
    qa = lam * Lam
    qb = 2 * p * (p * A - K) + 2 * q * q * A
    qc = (p * A - K) ** 2 - q * q * A * A - 4 * q * q * B * B
    disc = qb * qb - 4 * qa * qc
    if disc >= 0:
        r = math.sqrt(disc)
        big = -0.5 * (qb + (r if qb >= 0 else -r))
        roots = (big / qa, qc / big if big != 0 else big / qa)
        for c in roots:
            e = abs(_block_pucci(A, B, c, lam, Lam) - K)
            if e < err:
                best, err = c, e
    return best


@numba.njit(cache=True)
def _rhs(theta, ph, dp, alpha, lam, Lam, n):
    A = alpha * (alpha + 1) * ph
    B = -(alpha + 1) * dp
    e = -alpha * ph - dp * math.tan(theta)
    K = -(n - 2) * _P(e, lam, Lam)
    return alpha * ph + _solve_C(A, B, K, lam, Lam)


@numba.njit(cache=True)
def _integrate(mesh, ph0, dp0, alpha, lam, Lam, n):
    m = mesh.size
    phi = np.empty(m)
    dphi = np.empty(m)
    phi[0], dphi[0] = ph0, dp0
    for i in range(m - 1):
        t0, h = mesh[i], mesh[i + 1] - mesh[i]
        y0, z0 = phi[i], dphi[i]
        k1y, k1z = z0, _rhs(t0, y0, z0, alpha, lam, Lam, n)
        k2y, k2z = z0 + 0.5 * h * k1z, _rhs(t0 + 0.5 * h, y0 + 0.5 * h * k1y, z0 + 0.5 * h * k1z,
                                            alpha, lam, Lam, n)
        k3y, k3z = z0 + 0.5 * h * k2z, _rhs(t0 + 0.5 * h, y0 + 0.5 * h * k2y, z0 + 0.5 * h * k2z,
                                            alpha, lam, Lam, n)
        k4y, k4z = z0 + h * k3z, _rhs(t0 + h, y0 + h * k3y, z0 + h * k3z, alpha, lam, Lam, n)
        phi[i + 1] = y0 + h * (k1y + 2 * k2y + 2 * k3y + k4y) / 6
        dphi[i + 1] = z0 + h * (k1z + 2 * k2z + 2 * k3z + k4z) / 6
    return phi, dphi


def shooting_mesh(refine: int = 1, steps: int = UNIFORM_STEPS) -> np.ndarray:
    """Decreasing ``theta`` nodes: geometric near the pole, then uniform to 0."""
    ratio = GEOMETRIC_RATIO ** (1.0 / refine)
    count = int(math.ceil(math.log(GEOMETRIC_END / POLE_EPS) / math.log(ratio))) + 1
    sigma = np.geomspace(POLE_EPS, GEOMETRIC_END, count)
    uniform = np.linspace(math.pi / 2 - GEOMETRIC_END, 0.0, steps * refine + 1)
    return np.concatenate([math.pi / 2 - sigma[:-1], uniform])


def pole_start(alpha: float, ell: Ellipticity) -> tuple[float, float]:
    """Regular-branch state ``(phi, phi')`` at distance ``POLE_EPS`` below the pole."""
    A = alpha * (alpha + 1)
    # P(A) + (n-1) P(C0) = 0 at the pole, where all tangential eigenvalues equal C0
    pa = ell.lam * A if A > 0 else ell.Lam * A
    c0 = -pa / (ell.n - 1)
    c0 = c0 / ell.lam if c0 > 0 else c0 / ell.Lam
    dd0 = alpha + c0
    return 1.0 + 0.5 * dd0 * POLE_EPS ** 2, -dd0 * POLE_EPS


def trajectory(alpha: float, ell: Ellipticity, refine: int = 1, steps: int = UNIFORM_STEPS):
    """``(theta, phi, dphi)`` from the pole down to the boundary, ``theta`` decreasing."""
    mesh = shooting_mesh(refine, steps)
    ph0, dp0 = pole_start(alpha, ell)
    phi, dphi = _integrate(mesh, ph0, dp0, float(alpha), ell.lam, ell.Lam, float(ell.n))
    if not (np.all(np.isfinite(phi)) and np.all(np.isfinite(dphi))):
        raise InvalidTrajectoryError(f"trajectory blew up at alpha={alpha!r}")
    return mesh, phi, dphi


def first_zero(theta, phi) -> float | None:
    """Largest angle in ``(0, pi/2)`` where ``phi`` reaches zero, or None."""
    hit = np.flatnonzero(phi[:-1] <= 0)
    if hit.size == 0:
        return None
    i = int(hit[0])
    if i == 0:
        return float(theta[0])
    t0, t1, p0, p1 = theta[i - 1], theta[i], phi[i - 1], phi[i]
    return float(t0 + (t1 - t0) * p0 / (p0 - p1))


def shoot_residual(alpha: float, ell: Ellipticity, refine: int = 1,
                   steps: int = UNIFORM_STEPS, strict: bool = False) -> float:
    """Boundary value ``phi(0)`` of the pole-normalized trajectory (``phi(pi/2) = 1``).

    If ``phi`` vanishes at an interior angle ``theta*`` the trajectory is not
    admissible; with ``strict`` that raises, otherwise the residual is
    continued as ``-theta* phi'(theta*)``, which matches ``phi(0)`` to first
    order as ``theta* -> 0`` and keeps the sign pattern usable for bisection.
    """
    theta, phi, dphi = trajectory(alpha, ell, refine, steps)
    tz = first_zero(theta, phi)
    if tz is None:
        return float(phi[-1])
    if strict:
        raise InvalidTrajectoryError(f"phi vanishes at theta={tz:.6g} for alpha={alpha!r}")
    slope = float(np.interp(tz, theta[::-1], dphi[::-1]))
    return -tz * abs(slope)


def _normalize(theta, phi, dphi):
    sn = np.sin(theta)
    ratio = np.where(theta > 0, phi / np.where(theta > 0, sn, 1.0), dphi)
    top = float(np.max(ratio))
    return phi / top, dphi / top, float(np.min(ratio) / top)


def compute_alpha(ell: Ellipticity, tol: float = ALPHA_TOL, steps: int = UNIFORM_STEPS) -> ExponentResult:
    """Exponent by bisection on the shooting residual over ``[omega(n-1), omega n - 1]``."""
    om, n = ell.omega, ell.n
    low, high = om * (n - 1), om * n - 1

    def res(a):
        return shoot_residual(a, ell, steps=steps)

    a, b = low, high
    ra, rb = res(a), res(b)
    if not (ra == 0 or rb == 0 or ra * rb < 0):
        a, b = 0.95 * low, 1.05 * high
        ra, rb = res(a), res(b)
        if not (ra * rb <= 0):
            raise NumericalError(
                f"no sign change of the shooting residual on [{a}, {b}] "
                f"(residuals {ra:.3e}, {rb:.3e}); integration may be inaccurate")
    scan = [res(x) for x in np.linspace(a, b, SCAN_POINTS)]
    flips = int(np.count_nonzero(np.diff(np.sign(scan)) != 0))
    if flips > 1:
        raise NumericalError(f"shooting residual is not monotone on [{a}, {b}]: {scan}")
    if ra == 0:
        b = a
    elif rb == 0:
        a = b
    while b - a > tol * max(1.0, abs(a)):
        m = 0.5 * (a + b)
        rm = res(m)
        if rm == 0:
            a = b = m
            break
        if rm * ra < 0:
            b = m
        else:
            a, ra = m, rm
    alpha = 0.5 * (a + b)
    theta, phi, dphi = trajectory(alpha, ell, steps=steps)
    if first_zero(theta, phi) is not None:
        raise InvalidTrajectoryError(f"converged trajectory vanishes inside at alpha={alpha!r}")
    fine = shoot_residual(alpha, ell, refine=2, steps=steps)
    ph, dph, c = _normalize(theta, phi, dphi)
    return ExponentResult(alpha, low, high, float(phi[-1]), c, abs(fine - phi[-1]),
                          theta, ph, dph)


@dataclass(frozen=True)
class CriticalExponents:
    alpha: float
    p_lower: float
    p_star: float
    nonexistence_threshold: float
    existence_threshold: float
    whole_p_star: float | None
    whole_p_lower: float
    mplus_alpha_bracket: tuple | None

    def as_dict(self) -> dict:
        out = dict(self.__dict__)
        out["mplus_alpha_bracket"] = list(self.mplus_alpha_bracket) if self.mplus_alpha_bracket else None
        return out


def critical_exponents(alpha: float, ell: Ellipticity) -> CriticalExponents:
    """Halfspace and whole-space critical exponents given the scaling exponent."""
    if not alpha > 0:
        raise InputError(f"alpha must be positive, got {alpha!r}")
    om, n = ell.omega, ell.n
    on, om1 = om * n, om * (n - 1)
    whole_star = (om1 + 1) / (om1 - 1) if om1 > 1 else None
    s = (n - 1) / om
    whole_lower = -math.inf if s >= 1 else (s + 1) / (s - 1)
    mplus = (n / om - 1, (n - 1) / om) if n / om >= 1 else None
    return CriticalExponents(alpha, -1.0, 1 + 2 / alpha, (on + 1) / (on - 1),
                             (om1 + 2) / om1, whole_star, whole_lower, mplus)


__all__ = [
    "AngularState", "ExponentResult", "CriticalExponents", "homogeneous_hessian",
    "solve_angular_second", "shoot_residual", "trajectory", "first_zero", "shooting_mesh", "pole_start",
    "compute_alpha", "critical_exponents", "HomogeneousSolution",
]


class HomogeneousSolution(AxisymmetricFamily):
    """``|x|**-alpha phi(theta)`` built from a converged shooting run (values only)."""

    name = "phi_alpha"

    def __init__(self, result: ExponentResult):
        self.result = result
        self.degree = -result.alpha

    def params(self) -> dict:
        return {"alpha": self.result.alpha}

    def value(self, rho, t):
        rho, t = np.asarray(rho, dtype=float), np.asarray(t, dtype=float)
        theta = np.arcsin(np.clip(t, 0.0, 1.0))
        return rho ** -self.result.alpha * self.result.profile(theta)
