"""Grid certification of pointwise sign conditions.

A certificate records the worst normalized violation over a finite grid.
It is a numerical certificate for the sampled points, not a proof.

Residuals are divided by ``Lam * sum_i |mu_i|`` (plus the size of any
zero-order term), where ``mu_i`` are the Hessian eigenvalues at the point.
That keeps the comparison with ``tol`` meaningful while the raw values span
many orders of magnitude across a grid.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InputError, NumericalError, PreconditionError
from .grids import Grid, polar, t_grid
from .matrix import (Ellipticity, pucci, pucci_batch, rank_two_eigenvalues, rank_two_spectra,
                     spectral_mass)
from .solutions import AxisymmetricFamily, GammaBarrier, PowerFunction, dist_feasible_on

INEQUALITY_IDS = ("m-semi", "super-hat", "eqGamma", "mmeq-supersolution", "dist", "mplus-variants")
TOL_CLOSED_FORM = 1e-10
TOL_FINITE_DIFF = 1e-6


@dataclass
class InequalityCertificate:
    id: str
    params: dict
    grid: dict
    worst_violation: float
    tolerance: float
    verdict: str
    witness: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def margin(self) -> float:
        return self.tolerance - self.worst_violation

    def to_json(self) -> dict:
        return {"id": self.id, "params": self.params, "grid": self.grid,
                "worst_violation": self.worst_violation, "tolerance": self.tolerance,
                "verdict": self.verdict, "witness": self.witness}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _certificate(ineq_id, params, grid_desc, violation, tol, rho, t, n) -> InequalityCertificate:
    if ineq_id not in INEQUALITY_IDS:
        raise InputError(f"unknown inequality id {ineq_id!r}")
    i = int(np.argmax(violation))
    worst = float(violation[i])
    x = np.zeros(n)
    x[0] = rho[i] * math.sqrt(max(1 - t[i] ** 2, 0.0))
    x[-1] = rho[i] * t[i]
    witness = {"grid_index": i, "rho": float(rho[i]), "t": float(t[i]), "point": x.tolist()}
    verdict = "pass" if worst <= tol else "fail"
    return InequalityCertificate(ineq_id, params, grid_desc, worst, tol, verdict, witness)


def _hessian_spectra(family, rho, t, n):
    """Stacked spectra of the family's Hessians on ``(rho, t)``."""
    if isinstance(family, AxisymmetricFamily):
        a, b, c, d = family.hessian(rho, t)
        mu = rank_two_spectra(a, b, c, d, t, n)
        bad = ~np.all(np.isfinite(mu), axis=-1)
        if np.any(bad):
            i = int(np.argmax(bad))
            raise NumericalError(f"jet evaluation failed at rho={rho[i]!r}, t={t[i]!r}")
        return mu
    # generic oracle: a callable returning a Jet2 at one point
    out = np.empty((rho.size, n))
    for i, (r_, t_) in enumerate(zip(rho, t)):
        x = np.zeros(n)
        x[0] = r_ * math.sqrt(max(1 - t_ * t_, 0.0))
        x[-1] = r_ * t_
        try:
            out[i] = rank_two_eigenvalues(family(x).hessian)
        except Exception as exc:
            raise NumericalError(f"jet evaluation failed at {x.tolist()}: {exc}") from exc
    return out


def _values(family, rho, t, n):
    if isinstance(family, AxisymmetricFamily):
        return np.asarray(family.value(rho, t), dtype=float)
    out = np.empty(rho.size)
    for i, (r_, t_) in enumerate(zip(rho, t)):
        x = np.zeros(n)
        x[0] = r_ * math.sqrt(max(1 - t_ * t_, 0.0))
        x[-1] = r_ * t_
        out[i] = family(x).value
    return out


def _normalized_pucci(family, ell, rho, t, operator):
    mu = _hessian_spectra(family, rho, t, ell.n)
    val = pucci_batch(mu, ell, operator)
    scale = ell.Lam * spectral_mass(mu)
    return val, scale


def _family_params(family) -> dict:
    if isinstance(family, AxisymmetricFamily):
        return {"name": family.name, **family.params()}
    return {"name": getattr(family, "__name__", "oracle")}


def certify_sign(family, ell: Ellipticity, sign: str, grid: Grid | None = None,
                 tol: float = TOL_CLOSED_FORM, operator: str = "minus",
                 inequality_id: str | None = None) -> InequalityCertificate:
    """Certify ``M(D^2 u) >= 0`` (``sign='ge'``) or ``<= 0`` (``sign='le'``) on a grid.

    ``family`` is an :class:`AxisymmetricFamily` (vectorized path) or any
    callable mapping a point to a :class:`Jet2`.
    """
    if sign not in ("ge", "le"):
        raise InputError(f"sign must be 'ge' or 'le', got {sign!r}")
    grid = grid or Grid()
    rho, t = grid.polar_points()
    if rho.size == 0:
        raise InputError("empty grid")
    val, scale = _normalized_pucci(family, ell, rho, t, operator)
    resid = np.where(scale > 0, val / np.where(scale > 0, scale, 1.0), 0.0)
    violation = -resid if sign == "ge" else resid
    if inequality_id is None:
        inequality_id = "m-semi" if operator == "minus" and sign == "ge" else (
            "super-hat" if operator == "minus" else "mplus-variants")
    params = {"ell": ell.as_dict(), "sign": sign, "operator": operator, "family": _family_params(family)}
    return _certificate(inequality_id, params, grid.describe(), violation, tol, rho, t, ell.n)


def gamma_violation(gb: GammaBarrier, rho, t):
    """Normalized ``-M^-(D^2 Gamma) - rhs`` on ``(rho, t)``.

    Evaluated on the unit gauge level: with ``x = d y`` and ``d(y) = 1``,
    ``D^2 Gamma(x) = d**-(omega n + 1) (D^2 Gamma(y) + a log d D^2 Phi(y))``
    and the right side carries the same power of ``d``, so the ratio is
    computed without under- or overflow at large ``d``.
    """
    om, n = gb.ell.omega, gb.ell.n
    rho, t = np.broadcast_arrays(np.asarray(rho, dtype=float), np.asarray(t, dtype=float))
    d = gb.gauge.from_polar(rho, t)
    y = rho / d
    phi = PowerFunction(om, om * (n + 1) - 1)
    coef = [g + gb.a * np.log(d) * p for g, p in zip(gb.hessian(y, t), phi.hessian(y, t))]
    mu = rank_two_spectra(*coef, t, n)
    val = pucci_batch(mu, gb.ell, "minus")
    scale = gb.ell.Lam * spectral_mass(mu)
    rhs = gb.rhs(y, t)
    return (-val - rhs) / (scale + rhs)


def certify_gamma(gb: GammaBarrier, d_max: float = 1e3, tol: float = TOL_CLOSED_FORM,
                  d_min: float | None = None, t_count: int = 10_000,
                  d_count: int = 60) -> InequalityCertificate:
    """Certify the barrier inequality on ``d in [d_min, d_max]`` (default ``d_min = d0``)."""
    d_min = gb.d0 if d_min is None else d_min
    if not d_max > d_min:
        raise PreconditionError(f"need d_max > d_min, got d_min={d_min}, d_max={d_max}")
    grid = Grid("gauge", t_count=t_count, s_min=d_min, s_max=d_max, s_count=d_count, k=gb.gauge.k)
    rho, t = grid.polar_points()
    violation = gamma_violation(gb, rho, t)
    params = {"ell": gb.ell.as_dict(), **gb.params(), "max_slack": float(np.max(-violation)),
              "tail": gamma_tail(gb, d_max)}
    return _certificate("eqGamma", params, grid.describe(), violation, tol, rho, t, gb.ell.n)


def find_gamma_d0(gb: GammaBarrier, tol: float = TOL_CLOSED_FORM, t_count: int = 10_000,
                  d_count: int = 25, span: float = 1e6, rel_step: float = 1e-3,
                  max_doublings: int = 60) -> float:
    """Smallest ``d0`` (to ``rel_step``) whose range ``[d0, span*d0]`` certifies.

    Doubling from 1, then bisection between the last failing and first
    passing candidate.
    """

    def passes(d):
        grid = Grid("gauge", t_count=t_count, s_min=d, s_max=span * d, s_count=d_count, k=gb.gauge.k)
        return bool(np.max(gamma_violation(gb, *grid.polar_points())) <= tol)

    hi = 1.0
    if passes(hi):
        return hi
    for _ in range(max_doublings):
        lo, hi = hi, 2 * hi
        if passes(hi):
            break
    else:
        raise NumericalError("no d0 found below 2**%d" % max_doublings)
    while hi - lo > rel_step * lo:
        mid = 0.5 * (lo + hi)
        lo, hi = (lo, mid) if passes(mid) else (mid, hi)
    return hi


def gamma_tail(gb: GammaBarrier, d_from: float, t_count: int = 2_000, decades: int = 12) -> dict:
    """Worst normalized violation on a coarse grid beyond ``d_from``.

    For large ``d`` the log terms dominate both Hessian pieces and the
    normalized residual settles to a function of ``t`` alone; the sampled
    decades show that trend. Capped before ``d**-(omega n + 2)`` underflows.
    """
    om, n = gb.ell.omega, gb.ell.n
    cap = 10 ** (250 / (om * n + 2))
    d_to = min(d_from * 10.0 ** decades, cap)
    if not d_to > d_from:
        return {"d_from": d_from, "d_to": d_from, "worst_by_decade": []}
    ds = np.geomspace(d_from, d_to, max(2, int(round(math.log10(d_to / d_from))) + 1))
    t = t_grid(count=t_count)
    worst = [float(np.max(gamma_violation(gb, d * t ** gb.gauge.k, t))) for d in ds]
    return {"d_from": float(d_from), "d_to": float(d_to), "worst_by_decade": worst}


def certify_zero_order(u, p: float, grid: Grid, ell: Ellipticity, tol: float = 1e-9,
                       operator: str = "minus") -> InequalityCertificate:
    """Certify ``M(D^2 u) + u**p <= 0`` on a grid where ``u > 0``."""
    rho, t = grid.polar_points()
    vals = _values(u, rho, t, ell.n)
    bad = ~(vals > 0)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise DomainError(f"u is not positive at rho={rho[i]!r}, t={t[i]!r} (u={vals[i]!r})")
    val, scale = _normalized_pucci(u, ell, rho, t, operator)
    zero = vals ** p
    violation = (val + zero) / (scale + zero)
    params = {"ell": ell.as_dict(), "p": p, "operator": operator, "family": _family_params(u)}
    return _certificate("mmeq-supersolution", params, grid.describe(), violation, tol, rho, t, ell.n)


@dataclass
class RegionScan:
    alphas: np.ndarray
    betas: np.ndarray
    feasible: np.ndarray
    named_points: dict
    alpha_le_one_infeasible: bool | None

    def to_json(self) -> dict:
        return {"alphas": self.alphas.tolist(), "betas": self.betas.tolist(),
                "feasible": self.feasible.astype(int).tolist(), "named_points": self.named_points,
                "alpha_le_one_infeasible": self.alpha_le_one_infeasible}


def dist_s_grid(count: int = 1_000) -> np.ndarray:
    """Grid in ``s = (x_n/|x|)^2``: the point 0 plus a geometric grid on [1e-12, 1]."""
    return np.concatenate([[0.0], t_grid(1e-6, 1.0, count - 1) ** 2])


def feasible_region_scan(ell: Ellipticity, alpha_range=(0.25, 6.0), beta_range=(0.25, 12.0),
                         resolution: int | tuple = 48, s_count: int = 1_000) -> RegionScan:
    """Which ``(alpha, beta)`` make ``x_n**alpha/|x|**beta`` a subsolution on the whole grid."""
    na, nb = (resolution, resolution) if np.isscalar(resolution) else resolution
    if min(alpha_range) <= 0 or min(beta_range) <= 0:
        raise InputError("alpha and beta ranges must be positive")
    alphas = np.linspace(*alpha_range, na)
    betas = np.linspace(*beta_range, nb)
    s = dist_s_grid(s_count)
    feas = np.array([[dist_feasible_on(a, b, ell, s) for b in betas] for a in alphas])
    om, n = ell.omega, ell.n
    a2 = 2 * om * (n - 1) - 1
    named = {
        "subsolution_exponents": {"alpha": om, "beta": om * (n + 1) - 1,
                                  "feasible": dist_feasible_on(om, om * (n + 1) - 1, ell, s)},
        "beta_twice_alpha": {"alpha": a2, "beta": 2 * a2,
                             "feasible": dist_feasible_on(a2, 2 * a2, ell, s)},
    }
    strip = None
    if om > 1:
        mask = alphas <= 1
        strip = bool(not feas[mask].any()) if mask.any() else None
    return RegionScan(alphas, betas, feas, named, strip)


def fd_hessian(f, x, h: float | None = None) -> np.ndarray:
    """Central-difference Hessian with one Richardson extrapolation step.

    ``f`` maps a point to a scalar; the step defaults to ``1e-3 * max(1, |x|)``.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    h = 1e-3 * max(1.0, float(np.linalg.norm(x))) if h is None else h

    def central(step):
        H = np.empty((n, n))
        f0 = f(x)
        for i in range(n):
            ei = np.zeros(n)
            ei[i] = step
            H[i, i] = (f(x + ei) - 2 * f0 + f(x - ei)) / step ** 2
            for j in range(i + 1, n):
                ej = np.zeros(n)
                ej[j] = step
                H[i, j] = H[j, i] = (f(x + ei + ej) - f(x + ei - ej) - f(x - ei + ej)
                                     + f(x - ei - ej)) / (4 * step * step)
        return H

    coarse, fine = central(2 * h), central(h)
    return fine + (fine - coarse) / 3.0


def pucci_of_matrix(M, ell: Ellipticity, operator: str = "minus") -> float:
    """Pucci operator of a dense symmetric matrix via a LAPACK eigensolver."""
    return pucci(np.sort(np.linalg.eigvalsh(np.asarray(M, dtype=float)))[::-1], ell, operator)


__all__ = [
    "InequalityCertificate", "RegionScan", "certify_sign", "certify_gamma", "certify_zero_order",
    "feasible_region_scan", "find_gamma_d0", "fd_hessian", "gamma_tail", "gamma_violation", "dist_s_grid",
    "pucci_of_matrix", "polar", "PowerFunction",
]
