"""Boundary infimum curves and three-surfaces checks.

``mu(r)`` is the infimum of ``u/x_n`` over the gauge sublevel set ``B_r``;
for positive supersolutions it is attained on the curved part of the
boundary, parameterized by ``t`` through ``|x| = r t**k``. The halfball
variant ``m(r)`` takes the infimum over the upper half of the Euclidean
ball of radius ``r``.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError, InputError, PreconditionError
from .grids import T_FLOOR, representative_point, t_grid
from .matrix import Ellipticity
from .solutions import AxisymmetricFamily, GaugeD, radial_exponent

CHORD_SLACK = 1e-8
MU_COUNT = 2_000
TIE_REL = 1e-12


def _evaluate(u, rho, t, n):
    rho, t = np.broadcast_arrays(np.asarray(rho, dtype=float), np.asarray(t, dtype=float))
    if isinstance(u, AxisymmetricFamily):
        vals = np.asarray(u.value(rho, t), dtype=float)
    else:
        vals = np.asarray(u(representative_point(rho, t, n)), dtype=float)
    bad = ~(vals > 0)
    if np.any(bad):
        i = np.argmax(bad.ravel())
        raise DomainError(f"u is not positive at |x|={rho.ravel()[i]!r}, t={t.ravel()[i]!r}")
    return vals


def _source(u) -> str:
    if isinstance(u, AxisymmetricFamily):
        extra = ",".join(f"{k}={v:g}" for k, v in u.params().items() if isinstance(v, (int, float)))
        return f"{u.name}({extra})" if extra else u.name
    return getattr(u, "__name__", "oracle")


@dataclass
class MuCurve:
    r: np.ndarray
    mu: np.ndarray
    witness_t: np.ndarray
    ell: Ellipticity
    source: str = "samples"
    floor_hits: list = field(default_factory=list)

    def __post_init__(self):
        self.r = np.asarray(self.r, dtype=float)
        self.mu = np.asarray(self.mu, dtype=float)
        self.witness_t = np.asarray(self.witness_t, dtype=float)
        if not (self.r.shape == self.mu.shape == self.witness_t.shape):
            raise InputError("r, mu and witness_t must have the same length")

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "mu", "witness_t"])
        for row in zip(self.r, self.mu, self.witness_t):
            w.writerow([repr(float(v)) for v in row])
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        return text

    def as_dict(self) -> dict:
        return {"source": self.source, "r": self.r.tolist(), "mu": self.mu.tolist(),
                "witness_t": self.witness_t.tolist(), "floor_hits": self.floor_hits}


def _refine_min(f, lo, hi, x0, f0):
    """Bounded scalar refinement; keeps the grid value if it is not improved."""
    if hi <= lo:
        return x0, f0
    res = minimize_scalar(f, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    if res.success and res.fun < f0 - 1e-13 * abs(f0):
        return float(res.x), float(res.fun)
    return x0, f0


def boundary_infimum(u, ell: Ellipticity, r: float, t_count: int = MU_COUNT,
                     t_floor: float = T_FLOOR) -> tuple[float, float, bool]:
    """``(mu, witness_t, at_floor)`` for one radius."""
    k = GaugeD(ell).k
    n = ell.n
    t = t_grid(t_floor, 1.0, t_count)
    ratio = _evaluate(u, r * t ** k, t, n) / (r * t ** (k + 1))
    # near-ties go to the largest t, away from the flat boundary
    i = int(np.flatnonzero(ratio <= ratio.min() * (1 + TIE_REL))[-1])
    lt = np.log(t)

    def f(s):
        tt = math.exp(s)
        return float(_evaluate(u, r * tt ** k, tt, n) / (r * tt ** (k + 1)))

    s, val = _refine_min(f, lt[max(i - 1, 0)], lt[min(i + 1, t_count - 1)], lt[i], float(ratio[i]))
    return val, math.exp(s), i == 0


def mu_curve(u, ell: Ellipticity, radii, t_count: int = MU_COUNT) -> MuCurve:
    """``mu(r) = inf u/x_n`` over the gauge sublevel sets, one minimization per radius."""
    radii = np.asarray(radii, dtype=float)
    if radii.ndim != 1 or radii.size == 0 or np.any(radii <= 0):
        raise InputError("radii must be a nonempty list of positive numbers")
    mu, wt, hits = [], [], []
    for r in radii:
        m, t, floor = boundary_infimum(u, ell, float(r), t_count)
        mu.append(m)
        wt.append(t)
        if floor:
            hits.append(float(r))
    return MuCurve(radii, np.array(mu), np.array(wt), ell, _source(u), hits)


def _sorted_or_raise(r):
    if np.any(np.diff(r) <= 0):
        raise InputError("curve radii must be strictly increasing")


def _rel(x, y):
    return np.maximum(np.maximum(np.abs(x), np.abs(y)), np.finfo(float).tiny)


def chord_margins(r, m, s):
    """Relative margins ``(m_mid - chord)/scale`` of consecutive triples in the variable ``s``."""
    s0, s1, s2 = s[:-2], s[1:-1], s[2:]
    chord = (m[:-2] * (s1 - s2) + m[2:] * (s0 - s1)) / (s0 - s2)
    return (m[1:-1] - chord) / _rel(m[1:-1], chord)


def monotone_margins(g):
    """Relative increments of consecutive samples (negative means a decrease)."""
    return np.diff(g) / _rel(g[:-1], g[1:])


def check_three_surfaces(curve: MuCurve, slack: float = CHORD_SLACK) -> dict:
    """Concavity of ``mu`` in ``r**-(omega n)`` and monotonicity of ``r**(omega n) mu``."""
    if curve.r.size < 3:
        raise InputError("need at least 3 samples")
    _sorted_or_raise(curve.r)
    on = curve.ell.omega * curve.ell.n
    conc = chord_margins(curve.r, curve.mu, curve.r ** -on)
    mono = monotone_margins(curve.r ** on * curve.mu)
    dec = monotone_margins(curve.mu)
    return {
        "source": curve.source,
        "concavity": {"pass": bool(conc.min() >= -slack), "worst_margin": float(conc.min())},
        "monotonicity": {"pass": bool(mono.min() >= -slack), "worst_margin": float(mono.min())},
        "mu_nonincreasing": {"pass": bool(dec.max() <= 1e-10), "worst_increase": float(dec.max())},
        "slack": slack,
        "pass": bool(conc.min() >= -slack and mono.min() >= -slack),
    }


def ball_infimum(f, rho: float, count: int = MU_COUNT, floor: float = 1e-6) -> tuple[float, float]:
    """``(min, argmin)`` of a radial profile over ``(floor*rho, rho]``."""
    s = np.geomspace(floor * rho, rho, count)
    v = np.asarray(f(s), dtype=float)
    i = int(np.argmin(v))
    ls = np.log(s)

    def g(z):
        return float(f(np.array([math.exp(z)]))[0])

    z, val = _refine_min(g, ls[max(i - 1, 0)], ls[min(i + 1, count - 1)], ls[i], float(v[i]))
    return val, math.exp(z)


def _radial_profile(u):
    if isinstance(u, AxisymmetricFamily):
        return lambda s: np.asarray(u.value(s, np.ones_like(s)), dtype=float)
    return u


def whole_space_three_spheres(u, ell: Ellipticity, radii, slack: float = CHORD_SLACK) -> dict:
    """Check ``m(r) >= chord`` for ``r2 < r < r1`` with ``m`` the infimum over balls.

    ``u`` is a radial profile (callable on radii) or an axisymmetric family.
    The chord is taken in ``r**(2-beta)``, or ``log r`` when ``beta = 2``,
    with ``beta = omega(n-1) + 1``.
    """
    beta = radial_exponent(ell, "minus")
    if beta < 2 - 1e-12:
        raise PreconditionError(f"the chord needs beta >= 2, got beta={beta}")
    r2, r, r1 = (float(v) for v in radii)
    if not 0 < r2 < r < r1:
        raise InputError("need 0 < r2 < r < r1")
    f = _radial_profile(u)
    m2, m, m1 = (ball_infimum(f, rr)[0] for rr in (r2, r, r1))
    if abs(beta - 2) <= 1e-12:
        chord = (m2 * math.log(r1 / r) + m1 * math.log(r / r2)) / math.log(r1 / r2)
    else:
        e = 2 - beta
        chord = (m2 * (r ** e - r1 ** e) + m1 * (r2 ** e - r ** e)) / (r2 ** e - r1 ** e)
    scale = max(abs(m), abs(chord), np.finfo(float).tiny)
    margin = (m - chord) / scale
    return {"beta": beta, "radii": [r2, r, r1], "m": [m2, m, m1], "chord": chord,
            "margin": margin, "equality": abs(margin) <= slack, "pass": margin >= -slack}


def halfball_curve(u, ell: Ellipticity, radii, s_count: int = 200, t_count: int = 400) -> MuCurve:
    """``m(r) = inf u/x_n`` over upper halfballs ``|x| <= r``, by a (radius, t) grid."""
    radii = np.asarray(radii, dtype=float)
    n = ell.n
    t = t_grid(T_FLOOR, 1.0, t_count)
    mu, wt = [], []
    for r in radii:
        s = np.geomspace(1e-6 * r, r, s_count)
        S, T = np.meshgrid(s, t, indexing="ij")
        ratio = _evaluate(u, S, T, n) / (S * T)
        i, j = np.unravel_index(int(np.argmin(ratio)), ratio.shape)
        best, s0, t0 = float(ratio[i, j]), s[i], t[j]
        # one coordinate pass of bounded refinement
        fs = lambda z: float(_evaluate(u, math.exp(z), t0, n) / (math.exp(z) * t0))
        z, best = _refine_min(fs, math.log(s[max(i - 1, 0)]), math.log(s[min(i + 1, s_count - 1)]),
                              math.log(s0), best)
        s0 = math.exp(z)
        ft = lambda z: float(_evaluate(u, s0, math.exp(z), n) / (s0 * math.exp(z)))
        z, best = _refine_min(ft, math.log(t[max(j - 1, 0)]), math.log(t[min(j + 1, t_count - 1)]),
                              math.log(t0), best)
        mu.append(best)
        wt.append(math.exp(z))
    return MuCurve(radii, np.array(mu), np.array(wt), ell, _source(u))


def mplus_monotone(curve: MuCurve, ell: Ellipticity | None = None, slack: float = CHORD_SLACK) -> dict:
    """``r**((n-1)/omega + 1) m(r)`` nondecreasing, for supersolutions of the Pucci maximum."""
    ell = ell or curve.ell
    _sorted_or_raise(curve.r)
    e = (ell.n - 1) / ell.omega + 1
    mono = monotone_margins(curve.r ** e * curve.mu)
    return {"source": curve.source, "exponent": e, "worst_margin": float(mono.min()),
            "slack": slack, "pass": bool(mono.min() >= -slack)}


__all__ = [
    "MuCurve", "boundary_infimum", "mu_curve", "check_three_surfaces", "chord_margins",
    "monotone_margins", "ball_infimum", "whole_space_three_spheres", "halfball_curve",
    "mplus_monotone",
]
