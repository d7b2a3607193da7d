"""Liouville ranges for ``M(D^2 u) + u**p <= 0`` in the halfspace.

Classification by explicit thresholds, explicit positive supersolutions in
the existence ranges (certified on a grid), and the change of unknown
``u -> C u**m`` that moves a supersolution from exponent ``p`` to ``q``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, PreconditionError
from .grids import Grid, T_FLOOR, t_grid
from .matrix import Ellipticity, pucci_batch, rank_two_spectra
from .solutions import (Counterexample, PowerFunction, PowerOf, counterexample_large_p,
                        counterexample_negative_p)
from .verify import InequalityCertificate, certify_zero_order

REGIMES = ("nonexistence", "existence", "indeterminate")


@dataclass(frozen=True)
class LiouvilleVerdict:
    p: float
    regime: str
    thresholds: tuple
    operator: str
    unknown: bool = False

    def as_dict(self) -> dict:
        return {"p": self.p, "regime": self.regime, "thresholds": list(self.thresholds),
                "operator": self.operator, "unknown": self.unknown}


def thresholds(ell: Ellipticity, operator: str = "minus") -> tuple:
    """``(-1, nonexistence upper bound, existence lower bound)``; the last is None if open."""
    om, n = ell.omega, ell.n
    if operator == "minus":
        return (-1.0, (om * n + 1) / (om * n - 1), (om * (n - 1) + 2) / (om * (n - 1)))
    if operator == "plus":
        s, r = (n - 1) / om, n / om
        return (-1.0, (s + 2) / s, (r + 1) / (r - 1) if r > 1 else None)
    raise InputError(f"operator must be 'minus' or 'plus', got {operator!r}")


def classify(ell: Ellipticity, p: float, operator: str = "minus") -> LiouvilleVerdict:
    """Which range ``p`` falls into; the closed nonexistence interval includes its ends."""
    if not np.isfinite(p):
        raise InputError(f"p must be finite, got {p!r}")
    lo, upper, exist = th = thresholds(ell, operator)
    if lo <= p <= upper:
        return LiouvilleVerdict(p, "nonexistence", th, operator)
    if p < lo or (exist is not None and p > exist):
        return LiouvilleVerdict(p, "existence", th, operator)
    return LiouvilleVerdict(p, "indeterminate", th, operator, unknown=exist is None)


# -- counterexamples -----------------------------------------------------------------

def counterexample_mplus_large_p(p: float, ell: Ellipticity, b: float | None = None,
                                 t_count: int = 200, scan_count: int = 10_000) -> Counterexample:
    """``u = x_n**(1/omega) / |x|**b`` outside a ball, for the Pucci maximum.

    The normalized value ``h(t) = M^+(D^2 u) / (x_n**s |x|**(-b-2))`` is
    negative on ``(0, 1]``; the radius comes from the smallest ratio
    ``|h(t)| / t**(s(p-1))`` on a fine ``t`` grid, halved for margin.
    """
    om, n = ell.omega, ell.n
    r_ = n / om
    if not (r_ > 1 and p > (r_ + 1) / (r_ - 1)):
        raise PreconditionError(f"p={p!r} is outside the constructive range for the Pucci maximum")
    s = 1 / om
    lo, hi = s + 2 / (p - 1), s * (n + 1) - 1
    if b is None:
        b = 0.5 * (lo + hi)
    elif not lo < b < hi:
        raise InputError(f"b must lie in ({lo}, {hi}), got {b!r}")
    pf = PowerFunction(s, b)
    t = t_grid(T_FLOOR, 1.0, scan_count)
    a_, b_, c_, d_ = pf.hessian(np.ones_like(t), t)
    h = pucci_batch(rank_two_spectra(a_, b_, c_, d_, t, n), ell, "plus") / t ** s
    if np.any(h >= 0):
        raise PreconditionError("the Pucci maximum of the candidate is not negative on the grid")
    c = 0.5 * float(np.min(-h / t ** (s * (p - 1))))
    e = (s - b) * (p - 1) + 2
    radius = c ** (1 / e)
    grid = Grid("exterior", t_count=t_count, s_min=radius, s_max=1e3 * radius, s_count=64)
    return Counterexample(p, b, radius, pf, grid, "plus")


@dataclass
class CounterexampleReport:
    counterexample: Counterexample
    certificate: InequalityCertificate

    @property
    def passed(self) -> bool:
        return self.certificate.passed

    def as_dict(self) -> dict:
        return {"counterexample": self.counterexample.as_dict(), "domain": self.counterexample.grid.describe(),
                "certificate": self.certificate.to_json()}


def build_counterexample(ell: Ellipticity, p: float, operator: str = "minus",
                         tol: float = 1e-9, t_count: int = 200) -> CounterexampleReport:
    """Explicit positive supersolution for an existence-range ``p``, with its certificate."""
    verdict = classify(ell, p, operator)
    if verdict.regime != "existence":
        raise PreconditionError(f"p={p!r} is in the {verdict.regime} range for operator {operator!r}")
    if p < -1:
        ce = counterexample_negative_p(p, ell, operator=operator, t_count=t_count)
    elif operator == "minus":
        ce = counterexample_large_p(p, ell, t_count=t_count)
    else:
        ce = counterexample_mplus_large_p(p, ell, t_count=t_count)
    cert = certify_zero_order(ce.function, p, ce.grid, ell, tol=tol, operator=ce.operator)
    return CounterexampleReport(ce, cert)


def scaling_transport(u, p: float, q: float) -> PowerOf:
    """``v = m**(1/(q-1)) u**m`` with ``m = (p-1)/(q-1)``.

    If ``M(D^2 u) + u**p <= 0`` then ``M(D^2 v) + v**q <= 0`` on the same set,
    since ``0 < m < 1`` makes the gradient term in ``D^2 v`` nonpositive.
    """
    if not ((p > 1 and q > p) or (p < 1 and q < p)):
        raise InputError(f"need p > 1, q > p or p < 1, q < p; got p={p!r}, q={q!r}")
    m = (p - 1) / (q - 1)
    return PowerOf(u, m, m ** (1 / (q - 1)))


def transport_counterexample(report: CounterexampleReport, q: float, ell: Ellipticity,
                             tol: float = 1e-9) -> InequalityCertificate:
    """Certificate for the transported function on the original domain."""
    ce = report.counterexample
    v = scaling_transport(ce.function, ce.p, q)
    return certify_zero_order(v, q, ce.grid, ell, tol=tol, operator=ce.operator)


def threshold_gap(ell: Ellipticity) -> float:
    """Width of the indeterminate strip for the Pucci minimum."""
    _, a, b = thresholds(ell, "minus")
    return b - a


__all__ = [
    "LiouvilleVerdict", "CounterexampleReport", "REGIMES", "thresholds", "classify",
    "build_counterexample", "counterexample_mplus_large_p", "scaling_transport",
    "transport_counterexample", "threshold_gap",
]
