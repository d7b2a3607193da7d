"""Explicit function families in the halfspace with closed-form derivatives.

All families here are axisymmetric about the ``x_n`` axis, so their Hessians
are combinations of ``xh (x) xh``, ``e_n (x) e_n``, ``xh (x) e_n + e_n (x) xh``
and the identity, with ``xh = x/|x|``. A family reports those four
coefficients as vectorized functions of ``(rho, t) = (|x|, x_n/|x|)``; the
pointwise :meth:`AxisymmetricFamily.jet` packages them as a :class:`Jet2`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import ConsistencyError, DomainError, InputError, PreconditionError
from .grids import Grid, polar
from .matrix import Ellipticity, RankTwoForm

INEQ1_SLACK = 1e-9
DIST_SLACK = 1e-12
LOG_SIZE_CAP = math.log(1e100)


@dataclass(frozen=True)
class Jet2:
    """Value, gradient and Hessian of a function at one point."""

    point: np.ndarray = field(repr=False)
    value: float
    gradient: np.ndarray = field(repr=False)
    hessian: RankTwoForm


def _check_halfspace(x) -> np.ndarray:
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size < 2:
        raise InputError("points must have dimension >= 2")
    if not x[-1] > 0:
        raise DomainError(f"point must lie in the open halfspace x_n > 0, got x_n={x[-1]!r}")
    return x


class AxisymmetricFamily:
    """Base class: subclasses implement ``value``, ``gradient`` and ``hessian``.

    ``gradient(rho, t)`` returns ``(g_r, g_n)`` with ``Du = g_r xh + g_n e_n``;
    ``hessian(rho, t)`` returns ``(a, b, c, d)`` for the basis above.
    """

    #: homogeneity degree, when the family is positively homogeneous
    degree: float | None = None
    name = "family"

    def value(self, rho, t):
        raise NotImplementedError

    def gradient(self, rho, t):
        raise NotImplementedError

    def hessian(self, rho, t):
        raise NotImplementedError

    def params(self) -> dict:
        return {}

    def __call__(self, x):
        rho, t = polar(x)
        return self.value(rho, t)

    def jet(self, x) -> Jet2:
        x = _check_halfspace(x)
        n = x.size
        rho = float(np.linalg.norm(x))
        t = x[-1] / rho
        xh = x / rho
        en = np.zeros(n)
        en[-1] = 1.0
        g_r, g_n = (float(g) for g in self.gradient(rho, t))
        a, b, c, d = (float(h) for h in self.hessian(rho, t))
        return Jet2(x, float(self.value(rho, t)), g_r * xh + g_n * en, RankTwoForm(a, b, c, d, xh, en))

    def __mul__(self, coef: float) -> "LinearCombination":
        return LinearCombination(((float(coef), self),))

    __rmul__ = __mul__

    def __neg__(self) -> "LinearCombination":
        return self * -1.0

    def __add__(self, other: "AxisymmetricFamily") -> "LinearCombination":
        return LinearCombination(_terms(self) + _terms(other))


def _terms(f: AxisymmetricFamily):
    if isinstance(f, LinearCombination):
        return f.terms
    return ((1.0, f),)


@dataclass(frozen=True, eq=False)
class LinearCombination(AxisymmetricFamily):
    terms: tuple = ()

    name = "combination"

    @property
    def degree(self):
        degrees = {f.degree for _, f in self.terms}
        return degrees.pop() if len(degrees) == 1 else None

    def value(self, rho, t):
        return sum(c * f.value(rho, t) for c, f in self.terms)

    def gradient(self, rho, t):
        parts = [f.gradient(rho, t) for _, f in self.terms]
        return tuple(sum(c * p[i] for (c, _), p in zip(self.terms, parts)) for i in range(2))

    def hessian(self, rho, t):
        parts = [f.hessian(rho, t) for _, f in self.terms]
        return tuple(sum(c * p[i] for (c, _), p in zip(self.terms, parts)) for i in range(4))

    def params(self) -> dict:
        return {"terms": [{"coef": c, "name": f.name, **f.params()} for c, f in self.terms]}


@dataclass(frozen=True, eq=False)
class PowerFunction(AxisymmetricFamily):
    """``x_n**alpha / |x|**beta``."""

    alpha: float
    beta: float

    name = "power"

    @property
    def degree(self) -> float:
        return self.alpha - self.beta

    def params(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta}

    def value(self, rho, t):
        rho, t = np.asarray(rho, dtype=float), np.asarray(t, dtype=float)
        return t ** self.alpha * rho ** (self.alpha - self.beta)

    def gradient(self, rho, t):
        al, be = self.alpha, self.beta
        rho, t = np.asarray(rho, dtype=float), np.asarray(t, dtype=float)
        u = self.value(rho, t)
        return -be * u / rho, al * u / (rho * t)

    def hessian(self, rho, t):
        al, be = self.alpha, self.beta
        rho, t = np.asarray(rho, dtype=float), np.asarray(t, dtype=float)
        s = self.value(rho, t) / rho ** 2
        return (s * be * (be + 2), s * al * (al - 1) / t ** 2, -s * al * be / t, -s * be)

    def mui(self, rho, t) -> np.ndarray:
        """Hessian eigenvalues ``(mu_1, mu_2, mu_3, ...)`` from the closed-form expressions."""
        al, be = self.alpha, self.beta
        rho, t = np.asarray(rho, dtype=float), np.asarray(t, dtype=float)
        s = self.value(rho, t) / rho ** 2
        R2 = 1.0 / t ** 2
        base = be * (be - 2 * al) + al * (al - 1) * R2
        disc = (be * (be - 2 * al + 2) + al * (al - 1) * R2) ** 2 \
            + 4 * al * be * (be - 2 * al + 2) * R2 * (1 - t ** 2)
        root = np.sqrt(np.maximum(disc, 0.0))
        return s * (base + root) / 2, s * (base - root) / 2, -be * s


def power_jet(pf: PowerFunction, x) -> Jet2:
    return pf.jet(x)


def _power_radicand(al, be, t):
    R2 = 1.0 / np.asarray(t, dtype=float) ** 2
    return (be * (be - 2 * al) + al * (al - 1) * R2) ** 2 + 4 * be * (be - al + 1) * (be - 2 * al + al * R2)


def ineq1_lower_bound(pf: PowerFunction, ell: Ellipticity, t):
    """Lower bound for the normalized ``M^-(D^2 Phi) |x|^(beta+2) / x_n^alpha``."""
    al, be, om, n = pf.alpha, pf.beta, ell.omega, ell.n
    R2 = 1.0 / np.asarray(t, dtype=float) ** 2
    return ell.lam * (be * (be - 2 * al - om * (n - 1) + 1) + al * (al - om) * R2)


def pucci_on_power(pf: PowerFunction, ell: Ellipticity, t):
    """``M^-(D^2 Phi) * |x|^(beta+2) / x_n^alpha`` at ``x_n/|x| = t``, for ``beta >= alpha``.

    Uses the closed form valid under the sign split ``mu_1 >= 0 >= mu_i``
    (i >= 2) and checks it against :func:`ineq1_lower_bound`.
    """
    al, be, om, n = pf.alpha, pf.beta, ell.omega, ell.n
    if be < al:
        raise PreconditionError(f"need beta >= alpha for the sign split, got alpha={al}, beta={be}")
    t = np.asarray(t, dtype=float)
    if np.any((t <= 0) | (t > 1)):
        raise DomainError("t = x_n/|x| must lie in (0, 1]")
    R2 = 1.0 / t ** 2
    root = np.sqrt(np.maximum(_power_radicand(al, be, t), 0.0))
    lin = be * (0.5 * (om + 1) * (be - 2 * al) - om * (n - 2))
    quad = 0.5 * al * (al - 1) * (om + 1) * R2
    val = ell.lam * (lin + quad - 0.5 * (om - 1) * root)
    scale = ell.lam * (np.abs(lin) + np.abs(quad) + 0.5 * (om - 1) * root + 1.0)
    gap = ineq1_lower_bound(pf, ell, t) - val
    if np.any(gap > INEQ1_SLACK * scale):
        i = int(np.argmax(gap / scale))
        raise ConsistencyError(f"lower bound exceeds closed form at t={np.ravel(t)[i]!r}")
    return val if val.ndim else float(val)


# -- (alpha, beta) feasibility ------------------------------------------------

def _dist_coefficients(al, be, om, n):
    L1 = be * ((om + 1) * (be - 2 * al) - 2 * om * (n - 2))
    L0 = al * (al - 1) * (om + 1)
    C2 = be * (be + 2) * (be - 2 * al) * (be - 2 * al + 2)
    C1 = 2 * al * be * (al + 1) * (be - 2 * al + 2)
    C0 = al ** 2 * (al - 1) ** 2
    return L0, L1, C0, C1, C2


def dist_gap(alpha, beta, ell: Ellipticity, s):
    """``(lhs - rhs, scale)`` of the feasibility inequality at ``s = (x_n/|x|)^2``."""
    om = ell.omega
    L0, L1, C0, C1, C2 = _dist_coefficients(alpha, beta, om, ell.n)
    s = np.asarray(s, dtype=float)
    lhs = L1 * s + L0
    rad = np.maximum(C2 * s * s + C1 * s + C0, 0.0)
    rhs = (om - 1) * np.sqrt(rad)
    scale = np.abs(L1) * s + np.abs(L0) + rhs + 1.0
    return lhs - rhs, scale


def _dist_limit_at_zero(alpha, beta, om, n) -> bool:
    """Sign of lhs - rhs as ``s -> 0+`` when both sides agree at ``s = 0``."""
    L0, L1, C0, C1, C2 = _dist_coefficients(alpha, beta, om, n)
    if om == 1:
        return L1 >= 0
    if C0 > 0:
        return L1 - (om - 1) * C1 / (2 * math.sqrt(C0)) >= -DIST_SLACK * (abs(L1) + 1)
    if C1 > 0:
        return False
    return L1 - (om - 1) * math.sqrt(max(C2, 0.0)) >= -DIST_SLACK * (abs(L1) + 1)


def dist_feasible(alpha: float, beta: float, ell: Ellipticity, t: float) -> bool:
    """Whether ``x_n**alpha/|x|**beta`` passes the subsolution test at ``t = (x_n/|x|)^2``.

    ``t = 0`` is the boundary of the halfspace; when both sides coincide
    there the tie is resolved by the one-sided limit ``t -> 0+``.
    """
    if not (alpha > 0 and beta > 0):
        raise InputError("alpha and beta must be positive")
    if not 0 <= t <= 1:
        raise DomainError(f"t must lie in [0, 1], got {t!r}")
    gap, scale = dist_gap(alpha, beta, ell, t)
    if t == 0 and abs(gap) <= DIST_SLACK * scale:
        return _dist_limit_at_zero(alpha, beta, ell.omega, ell.n)
    return bool(gap >= -DIST_SLACK * scale)


def dist_feasible_on(alpha: float, beta: float, ell: Ellipticity, s_values) -> bool:
    """:func:`dist_feasible` at every point of ``s_values``."""
    s_values = np.asarray(s_values, dtype=float)
    gap, scale = dist_gap(alpha, beta, ell, s_values)
    ok = gap >= -DIST_SLACK * scale
    at_zero = (s_values == 0) & (np.abs(gap) <= DIST_SLACK * scale)
    if np.any(at_zero):
        ok = ok & ~at_zero | (at_zero & _dist_limit_at_zero(alpha, beta, ell.omega, ell.n))
    return bool(np.all(ok))


# -- the gauge d(x) --------------------------------------------------------------

@dataclass(frozen=True)
class GaugeD:
    """``d(x) = (|x|/x_n)**k |x|`` with ``k = (Lam - lam)/(Lam n)``."""

    ell: Ellipticity

    @property
    def k(self) -> float:
        return (self.ell.Lam - self.ell.lam) / (self.ell.Lam * self.ell.n)

    def from_polar(self, rho, t):
        return np.asarray(rho, dtype=float) * np.asarray(t, dtype=float) ** (-self.k)


def gauge_value(g: GaugeD, x) -> float:
    x = _check_halfspace(x)
    rho = float(np.linalg.norm(x))
    return float((rho / x[-1]) ** g.k * rho)


def in_sublevel(g: GaugeD, x, r: float) -> bool:
    return gauge_value(g, x) < r


def boundary_point(g: GaugeD, r: float, t: float) -> np.ndarray:
    """The point of ``{d = r}`` in the ``(x_1, x_n)`` plane with ``x_n/|x| = t``."""
    if not r > 0:
        raise DomainError(f"r must be positive, got {r!r}")
    if not 0 < t <= 1:
        raise DomainError(f"t must lie in (0, 1], got {t!r}")
    rho = r * t ** g.k
    x = np.zeros(g.ell.n)
    x[0] = rho * math.sqrt(max(1 - t * t, 0.0))
    x[-1] = rho * t
    return x


# -- radial solutions -----------------------------------------------------------

def radial_exponent(ell: Ellipticity, operator: str = "minus") -> float:
    if operator == "minus":
        return ell.omega * (ell.n - 1) + 1
    if operator == "plus":
        return (ell.n - 1) / ell.omega + 1
    raise InputError(f"operator must be 'minus' or 'plus', got {operator!r}")


@dataclass(frozen=True, eq=False)
class NegLog(AxisymmetricFamily):
    """``-log |x|``."""

    name = "neglog"

    def value(self, rho, t):
        return -np.log(np.asarray(rho, dtype=float)) + 0 * np.asarray(t, dtype=float)

    def gradient(self, rho, t):
        rho = np.asarray(rho, dtype=float)
        return -1.0 / rho, 0.0 * rho

    def hessian(self, rho, t):
        rho = np.asarray(rho, dtype=float) + 0 * np.asarray(t, dtype=float)
        inv = 1.0 / rho ** 2
        return 2 * inv, 0 * inv, 0 * inv, -inv


def radial_family(ell: Ellipticity, operator: str = "minus") -> AxisymmetricFamily:
    """The radial solution of the homogeneous Pucci equation away from the origin."""
    beta = radial_exponent(ell, operator)
    if math.isclose(beta, 2.0, rel_tol=0, abs_tol=1e-14):
        return NegLog()
    power = PowerFunction(0.0, beta - 2)
    return -power if beta < 2 else power


def radial_solution(x, ell: Ellipticity, operator: str = "minus") -> float:
    x = np.asarray(x, dtype=float)
    rho = float(np.linalg.norm(x))
    if rho == 0:
        raise DomainError("the radial solution is singular at the origin")
    return float(radial_family(ell, operator).value(rho, 1.0))


# -- the logarithmic barrier ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GammaOne(AxisymmetricFamily):
    """``x_n / d**(omega n) * log d``."""

    ell: Ellipticity

    name = "gamma1"

    def _parts(self, rho, t):
        om, n = self.ell.omega, self.ell.n
        k = GaugeD(self.ell).k
        rho, t = np.broadcast_arrays(np.asarray(rho, dtype=float), np.asarray(t, dtype=float))
        d = rho * t ** (-k)
        return om, n, k, rho, t, d, np.log(d)

    def value(self, rho, t):
        om, n, k, rho, t, d, L = self._parts(rho, t)
        return rho * t * d ** (-om * n) * L

    def gradient(self, rho, t):
        om, n, k, rho, t, d, L = self._parts(rho, t)
        phi = PowerFunction(om, om * (n + 1) - 1)
        p_r, p_n = phi.gradient(rho, t)
        u = phi.value(rho, t)
        return L * p_r + u * (k + 1) / rho, L * p_n - u * k / (rho * t)

    def hessian(self, rho, t):
        om, n, k, rho, t, d, L = self._parts(rho, t)
        R = 1.0 / t
        pref = (k + 1) * rho * t * d ** (-(om * n + 2)) * R ** (2 * k)
        E = om * om * n * L - 2 * om + 1
        a = pref * (om * n * (om * (n + 1) + 1) * L - 2 * om * (n + 1))
        b = pref * k / (k + 1) * R ** 2 * E
        c = -pref * R * E
        dd = -pref * (om * n * L - 1)
        return a, b, c, dd

    def eigenvalues(self, rho, t) -> np.ndarray:
        """Hessian eigenvalues from the closed-form expressions, shape ``(..., n)``."""
        om, n, k, rho, t, d, L = self._parts(rho, t)
        R = 1.0 / t
        pref = (k + 1) * rho * t * d ** (-(om * n + 2)) * R ** (2 * k)
        E = om * om * n * L - 2 * om + 1
        F = om * n * L - 1
        disc = ((om * (n - 1) + 1) * (om * n * L - 2) + k / (k + 1) * R ** 2 * E) ** 2 \
            + 4 * (om * (n - 1) + 1) / (om * (n + 1) - 1) * (1 - t ** 2) * R ** 2 * E * F
        base = om * n * (om * (n - 1) - 1) * L - 2 * om * (n - 1) + k / (k + 1) * R ** 2 * E
        root = np.sqrt(np.maximum(disc, 0.0))
        cols = [0.5 * pref * (base + root), 0.5 * pref * (base - root)] + [-pref * F] * (n - 2)
        return np.stack(cols, axis=-1)


@dataclass(frozen=True, eq=False)
class GammaBarrier(AxisymmetricFamily):
    """``x_n / d**(omega n) * (a log d + b (x_n/|x|)**2)`` and its constants."""

    ell: Ellipticity
    c1: float
    c2: float
    c3: float
    a: float
    b: float
    d0: float = 1.0

    name = "gamma"

    @property
    def gauge(self) -> GaugeD:
        return GaugeD(self.ell)

    @property
    def rhs_exponent(self) -> float:
        on = self.ell.omega * self.ell.n
        return (on + 1) / (on - 1)

    def _combo(self) -> LinearCombination:
        om, n = self.ell.omega, self.ell.n
        return self.a * GammaOne(self.ell) + self.b * PowerFunction(om + 2, om * (n + 1) + 1)

    def value(self, rho, t):
        return self._combo().value(rho, t)

    def gradient(self, rho, t):
        return self._combo().gradient(rho, t)

    def hessian(self, rho, t):
        return self._combo().hessian(rho, t)

    def rhs(self, rho, t):
        """``(x_n / d**(omega n))**((omega n + 1)/(omega n - 1))``."""
        om, n = self.ell.omega, self.ell.n
        rho, t = np.asarray(rho, dtype=float), np.asarray(t, dtype=float)
        d = self.gauge.from_polar(rho, t)
        return (rho * t * d ** (-om * n)) ** self.rhs_exponent

    def params(self) -> dict:
        return {"c1": self.c1, "c2": self.c2, "c3": self.c3, "a": self.a, "b": self.b, "d0": self.d0}


def gamma_constants(ell: Ellipticity) -> dict:
    om, n, lam, Lam = ell.omega, ell.n, ell.lam, ell.Lam
    if om * (n - 1) < 1:
        raise PreconditionError("the barrier needs omega (n - 1) >= 1")
    c1 = 2 * lam / (om + 1) * (om * (n - 1) + 1) * (om * (n + 1) - 1) / n
    c2 = 2 * (Lam * (n + 1) + lam)
    c3 = 2 * (Lam + 2 * lam)
    return {"c1": c1, "c2": c2, "c3": c3, "a": c3 / (c1 * c2), "b": 1 / c2}


def gamma_build(ell: Ellipticity, *, search: bool = True, **search_kw) -> GammaBarrier:
    """Barrier constants, with ``d0`` found by grid certification when ``search``."""
    gb = GammaBarrier(ell, **gamma_constants(ell))
    if not search:
        return gb
    from .verify import find_gamma_d0

    d0 = find_gamma_d0(gb, **search_kw)
    return GammaBarrier(ell, gb.c1, gb.c2, gb.c3, gb.a, gb.b, d0)


def gamma_jet(gb: GammaBarrier, x) -> Jet2:
    return gb.jet(x)


# -- chain rule for u -> C u**m ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PowerOf(AxisymmetricFamily):
    """``const * u**m`` for a positive family ``u``."""

    base: AxisymmetricFamily
    m: float
    const: float = 1.0

    name = "power_of"

    @property
    def degree(self):
        return None if self.base.degree is None else self.m * self.base.degree

    def params(self) -> dict:
        return {"m": self.m, "const": self.const, "base": {"name": self.base.name, **self.base.params()}}

    def value(self, rho, t):
        return self.const * self.base.value(rho, t) ** self.m

    def gradient(self, rho, t):
        u = self.base.value(rho, t)
        g_r, g_n = self.base.gradient(rho, t)
        f = self.const * self.m * u ** (self.m - 1)
        return f * g_r, f * g_n

    def hessian(self, rho, t):
        u = self.base.value(rho, t)
        g_r, g_n = self.base.gradient(rho, t)
        a, b, c, d = self.base.hessian(rho, t)
        f = self.const * self.m * u ** (self.m - 1)
        q = (self.m - 1) / u
        return f * (a + q * g_r * g_r), f * (b + q * g_n * g_n), f * (c + q * g_r * g_n), f * d


# -- explicit supersolutions with a zero order term --------------------------------

@dataclass(frozen=True)
class Counterexample:
    """A positive supersolution of ``M(D^2 u) + u**p <= 0`` on ``grid``'s domain."""

    p: float
    exponent: float
    threshold: float
    function: AxisymmetricFamily
    grid: Grid
    operator: str = "minus"
    amplitude: float = 1.0

    def as_dict(self) -> dict:
        return {"p": self.p, "exponent": self.exponent, "threshold": self.threshold,
                "amplitude": self.amplitude, "operator": self.operator, "function": {"name": self.function.name, **self.function.params()}}


def _tame_exponent(x, lo, hi, log_size):
    """Keep ``x`` unless its domain size is not representable; then minimize the size.

    Near the ends of an existence range the midpoint exponent gives offsets
    like ``1e300``; the size is a smooth function of the exponent, so the
    minimizer over ``(lo, hi)`` is used instead. None if even that overflows.
    """
    if log_size(x) <= LOG_SIZE_CAP:
        return x
    pad = 1e-9 * (hi - lo)
    res = minimize_scalar(log_size, bounds=(lo + pad, hi - pad), method="bounded",
                          options={"xatol": 1e-12 * (hi - lo)})
    return float(res.x) if res.fun <= LOG_SIZE_CAP else None


def _slab_grid(offset: float, t_count: int) -> Grid:
    return Grid("slab", t_count=t_count, s_min=offset, s_max=max(1e3, 1e3 * offset), s_count=64)


def counterexample_negative_p(p: float, ell: Ellipticity, delta: float | None = None,
                              operator: str = "minus", t_count: int = 200) -> Counterexample:
    """``u = x_n**delta`` on ``{x_n >= offset}`` for ``p < -1``.

    The Hessian is ``delta (delta - 1) x_n**(delta-2) e_n (x) e_n``, so only the
    weight of a negative eigenvalue enters: ``Lam`` for ``M^-``, ``lam`` for ``M^+``.
    """
    if not p < -1:
        raise PreconditionError(f"need p < -1, got {p!r}")
    lo = 2 / (1 - p)
    if delta is None:
        delta = 0.5 * (lo + 1)
    elif not lo < delta < 1:
        raise InputError(f"delta must lie in ({lo}, 1), got {delta!r}")
    weight = ell.Lam if operator == "minus" else ell.lam

    def log_offset(dl):
        return math.log(weight * dl * (1 - dl)) / (dl * (p - 1) + 2)

    tamed = _tame_exponent(delta, lo, 1.0, log_offset)
    amp = 1.0
    if tamed is None:
        # scale u by A so the domain becomes x_n >= 1
        amp = math.exp(-math.log(weight * delta * (1 - delta)) / (1 - p))
        offset = 1.0
    else:
        delta = tamed
        offset = math.exp(log_offset(delta))
    fn = PowerFunction(delta, 0.0) if amp == 1.0 else amp * PowerFunction(delta, 0.0)
    return Counterexample(p, delta, offset, fn, _slab_grid(offset, t_count), operator, amp)


def counterexample_large_p(p: float, ell: Ellipticity, beta: float | None = None,
                           t_count: int = 200) -> Counterexample:
    """``u = x_n / |x|**beta`` outside the ball of radius ``r``, for ``p`` above threshold."""
    om, n = ell.omega, ell.n
    if not p > (om * (n - 1) + 2) / (om * (n - 1)):
        raise PreconditionError(f"p={p!r} is not above (w(n-1)+2)/(w(n-1))")
    lo, hi = (p + 1) / (p - 1), om * (n - 1) + 1
    if beta is None:
        beta = 0.5 * (lo + hi)
    elif not lo < beta < hi:
        raise InputError(f"beta must lie in ({lo}, {hi}), got {beta!r}")

    def log_radius(bt):
        return -math.log(ell.lam * bt * (hi - bt)) / (bt * (p - 1) - p - 1)

    tamed = _tame_exponent(beta, lo, hi, log_radius)
    amp = 1.0
    if tamed is None:
        # scale u by A so the radius becomes 1
        amp = (ell.lam * beta * (hi - beta)) ** (1 / (p - 1))
        r = 1.0
    else:
        beta = tamed
        r = math.exp(log_radius(beta))
    fn = PowerFunction(1.0, beta) if amp == 1.0 else amp * PowerFunction(1.0, beta)
    grid = Grid("exterior", t_count=t_count, s_min=r, s_max=1e3 * r, s_count=64)
    return Counterexample(p, beta, r, fn, grid, "minus", amp)
