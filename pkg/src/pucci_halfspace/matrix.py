"""Symmetric-matrix primitives.

Closed-form spectra of rank-two perturbations of the identity, the Pucci
extremal operators evaluated on a spectrum, and a cyclic Jacobi eigensolver
kept as an independent testing oracle.

Spectra are plain 1-D numpy arrays sorted in descending order.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConsistencyError, InputError, NumericalError

UNIT_TOL = 1e-12
RADICAND_TOL = 1e-10
SIGN_THRESHOLD = 1e-14
JACOBI_MAX_SWEEPS = 50
JACOBI_TOL = 1e-13


@dataclass(frozen=True)
class Ellipticity:
    """Ellipticity constants ``0 < lam <= Lam`` in dimension ``n >= 2``."""

    lam: float
    Lam: float
    n: int

    def __post_init__(self):
        if not (np.isfinite(self.lam) and np.isfinite(self.Lam)):
            raise InputError("ellipticity constants must be finite")
        if not 0 < self.lam <= self.Lam:
            raise InputError(f"need 0 < lam <= Lam, got lam={self.lam}, Lam={self.Lam}")
        if int(self.n) != self.n or self.n < 2:
            raise InputError(f"dimension must be an integer >= 2, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def omega(self) -> float:
        return self.Lam / self.lam

    @classmethod
    def from_ratio(cls, omega: float, n: int, lam: float = 1.0) -> "Ellipticity":
        return cls(lam, omega * lam, n)

    def as_dict(self) -> dict:
        return {"lambda": self.lam, "Lambda": self.Lam, "n": self.n, "omega": self.omega}


@dataclass(frozen=True)
class RankTwoForm:
    """The matrix ``a v(x)v + b w(x)w + c (v(x)w + w(x)v) + d I`` with unit ``v, w``."""

    a: float
    b: float
    c: float
    d: float
    v: np.ndarray = field(repr=False)
    w: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.v, dtype=float).reshape(-1)
        w = np.asarray(self.w, dtype=float).reshape(-1)
        if v.shape != w.shape:
            raise InputError("v and w must have the same dimension")
        if v.size < 2:
            raise InputError("dimension must be at least 2")
        for name, vec in (("v", v), ("w", w)):
            if abs(np.linalg.norm(vec) - 1.0) > UNIT_TOL:
                raise InputError(f"{name} is not a unit vector (|{name}| = {np.linalg.norm(vec)!r})")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return self.v.size

    @property
    def vw(self) -> float:
        return float(np.clip(self.v @ self.w, -1.0, 1.0))

    def matrix(self) -> np.ndarray:
        v, w = self.v, self.w
        vw = np.outer(v, w)
        return (self.a * np.outer(v, v) + self.b * np.outer(w, w)
                + self.c * (vw + vw.T) + self.d * np.eye(self.n))

    def scaled(self, s: float) -> "RankTwoForm":
        return RankTwoForm(s * self.a, s * self.b, s * self.c, s * self.d, self.v, self.w)

    def __add__(self, other: "RankTwoForm") -> "RankTwoForm":
        if not (np.array_equal(self.v, other.v) and np.array_equal(self.w, other.w)):
            raise InputError("can only add rank-two forms sharing v and w")
        return RankTwoForm(self.a + other.a, self.b + other.b, self.c + other.c,
                           self.d + other.d, self.v, self.w)


def rank_two_radicand(a, b, c, vw):
    """``(a+b+2c v.w)^2 + 4(1-(v.w)^2)(c^2-ab)``, elementwise."""
    s = a + b + 2 * c * vw
    return s * s + 4 * (1 - vw * vw) * (c * c - a * b)


def rank_two_pair(a, b, c, vw):
    """The two eigenvalues of the rank-two part (without ``d``), as ``(hi, lo)``.

    Vectorized. The smaller root in magnitude is recovered from the product
    ``(1-(v.w)^2)(ab-c^2)`` to avoid cancellation.
    """
    a, b, c, vw = np.broadcast_arrays(*(np.asarray(z, dtype=float) for z in (a, b, c, vw)))
    s = a + b + 2 * c * vw
    disc = rank_two_radicand(a, b, c, vw)
    mag = (np.abs(a) + np.abs(b) + 2 * np.abs(c)) ** 2
    if np.any(disc < -RADICAND_TOL * np.maximum(mag, 1.0)):
        raise ConsistencyError(f"negative radicand {np.min(disc)!r} in rank-two spectrum")
    root = np.sqrt(np.maximum(disc, 0.0))
    big = 0.5 * (s + np.where(s >= 0, root, -root))
    prod = (1 - vw * vw) * (a * b - c * c)
    with np.errstate(divide="ignore", invalid="ignore"):
        small = np.where(big != 0, prod / np.where(big != 0, big, 1.0), 0.0)
    return np.maximum(big, small), np.minimum(big, small)


def rank_two_eigenvalues(form: RankTwoForm) -> np.ndarray:
    """Spectrum of a :class:`RankTwoForm`, sorted descending."""
    hi, lo = rank_two_pair(form.a, form.b, form.c, form.vw)
    eig = np.concatenate([[form.d + float(hi), form.d + float(lo)], np.full(form.n - 2, form.d)])
    return np.sort(eig)[::-1]


def _as_spectrum(spec, n: int | None) -> np.ndarray:
    mu = np.asarray(spec, dtype=float)
    if mu.ndim != 1:
        raise InputError("spectrum must be one-dimensional")
    if n is not None and mu.size != n:
        raise InputError(f"spectrum has {mu.size} entries, ellipticity expects n={n}")
    return mu


def _split(mu: np.ndarray, axis: int = -1):
    scale = np.max(np.abs(mu), axis=axis, keepdims=True)
    live = np.abs(mu) > SIGN_THRESHOLD * scale
    pos = np.where(live & (mu > 0), mu, 0.0).sum(axis=axis)
    neg = np.where(live & (mu < 0), mu, 0.0).sum(axis=axis)
    return pos, neg


def pucci_minus(spec, ell: Ellipticity) -> float:
    """``lam * (sum of positive eigenvalues) + Lam * (sum of negative eigenvalues)``."""
    pos, neg = _split(_as_spectrum(spec, ell.n))
    return float(ell.lam * pos + ell.Lam * neg)


def pucci_plus(spec, ell: Ellipticity) -> float:
    """``Lam * (sum of positive eigenvalues) + lam * (sum of negative eigenvalues)``."""
    pos, neg = _split(_as_spectrum(spec, ell.n))
    return float(ell.Lam * pos + ell.lam * neg)


def pucci(spec, ell: Ellipticity, operator: str = "minus") -> float:
    if operator == "minus":
        return pucci_minus(spec, ell)
    if operator == "plus":
        return pucci_plus(spec, ell)
    raise InputError(f"operator must be 'minus' or 'plus', got {operator!r}")


def pucci_batch(mu, ell: Ellipticity, operator: str = "minus") -> np.ndarray:
    """Pucci operator over the last axis of a stack of spectra."""
    pos, neg = _split(np.asarray(mu, dtype=float))
    lo, hi = (ell.lam, ell.Lam) if operator == "minus" else (ell.Lam, ell.lam)
    return lo * pos + hi * neg


def rank_two_spectra(a, b, c, d, vw, n: int) -> np.ndarray:
    """Stacked spectra (shape ``(..., n)``, sorted descending) of rank-two forms."""
    hi, lo = rank_two_pair(a, b, c, vw)
    d = np.broadcast_to(np.asarray(d, dtype=float), hi.shape)
    cols = [d + hi, d + lo] + [d] * (n - 2)
    return -np.sort(-np.stack(cols, axis=-1), axis=-1)


def spectral_mass(mu) -> np.ndarray:
    """Sum of absolute eigenvalues over the last axis."""
    return np.abs(np.asarray(mu, dtype=float)).sum(axis=-1)


def dense_eigen_oracle(matrix) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Accepts a single ``(n, n)`` matrix or a stack ``(k, n, n)``; the stack is
    rotated in lockstep. Returns spectra sorted descending along the last axis.
    """
    A = np.array(matrix, dtype=float, copy=True)
    if A.ndim < 2 or A.shape[-1] != A.shape[-2]:
        raise InputError("expected a square matrix or a stack of square matrices")
    single = A.ndim == 2
    if single:
        A = A[None]
    A = A.reshape(-1, A.shape[-2], A.shape[-1])
    n = A.shape[-1]
    norms = np.sqrt(np.sum(A * A, axis=(1, 2)))
    asym = np.max(np.abs(A - np.swapaxes(A, 1, 2)), axis=(1, 2))
    if np.any(asym > UNIT_TOL * np.maximum(norms, 1.0)):
        raise InputError("matrix is not symmetric")
    A = 0.5 * (A + np.swapaxes(A, 1, 2))

    target = JACOBI_TOL * norms
    for _ in range(JACOBI_MAX_SWEEPS):
        if np.all(_off_diagonal_mass(A) <= target):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[:, p, q]
                active = np.abs(apq) > 0
                if not np.any(active):
                    continue
                app, aqq = A[:, p, p], A[:, q, q]
                safe = np.where(active, apq, 1.0)
                # tiny a_pq overflows theta to inf, which gives t = 0 (no rotation)
                with np.errstate(over="ignore", divide="ignore"):
                    theta = (aqq - app) / (2.0 * safe)
                    t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
                t = np.where(theta == 0, 1.0, t)
                t = np.where(active, t, 0.0)
                cs = 1.0 / np.sqrt(t * t + 1.0)
                sn = t * cs
                cs_, sn_ = cs[:, None], sn[:, None]
                colp, colq = A[:, :, p].copy(), A[:, :, q].copy()
                A[:, :, p] = cs_ * colp - sn_ * colq
                A[:, :, q] = sn_ * colp + cs_ * colq
                rowp, rowq = A[:, p, :].copy(), A[:, q, :].copy()
                A[:, p, :] = cs_ * rowp - sn_ * rowq
                A[:, q, :] = sn_ * rowp + cs_ * rowq
                A[:, p, q] = np.where(active, 0.0, A[:, p, q])
                A[:, q, p] = np.where(active, 0.0, A[:, q, p])
    else:
        if np.any(_off_diagonal_mass(A) > target):
            raise NumericalError(f"Jacobi iteration did not converge in {JACOBI_MAX_SWEEPS} sweeps")
    eig = -np.sort(-np.diagonal(A, axis1=1, axis2=2), axis=1)
    return eig[0] if single else eig


def _off_diagonal_mass(A: np.ndarray) -> np.ndarray:
    off = A - np.einsum("kij,ij->kij", A, np.eye(A.shape[-1]))
    return np.sqrt(np.sum(off * off, axis=(1, 2)))
