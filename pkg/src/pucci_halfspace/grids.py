"""Sampling grids over axisymmetric domains of the halfspace.

Every point is described by ``(rho, t)`` with ``rho = |x|`` and
``t = x_n / |x|``; the representative point is
``rho * (sqrt(1 - t^2), 0, ..., 0, t)``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import InputError

T_FLOOR = 1e-6
T_COUNT = 10_000
KINDS = ("homogeneous", "gauge", "exterior", "slab")


def t_grid(t_min: float = T_FLOOR, t_max: float = 1.0, count: int = T_COUNT) -> np.ndarray:
    """Geometric grid on ``[t_min, t_max]`` (dense near the boundary ``t -> 0``)."""
    if not 0 < t_min <= t_max <= 1:
        raise InputError(f"need 0 < t_min <= t_max <= 1, got [{t_min}, {t_max}]")
    if count < 1:
        raise InputError("grid count must be positive")
    if count == 1:
        return np.array([t_max])
    return np.geomspace(t_min, t_max, count)


def representative_point(rho, t, n: int) -> np.ndarray:
    """Points ``rho * (sqrt(1-t^2), 0, ..., 0, t)`` of shape ``(..., n)``."""
    rho, t = np.broadcast_arrays(np.asarray(rho, dtype=float), np.asarray(t, dtype=float))
    x = np.zeros(rho.shape + (n,))
    x[..., 0] = rho * np.sqrt(np.clip(1 - t * t, 0.0, None))
    x[..., -1] = rho * t
    return x


def polar(x) -> tuple[np.ndarray, np.ndarray]:
    """``(|x|, x_n/|x|)`` for points stacked on the last axis."""
    x = np.asarray(x, dtype=float)
    rho = np.linalg.norm(x, axis=-1)
    return rho, x[..., -1] / rho


@dataclass(frozen=True)
class Grid:
    """Product grid ``(radial variable) x (t)`` over an axisymmetric domain.

    ``kind`` selects what the radial variable ``s`` means:

    * ``homogeneous`` -- ``|x| = 1``; ``s`` is ignored (homogeneous families).
    * ``gauge``       -- ``s`` is the gauge value ``d(x)``; needs ``k``.
    * ``exterior``    -- ``s = |x|``.
    * ``slab``        -- ``s = x_n``.
    """

    kind: str = "homogeneous"
    t_min: float = T_FLOOR
    t_max: float = 1.0
    t_count: int = T_COUNT
    s_min: float = 1.0
    s_max: float = 1.0
    s_count: int = 1
    k: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown grid kind {self.kind!r}")
        if self.kind != "homogeneous":
            if not 0 < self.s_min <= self.s_max:
                raise InputError(f"need 0 < s_min <= s_max, got [{self.s_min}, {self.s_max}]")
            if self.s_count < 1:
                raise InputError("s_count must be positive")
        t_grid(self.t_min, self.t_max, 1)

    def s_values(self) -> np.ndarray:
        if self.kind == "homogeneous":
            return np.array([1.0])
        if self.s_count == 1 or self.s_min == self.s_max:
            return np.array([self.s_min])
        return np.geomspace(self.s_min, self.s_max, self.s_count)

    def t_values(self) -> np.ndarray:
        return t_grid(self.t_min, self.t_max, self.t_count)

    def polar_points(self) -> tuple[np.ndarray, np.ndarray]:
        """Flattened ``(rho, t)`` arrays, radial index outer, ``t`` index inner."""
        s, t = np.meshgrid(self.s_values(), self.t_values(), indexing="ij")
        s, t = s.ravel(), t.ravel()
        if self.kind in ("homogeneous", "exterior"):
            rho = s
        elif self.kind == "gauge":
            rho = s * t ** self.k
        else:
            rho = s / t
        return rho, t

    def points(self, n: int) -> np.ndarray:
        return representative_point(*self.polar_points(), n)

    def describe(self) -> dict:
        out = asdict(self)
        if self.kind == "homogeneous":
            for key in ("s_min", "s_max", "s_count"):
                out.pop(key)
        if self.kind != "gauge":
            out.pop("k")
        return out
