"""Gauss-Legendre rules and tensor-product integration over R_+^n and C^n.

Radial integrals are taken in the variables s_j = r_j^2. For n = 1 the half
line is compactified by s = u/(1-u). For n >= 2 a plain tensor product of
that map leaves a corner singularity at u = (1, ..., 1) which caps the
accuracy near 1e-4, so the multi-dimensional grid uses the map

    s = x / (1 - |x|),   x in the unit simplex,

with x given by collapsed (Duffy) coordinates over the unit cube. Under it
the Bergman integrand s^p (1 + |s|)^-(n+m+1) ds becomes the polynomial
x^p (1 - |x|)^(m-|p|) dx, so Gram and radial-symbol integrals are exact up
to rounding once the rule degree suffices. For n = 1 both maps coincide.

Grids are enumerated in odometer order (last coordinate fastest) and all
reductions run over that order in fixed-size chunks, so sums are
reproducible bit-for-bit for a fixed configuration.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Optional, Tuple

import numpy as np

from .errors import ParamError

MAX_POINTS = 512
DEFAULT_RADIAL_POINTS = 64

# points per chunk in the polar driver; bounds memory for n >= 2
_CHUNK_POINTS = 1 << 17


@dataclass(frozen=True)
class QuadRule:
    """One-dimensional rule. ``domain`` is "unit_interval", "half_line_s" or "angle"."""

    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    domain: str

    def __post_init__(self):
        if len(self.nodes) != len(self.weights):
            raise ValueError("nodes and weights differ in length")

    def __len__(self) -> int:
        return len(self.nodes)

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]):
        return np.sum(self.weights * f(self.nodes))


@dataclass(frozen=True)
class QuadConfig:
    """Points per radial dimension and per angular dimension.

    ``angular_points=None`` lets each caller pick its default: max(2m+2, 8)
    for inner products, 4m+4 for Toeplitz matrices.
    """

    radial_points: int = DEFAULT_RADIAL_POINTS
    angular_points: Optional[int] = None

    def __post_init__(self):
        if not 2 <= self.radial_points <= MAX_POINTS:
            raise ParamError(f"radial_points must lie in [2, {MAX_POINTS}], got {self.radial_points}")
        if self.angular_points is not None and self.angular_points < 2:
            raise ParamError(f"angular_points must be >= 2, got {self.angular_points}")

    def angular_for(self, m: int, toeplitz: bool = False) -> int:
        if self.angular_points is not None:
            minimum = 2 * m + 2
            if self.angular_points < minimum:
                raise ParamError(
                    f"angular_points={self.angular_points} aliases weight m={m}; need >= {minimum}"
                )
            return self.angular_points
        return 4 * m + 4 if toeplitz else max(2 * m + 2, 8)


def _check_k(k: int):
    if not isinstance(k, (int, np.integer)) or not 2 <= k <= MAX_POINTS:
        raise ParamError(f"number of points must be an integer in [2, {MAX_POINTS}], got {k!r}")


def _legendre_eval(x, k):
    p0 = np.ones_like(x)
    p1 = x.copy()
    for j in range(2, k + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    dp = k * (x * p1 - p0) / (x * x - 1)
    return p1, dp


@lru_cache(maxsize=64)
def _legendre(k: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nodes, their complements 1 - u, and weights on (0, 1), ascending.

    Newton iteration on P_k from Tricomi's initial guesses, carried out in
    extended precision (where the platform has it) so the rounded double
    nodes and weights are accurate to about one ulp.
    """
    ld = np.longdouble
    half = (k + 1) // 2
    i = np.arange(1, half + 1, dtype=ld)
    x = np.cos(ld(math.pi) * (i - ld(0.25)) / (k + ld(0.5))) * (1 - ld(k - 1) / (8 * ld(k) ** 3))
    tol = max(float(np.finfo(ld).eps) * 4, 1e-18)
    for _ in range(100):
        p, dp = _legendre_eval(x, k)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < tol:
            break
    p, dp = _legendre_eval(x, k)
    w = 2 / ((1 - x * x) * dp * dp)
    # x is descending in (0, 1]; u = (1 - x)/2 gives the lower half of (0, 1)
    lower = (1 - x) / 2
    upper = (1 + x) / 2
    if k % 2:
        nodes = np.concatenate([lower, upper[-2::-1]])
        complements = np.concatenate([upper, lower[-2::-1]])
        weights = np.concatenate([w, w[-2::-1]]) / 2
        nodes[half - 1] = complements[half - 1] = 0.5
    else:
        nodes = np.concatenate([lower, upper[::-1]])
        complements = np.concatenate([upper, lower[::-1]])
        weights = np.concatenate([w, w[::-1]]) / 2
    return nodes.astype(float), complements.astype(float), weights.astype(float)


def gauss_legendre(k: int) -> QuadRule:
    """k-point Gauss-Legendre rule on (0, 1); exact for degree <= 2k-1."""
    _check_k(k)
    nodes, _, weights = _legendre(int(k))
    return QuadRule(nodes, weights, "unit_interval")


def half_line_rule(k: int) -> QuadRule:
    """Rule for int_0^inf f(s) ds through s = u/(1-u)."""
    _check_k(k)
    u, comp, w = _legendre(int(k))
    return QuadRule(u / comp, w / comp**2, "half_line_s")


def angular_rule(k: int) -> QuadRule:
    """Uniform rule on [0, 2pi); exact for e^{i l theta} with |l| < k."""
    if not isinstance(k, (int, np.integer)) or k < 2:
        raise ParamError(f"angular rule needs k >= 2, got {k!r}")
    j = np.arange(k)
    return QuadRule(2 * math.pi * j / k, np.full(k, 2 * math.pi / k), "angle")


def _cartesian(arrays) -> np.ndarray:
    # odometer order: last coordinate varies fastest
    grids = np.meshgrid(*arrays, indexing="ij")
    return np.stack([g.reshape(-1) for g in grids], axis=-1)


@lru_cache(maxsize=32)
def _radial_grid(n: int, k: int) -> Tuple[np.ndarray, np.ndarray]:
    if n == 1:
        rule = half_line_rule(k)
        return rule.nodes[:, None].copy(), rule.weights.copy()
    nodes, complements, weights_1d = _legendre(k)
    v = _cartesian([nodes] * n)
    vc = _cartesian([complements] * n)
    w = np.prod(_cartesian([weights_1d] * n), axis=1)
    # collapsed coordinates: x_j = v_j * prod_{i<j} (1 - v_i)
    x = np.empty_like(v)
    remaining = np.ones(len(v))
    jac = np.ones(len(v))
    for j in range(n):
        x[:, j] = remaining * v[:, j]
        jac *= remaining
        remaining = remaining * vc[:, j]
    # remaining = 1 - |x| > 0 at interior nodes
    s = x / remaining[:, None]
    weights = w * jac / remaining ** (n + 1)
    s.setflags(write=False)
    weights.setflags(write=False)
    return s, weights


def radial_grid(n: int, k: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes (shape ``(k**n, n)``) and weights of the rule for int_{R_+^n} f(s) ds."""
    if n < 1:
        raise ParamError("n must be >= 1")
    _check_k(k)
    return _radial_grid(int(n), int(k))


def integrate_radial(f: Callable[[np.ndarray], np.ndarray], n: int, k: int = DEFAULT_RADIAL_POINTS):
    """Approximate int_{R_+^n} f(s) ds; ``f`` maps an ``(N, n)`` array of s-nodes to ``(N,)``."""
    s, w = radial_grid(n, k)
    values = np.asarray(f(s))
    return np.sum(w * values)


def polar_chunks(n: int, radial_points: int, angular_points: int) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """Yield ``(z, w)`` blocks covering the polar tensor grid of C^n.

    ``w`` carries the Lebesgue weights: with s = r^2, prod r_j dr_j dtheta_j
    becomes prod ds_j dtheta_j / 2.
    """
    s, ws = radial_grid(n, radial_points)
    ang = angular_rule(angular_points)
    theta = _cartesian([ang.nodes] * n)
    wtheta = np.prod(_cartesian([ang.weights] * n), axis=1)
    phase = np.exp(1j * theta)
    per_radial = len(theta)
    step = max(1, _CHUNK_POINTS // per_radial)
    scale = 0.5**n
    for start in range(0, len(s), step):
        stop = min(start + step, len(s))
        r = np.sqrt(s[start:stop])
        z = (r[:, None, :] * phase[None, :, :]).reshape(-1, n)
        w = (ws[start:stop, None] * wtheta[None, :] * scale).reshape(-1)
        yield z, w


def integrate_polar(f: Callable[[np.ndarray], np.ndarray], n: int, config: QuadConfig = QuadConfig(), m: int = 0):
    """Approximate int_{C^n} f(z) dV(z) on the polar tensor grid.

    ``m`` only selects the default angular resolution.
    """
    total = 0.0 + 0.0j
    for z, w in polar_chunks(n, config.radial_points, config.angular_for(m)):
        total += np.sum(w * f(z))
    return total
