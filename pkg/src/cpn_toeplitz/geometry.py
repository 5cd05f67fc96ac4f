"""Fubini-Study geometry in the affine chart and the Lagrangian frame checks.

The real tangent space of C^n is identified with C^n itself; multiplication
by i is the complex structure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .errors import GeometryError
from .symexpr import make_rng, sample_polydisk

IMAG_RESIDUE_TOL = 1e-13


@dataclass(frozen=True)
class TangentVector:
    base: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        base = np.asarray(self.base, dtype=complex).reshape(-1)
        direction = np.asarray(self.direction, dtype=complex).reshape(-1)
        if base.shape != direction.shape:
            raise ValueError("base point and direction have different lengths")
        if not (np.all(np.isfinite(base)) and np.all(np.isfinite(direction))):
            raise ValueError("tangent vector entries must be finite")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "direction", direction)


def _hermitian_form(z: np.ndarray) -> np.ndarray:
    # h_kl = ((1+|z|^2) delta_kl - conj(z_k) z_l) / (1+|z|^2)^2
    rho = 1.0 + float(np.sum(np.abs(z) ** 2))
    return (rho * np.eye(len(z)) - np.outer(np.conj(z), z)) / rho**2


def _coerce(z, X, Y):
    z = np.asarray(z, dtype=complex).reshape(-1)
    vectors = []
    for V in (X, Y):
        if isinstance(V, TangentVector):
            if not np.array_equal(V.base, z):
                raise GeometryError("tangent vector is based at a different point")
            vectors.append(V.direction)
        else:
            vectors.append(np.asarray(V, dtype=complex).reshape(-1))
    if any(len(v) != len(z) for v in vectors):
        raise ValueError("dimension mismatch between point and tangent vectors")
    return z, vectors[0], vectors[1]


def fubini_study_form(z, X, Y) -> float:
    """omega_0(X, Y) with dz_k(X) = X_k and dzbar_k(X) = conj(X_k)."""
    z, x, y = _coerce(z, X, Y)
    h = _hermitian_form(z)
    # dz_k ^ dzbar_l (X, Y) = X_k conj(Y_l) - Y_k conj(X_l)
    value = 1j * (x @ h @ np.conj(y) - y @ h @ np.conj(x))
    scale = max(1.0, abs(value))
    if abs(value.imag) > IMAG_RESIDUE_TOL * scale:
        raise ArithmeticError(f"omega_0 returned a non-real value {value}")
    return float(value.real)


def fs_metric(z, X, Y) -> float:
    """g(X, Y) = omega_0(X, iY)."""
    z, x, y = _coerce(z, X, Y)
    return fubini_study_form(z, x, 1j * y)


def real_gram(z) -> np.ndarray:
    """The 2n x 2n real matrix of g at z in the basis e_1, i e_1, ..., e_n, i e_n."""
    z = np.asarray(z, dtype=complex).reshape(-1)
    basis = []
    for j in range(len(z)):
        e = np.zeros(len(z), dtype=complex)
        e[j] = 1.0
        basis.extend([e, 1j * e])
    return np.array([[fs_metric(z, u, v) for v in basis] for u in basis])


def _require_pc0(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex).reshape(-1)
    if np.any(z == 0):
        raise GeometryError(f"point {z} has a zero coordinate (outside the dense torus chart)")
    return z


def torus_orbit_tangents(z) -> List[TangentVector]:
    """v_j = i z_j e_j, the infinitesimal generators of the torus action at z."""
    z = _require_pc0(z)
    eye = np.eye(len(z), dtype=complex)
    return [TangentVector(z, 1j * z[j] * eye[j]) for j in range(len(z))]


def radial_leaf_tangents(z) -> List[TangentVector]:
    """u_j = (z_j / |z_j|) e_j, the radial scaling directions at z."""
    z = _require_pc0(z)
    eye = np.eye(len(z), dtype=complex)
    return [TangentVector(z, z[j] / abs(z[j]) * eye[j]) for j in range(len(z))]


def lagrangian_defect(z) -> float:
    """max_{j,k} |omega_0(v_j, v_k)| over orbit tangents."""
    v = torus_orbit_tangents(z)
    if len(v) == 1:
        return 0.0
    return max(abs(fubini_study_form(v[0].base, a, b)) for a in v for b in v)


def frame_orthogonality_defect(z) -> float:
    """max_{j,k} |g(v_j, u_k)| between orbit and radial-leaf tangents."""
    v = torus_orbit_tangents(z)
    u = radial_leaf_tangents(z)
    return max(abs(fs_metric(v[0].base, a, b)) for a in v for b in u)


@dataclass(frozen=True)
class OrbitSpec:
    """Point (r_0, ..., r_n) of the positive part of the unit sphere S^n."""

    radii: tuple

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if len(radii) < 2:
            raise GeometryError("an orbit needs at least two radii (n >= 1)")
        if any(not r > 0 for r in radii):
            raise GeometryError(f"orbit radii must be strictly positive, got {radii}")
        norm = math.sqrt(sum(r * r for r in radii))
        if abs(norm - 1.0) > 1e-12:
            raise GeometryError(f"orbit radii must have unit norm, got norm {norm!r}")
        object.__setattr__(self, "radii", radii)

    @property
    def n(self) -> int:
        return len(self.radii) - 1


def sample_orbit(spec: OrbitSpec, k: int) -> np.ndarray:
    """Chart image of the torus orbit: the k^n points (r_j/r_0) e^{i theta_j}.

    Angles run over the uniform grid 2 pi j / k in odometer order.
    """
    if k < 1:
        raise ValueError("grid size must be >= 1")
    n = spec.n
    moduli = np.array(spec.radii[1:]) / spec.radii[0]
    theta = 2 * math.pi * np.arange(k) / k
    grids = np.meshgrid(*([theta] * n), indexing="ij")
    angles = np.stack([g.reshape(-1) for g in grids], axis=-1)
    return moduli * np.exp(1j * angles)


@dataclass(frozen=True)
class GeometryReport:
    n: int
    samples: int
    seed: int
    lagrangian_defect: float
    orthogonality_defect: float
    min_metric_eigenvalue: float
    max_antisymmetry_defect: float


def geometry_check(n: int, samples: int = 100, seed: int = 0) -> GeometryReport:
    """Worst-case defects over seeded random points of (C*)^n."""
    rng = make_rng(seed)
    points = sample_polydisk(rng, n, samples)
    lag = orth = asym = 0.0
    min_eig = math.inf
    for z in points:
        lag = max(lag, lagrangian_defect(z))
        orth = max(orth, frame_orthogonality_defect(z))
        gram = real_gram(z)
        min_eig = min(min_eig, float(np.linalg.eigvalsh(0.5 * (gram + gram.T))[0]))
        x, y = rng.normal(size=(2, n)) + 1j * rng.normal(size=(2, n))
        asym = max(asym, abs(fubini_study_form(z, x, y) + fubini_study_form(z, y, x)))
    return GeometryReport(n, samples, seed, lag, orth, min_eig, asym)
