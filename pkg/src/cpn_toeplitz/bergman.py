"""Weighted Bergman spaces A^2_m(CP^n) realized on the affine chart C^n.

Functions are represented by point evaluation: any callable mapping an
``(N, n)`` complex array of points to ``(N,)`` values (a ``SymbolExpr``
qualifies). ``analyze`` is the only way into coefficient space.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import _backend
from .multiindex import SpaceParams, dimension, enumerate_indices, normalization_constant
from .quadrature import QuadConfig, polar_chunks

SampledFunction = Callable[[np.ndarray], np.ndarray]


def density_constant(params: SpaceParams) -> float:
    """(n+m)! / (pi^n m!)."""
    n, m = params.n, params.m
    return math.perm(n + m, n) / math.pi**n


def measure_density(z, params: SpaceParams):
    """Density of nu_m against Lebesgue measure; accepts one point or a batch."""
    z = np.asarray(z, dtype=complex)
    rho2 = np.sum(z.real**2 + z.imag**2, axis=-1)
    return density_constant(params) / (1.0 + rho2) ** (params.n + params.m + 1)


def exponent_table(params: SpaceParams) -> np.ndarray:
    return np.array(enumerate_indices(params), dtype=np.intc).reshape(-1, params.n)


def normalization_vector(params: SpaceParams) -> np.ndarray:
    return np.array([normalization_constant(p, params) for p in enumerate_indices(params)])


@dataclass(frozen=True)
class CoefficientVector:
    """Coefficients {c_p} in the orthonormal basis, graded-lex order."""

    params: SpaceParams
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex).reshape(-1)
        if len(values) != dimension(self.params):
            raise ValueError(
                f"expected {dimension(self.params)} coefficients, got {len(values)}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, p):
        if isinstance(p, (int, np.integer)):
            return self.values[p]
        return self.values[enumerate_indices(self.params).index(tuple(p))]


def _basis_values(p, z, params: SpaceParams):
    p = tuple(p)
    c = normalization_constant(p, params)
    z = np.asarray(z, dtype=complex)
    mono = np.ones(z.shape[:-1], dtype=complex)
    for j, power in enumerate(p):
        if power:
            mono = mono * z[..., j] ** power
    return math.sqrt(c) * mono


def eval_basis(p: Sequence[int], params: SpaceParams, z):
    """e_p(z) = sqrt(c_p) z^p, the normalized monomial."""
    value = _basis_values(p, z, params)
    return complex(value) if np.ndim(value) == 0 else value


def basis_function(p: Sequence[int], params: SpaceParams) -> SampledFunction:
    """e_p as a callable on point batches."""
    p = tuple(p)
    normalization_constant(p, params)

    def e_p(z):
        return _basis_values(p, z, params)

    return e_p


def kernel(z, w, params: SpaceParams):
    """Bergman kernel K(z, w) = (1 + sum_j z_j conj(w_j))^m."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    value = (1.0 + np.sum(z * np.conj(w), axis=-1)) ** params.m
    return complex(value) if np.ndim(value) == 0 else value


def _chunks(params: SpaceParams, config: QuadConfig, toeplitz: bool = False):
    k_theta = config.angular_for(params.m, toeplitz=toeplitz)
    for z, w in polar_chunks(params.n, config.radial_points, k_theta):
        yield z, w * measure_density(z, params)


def inner_product(f: SampledFunction, g: SampledFunction, params: SpaceParams, config: QuadConfig = QuadConfig()):
    """<f, g>_m = int f conj(g) d nu_m by polar quadrature."""
    total = 0.0 + 0.0j
    for z, w in _chunks(params, config):
        total += np.sum(w * f(z) * np.conj(g(z)))
    return complex(total)


def moment_matrix(symbol, params: SpaceParams, config: QuadConfig, toeplitz: bool = True) -> np.ndarray:
    """M[p, q] = <a e_q, e_p>_m for the symbol ``a`` (``None`` means a = 1)."""
    exps = exponent_table(params)
    size = len(exps)
    raw = np.zeros((size, size), dtype=complex)
    for z, w in _chunks(params, config, toeplitz=toeplitz):
        wa = w.astype(complex) if symbol is None else w * np.asarray(symbol(z), dtype=complex)
        _backend.accumulate_moments(np.ascontiguousarray(z), np.ascontiguousarray(wa), exps, raw)
    root = np.sqrt(normalization_vector(params))
    return raw * root[:, None] * root[None, :]


def gram_matrix(params: SpaceParams, config: QuadConfig = QuadConfig()) -> np.ndarray:
    """G[p, q] = <e_p, e_q>_m; the identity for an orthonormal basis.

    The angular grid defaults to 4m+4 points here, matching the Toeplitz build.
    """
    return moment_matrix(None, params, config, toeplitz=True).T


def analyze(f: SampledFunction, params: SpaceParams, config: QuadConfig = QuadConfig()) -> CoefficientVector:
    """Coefficients <f, e_p>_m for all p in J_n(m)."""
    exps = exponent_table(params)
    acc = np.zeros(len(exps), dtype=complex)
    for z, w in _chunks(params, config):
        values = w * np.asarray(f(z), dtype=complex)
        acc += _backend.monomials(z, exps).conj().T @ values
    return CoefficientVector(params, acc * np.sqrt(normalization_vector(params)))


def project(f: SampledFunction, params: SpaceParams, config: QuadConfig = QuadConfig()) -> CoefficientVector:
    """Bergman projection B_m f = R*R f, returned in coefficient form."""
    return analyze(f, params, config)


@dataclass(frozen=True)
class BasisExpansion:
    """The polynomial z -> sum_p c_p e_p(z)."""

    coefficients: CoefficientVector

    @property
    def params(self) -> SpaceParams:
        return self.coefficients.params

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        single = z.ndim == 1
        pts = z.reshape(-1, self.params.n)
        basis = _backend.monomials(pts, exponent_table(self.params))
        scaled = self.coefficients.values * np.sqrt(normalization_vector(self.params))
        values = basis @ scaled
        return complex(values[0]) if single else values.reshape(z.shape[:-1])


def synthesize(c: CoefficientVector) -> BasisExpansion:
    """R*: coefficients -> polynomial of degree <= m."""
    return BasisExpansion(c)


def kernel_projection(f: SampledFunction, w, params: SpaceParams, config: QuadConfig = QuadConfig()):
    """(B_m f)(w) computed directly as int f(z) K(w, z) d nu_m(z)."""
    w = np.asarray(w, dtype=complex)
    total = 0.0 + 0.0j
    for z, weights in _chunks(params, config):
        total += np.sum(weights * f(z) * kernel(w, z, params))
    return complex(total)
