"""Toeplitz operators on A^2_m: matrices, the radial spectrum gamma, and
the linear-algebra verdicts used to certify diagonalization."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _backend
from .bergman import moment_matrix, normalization_vector
from .errors import ConvergenceError, NotHermitianError, NotRadialError
from .multiindex import SpaceParams, enumerate_indices
from .quadrature import QuadConfig, radial_grid
from .symexpr import SymbolExpr, check_torus_invariance

HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
ASSERTED_RADIAL_TOL = 1e-8


@dataclass(frozen=True)
class ToeplitzMatrix:
    """Dense matrix of T_a in the orthonormal monomial basis."""

    params: SpaceParams
    entries: np.ndarray = field(repr=False)
    symbol: str = ""
    config: Optional[QuadConfig] = None

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    @property
    def shape(self):
        return self.entries.shape


@dataclass(frozen=True)
class GammaSequence:
    params: SpaceParams
    values: np.ndarray = field(repr=False)

    def as_dict(self):
        return dict(zip(enumerate_indices(self.params), self.values))


def _matrix(M) -> np.ndarray:
    return np.asarray(M.entries if isinstance(M, ToeplitzMatrix) else M, dtype=complex)


def toeplitz_matrix(a: SymbolExpr, params: SpaceParams, config: QuadConfig = QuadConfig()) -> ToeplitzMatrix:
    """(T_a)[p, q] = <a e_q, e_p>_m by polar quadrature."""
    if a.n != params.n:
        raise ValueError(f"symbol parsed for n={a.n}, space has n={params.n}")
    entries = moment_matrix(a, params, config, toeplitz=True)
    entries.setflags(write=False)
    return ToeplitzMatrix(params, entries, a.text, config)


def gamma_sequence(
    a: SymbolExpr,
    params: SpaceParams,
    config: QuadConfig = QuadConfig(),
    assume_radial: bool = False,
    seed: int = 0,
) -> GammaSequence:
    """Eigenvalues gamma_{a,m}(p) of T_a for a separately radial symbol.

    In the variables s = r^2:

        gamma(p) = c_p (n+m)!/m! int_{R_+^n} a(sqrt s) s^p (1 + |s|)^-(n+m+1) ds.

    Symbols that are not syntactically radial are accepted only with
    ``assume_radial``, and then only if the torus-invariance check passes.
    """
    if a.n != params.n:
        raise ValueError(f"symbol parsed for n={a.n}, space has n={params.n}")
    if not a.is_radial:
        if not assume_radial:
            raise NotRadialError(
                f"symbol {a.text!r} is not syntactically radial (syntactic radiality check)"
            )
        check = check_torus_invariance(a, trials=200, seed=seed, tol=ASSERTED_RADIAL_TOL)
        if not check.invariant:
            raise NotRadialError(
                f"symbol {a.text!r} failed the torus invariance check "
                f"(max deviation {check.max_deviation:.3e} > {ASSERTED_RADIAL_TOL:g})"
            )
    n, m = params.n, params.m
    s, w = radial_grid(n, config.radial_points)
    values = np.asarray(a(np.sqrt(s).astype(complex)), dtype=complex)
    base = w * values / (1.0 + s.sum(axis=1)) ** (n + m + 1)
    exps = np.array(enumerate_indices(params)).reshape(-1, n)
    moments = np.array([np.sum(base * np.prod(s**p, axis=1)) for p in exps])
    scale = float(math.perm(n + m, n))
    gamma = normalization_vector(params) * scale * moments
    if np.all(np.abs(values.imag) == 0):
        gamma = gamma.real.astype(complex)
    gamma.setflags(write=False)
    return GammaSequence(params, gamma)


def diagonality_defect(M) -> float:
    """||offdiag(M)||_F / ||M||_F, zero for the zero matrix."""
    M = _matrix(M)
    total = np.linalg.norm(M)
    if total == 0.0:
        return 0.0
    off = M - np.diag(np.diag(M))
    return float(np.linalg.norm(off) / total)


def hermiticity_defect(M) -> float:
    M = _matrix(M)
    return float(np.max(np.abs(M - M.conj().T))) if M.size else 0.0


def commutator(A, B) -> np.ndarray:
    """AB - BA."""
    A, B = _matrix(A), _matrix(B)
    if A.shape != B.shape or A.shape[0] != A.shape[-1]:
        raise ValueError(f"commutator needs equal square shapes, got {A.shape} and {B.shape}")
    return A @ B - B @ A


def hermitian_eigen(M, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Eigenvalues (ascending) and unitary eigenvectors by cyclic Jacobi rotations.

    Raises NotHermitianError when max|M - M^H| exceeds 1e-10.
    """
    M = _matrix(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"square matrix required, got shape {M.shape}")
    defect = hermiticity_defect(M)
    if defect > HERMITIAN_TOL:
        raise NotHermitianError(f"matrix is not Hermitian (max |M - M^H| = {defect:.3e})")
    sym = 0.5 * (M + M.conj().T)
    diag, vectors, sweeps = _backend.jacobi_hermitian(np.ascontiguousarray(sym), tol, max_sweeps)
    if sweeps < 0:
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    order = np.argsort(diag, kind="stable")
    return np.asarray(diag)[order], np.asarray(vectors)[:, order]


def operator_norm(M) -> float:
    """Largest singular value, sqrt(lambda_max(M^H M))."""
    M = _matrix(M)
    if M.size == 0:
        return 0.0
    eigenvalues, _ = hermitian_eigen(M.conj().T @ M)
    return math.sqrt(max(float(eigenvalues[-1]), 0.0))


def match_spectra(a, b, tol: float):
    """Compare two spectra as multisets.

    Both are sorted ascending; each value of ``a`` is paired with the nearest
    unused value of ``b``. Returns ``(matched, max_deviation)``.
    """
    a = np.sort(np.real_if_close(np.asarray(a)).real)
    b = list(np.sort(np.real_if_close(np.asarray(b)).real))
    if len(a) != len(b):
        return False, math.inf
    worst = 0.0
    for x in a:
        k = min(range(len(b)), key=lambda i: abs(b[i] - x))
        worst = max(worst, abs(b[k] - x))
        b.pop(k)
    return worst <= tol, worst
