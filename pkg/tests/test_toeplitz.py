import math

import numpy as np
import pytest

from cpn_toeplitz.errors import NotHermitianError, NotRadialError
from cpn_toeplitz.multiindex import SpaceParams, enumerate_indices
from cpn_toeplitz.quadrature import QuadConfig
from cpn_toeplitz.symexpr import parse
from cpn_toeplitz.toeplitz import (
    commutator,
    diagonality_defect,
    gamma_sequence,
    hermitian_eigen,
    hermiticity_defect,
    match_spectra,
    operator_norm,
    toeplitz_matrix,
)
from oracles import gamma_oracle

CFG = QuadConfig(32)


def T(text, n, m):
    return toeplitz_matrix(parse(text, n), SpaceParams(n, m), CFG).entries


def test_constant_symbol_is_identity():
    np.testing.assert_allclose(T("1", 2, 2), np.eye(6), atol=1e-12)


def test_rho_fraction_example():
    np.testing.assert_allclose(T("rho2/(1+rho2)", 1, 1), np.diag([1 / 3, 2 / 3]), atol=1e-12)


def test_holomorphic_symbol_shifts_degree():
    M = T("z1/(1+rho2)", 1, 1)
    assert abs(M[1, 0] - 1 / 3) <= 1e-12
    assert abs(M[0, 0]) <= 1e-13 and abs(M[0, 1]) <= 1e-13 and abs(M[1, 1]) <= 1e-13


def test_linearity_and_partition_of_unity():
    A = T("1/(1+rho2)", 2, 3)
    B = T("rho2/(1+rho2)", 2, 3)
    np.testing.assert_allclose(A + B, np.eye(10), atol=1e-12)
    np.testing.assert_allclose(T("2/(1+rho2) - 3*rho2/(1+rho2)", 2, 3), 2 * A - 3 * B, atol=1e-12)


def test_adjoint_of_conjugate_symbol():
    A = T("z1*conj(z2)/(1+rho2)^2", 2, 2)
    B = T("conj(z1)*z2/(1+rho2)^2", 2, 2)
    np.testing.assert_allclose(A.conj().T, B, atol=1e-13)


def test_real_symbol_gives_positive_semidefinite_when_nonnegative():
    M = T("abs(z1 - 0.5)^2/(1+rho2)", 2, 2)
    values, _ = hermitian_eigen(M)
    assert values[0] >= -1e-12
    assert operator_norm(M) <= 1 + 1e-8


@pytest.mark.parametrize("symbol", ["1", "1/(1+rho2)", "r1^2/(1+rho2)", "1/(1+rho2)^2", "exp(-rho2)"])
@pytest.mark.parametrize("n, m", [(1, 3), (2, 2), (3, 1)])
def test_gamma_matches_oracle(symbol, n, m):
    gamma = gamma_sequence(parse(symbol, n), SpaceParams(n, m), CFG)
    for p, value in zip(enumerate_indices(SpaceParams(n, m)), gamma.values):
        assert abs(value - gamma_oracle(symbol, p, n, m)) <= 1e-10


def test_gamma_example_values():
    gamma = gamma_sequence(parse("1/(1+rho2)", 1), SpaceParams(1, 2))
    np.testing.assert_allclose(gamma.values.real, [0.75, 0.5, 0.25], atol=1e-13)
    assert gamma.as_dict()[(1,)] == pytest.approx(0.5)


def test_gamma_rejects_non_radial():
    with pytest.raises(NotRadialError, match="syntactic"):
        gamma_sequence(parse("re(z1)", 1), SpaceParams(1, 1))
    with pytest.raises(NotRadialError, match="invariance"):
        gamma_sequence(parse("re(z1)", 1), SpaceParams(1, 1), assume_radial=True)


def test_gamma_assume_radial_accepts_invariant_expression():
    a = parse("z1*conj(z1)/(1+rho2)", 1)
    assert not a.is_radial
    gamma = gamma_sequence(a, SpaceParams(1, 2), assume_radial=True)
    np.testing.assert_allclose(gamma.values.real, [0.25, 0.5, 0.75], atol=1e-12)


def test_gamma_equals_diagonal():
    a = parse("exp(-rho2)", 2)
    params = SpaceParams(2, 3)
    M = toeplitz_matrix(a, params, CFG)
    assert diagonality_defect(M) <= 1e-12
    np.testing.assert_allclose(np.diag(M.entries), gamma_sequence(a, params, CFG).values, atol=1e-12)


def test_commuting_radial_symbols():
    A, B = T("1/(1+rho2)", 2, 2), T("exp(-rho2)", 2, 2)
    assert np.max(np.abs(commutator(A, B))) <= 1e-12


def test_commutator_witness():
    C = commutator(T("z1/(1+rho2)", 1, 1), T("conj(z1)/(1+rho2)", 1, 1))
    assert abs(C[1, 1] - 1 / 9) <= 1e-12 or abs(C[0, 0] + 1 / 9) <= 1e-12
    assert operator_norm(C) >= 0.1


def test_commutator_shape_mismatch():
    with pytest.raises(ValueError):
        commutator(np.eye(2), np.eye(3))


def test_defects_of_simple_matrices():
    assert diagonality_defect(np.zeros((3, 3))) == 0.0
    assert diagonality_defect(np.diag([1.0, 2.0])) == 0.0
    assert diagonality_defect(np.array([[0, 1], [0, 0]])) == 1.0
    assert hermiticity_defect(np.array([[1, 2j], [-2j, 3]])) == 0.0


def test_hermitian_eigen_examples():
    values, vectors = hermitian_eigen(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_allclose(values, [1, 2, 3], atol=1e-15)
    values, vectors = hermitian_eigen(np.array([[0.0, 1.0], [1.0, 0.0]]))
    np.testing.assert_allclose(values, [-1, 1], atol=1e-14)
    with pytest.raises(NotHermitianError):
        hermitian_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))


@pytest.mark.parametrize("size", [1, 4, 15])
def test_hermitian_eigen_matches_lapack(size):
    rng = np.random.default_rng(size)
    X = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
    H = X + X.conj().T
    values, vectors = hermitian_eigen(H)
    np.testing.assert_allclose(values, np.linalg.eigvalsh(H), atol=1e-12)
    np.testing.assert_allclose(vectors.conj().T @ vectors, np.eye(size), atol=1e-12)
    np.testing.assert_allclose(H @ vectors, vectors * values, atol=1e-11)


def test_operator_norm_examples():
    assert operator_norm(np.diag([-3.0, 2.0])) == pytest.approx(3.0, rel=1e-14)
    assert operator_norm(np.array([[0, 2], [0, 0]])) == pytest.approx(2.0, rel=1e-14)
    assert operator_norm(np.zeros((2, 2))) == 0.0


def test_match_spectra():
    ok, dev = match_spectra([1, 2, 3], [3, 1, 2 + 1e-12], 1e-9)
    assert ok and dev <= 1e-11
    ok, dev = match_spectra([1, 1], [1, 2], 1e-9)
    assert not ok and dev == pytest.approx(1)
    assert match_spectra([1], [1, 2], 1.0)[0] is False
