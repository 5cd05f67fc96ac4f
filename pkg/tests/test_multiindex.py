import math

import pytest
from hypothesis import given, strategies as st

from cpn_toeplitz.errors import ParamError
from cpn_toeplitz.multiindex import (
    SpaceParams,
    basis_norm_sq,
    dimension,
    enumerate_indices,
    graded_lex_key,
    normalization_constant,
)
from oracles import all_indices, monomial_norm_sq


@pytest.mark.parametrize(
    "n, m, expected",
    [
        (1, 3, [(0,), (1,), (2,), (3,)]),
        (2, 1, [(0, 0), (1, 0), (0, 1)]),
        (3, 0, [(0, 0, 0)]),
    ],
)
def test_enumerate_examples(n, m, expected):
    assert list(enumerate_indices(SpaceParams(n, m))) == expected


def test_enumerate_degree_two():
    assert enumerate_indices(SpaceParams(2, 2))[3:] == ((2, 0), (1, 1), (0, 2))


@pytest.mark.parametrize("n, m, expected", [(2, 2, 6), (1, 5, 6), (4, 1, 5)])
def test_dimension_examples(n, m, expected):
    assert dimension(SpaceParams(n, m)) == expected


@pytest.mark.parametrize("n", range(1, 12))
def test_enumeration_matches_brute_force(n):
    for m in range(0, 13 - n):
        params = SpaceParams(n, m)
        got = enumerate_indices(params)
        assert len(got) == math.comb(n + m, n) == dimension(params)
        assert sorted(got) == sorted(all_indices(n, m))


@given(st.integers(1, 5), st.integers(0, 6))
def test_order_is_strict_and_sorted(n, m):
    got = enumerate_indices(SpaceParams(n, m))
    assert len(set(got)) == len(got)
    keys = [graded_lex_key(p) for p in got]
    assert all(a < b for a, b in zip(keys, keys[1:]))


def test_dimension_cap():
    with pytest.raises(ParamError):
        dimension(SpaceParams(20, 20))


@pytest.mark.parametrize("n, m", [(0, 1), (1, -1), (1.5, 2)])
def test_invalid_params(n, m):
    with pytest.raises(ParamError):
        SpaceParams(n, m)


@pytest.mark.parametrize(
    "p, n, m, expected",
    [((1, 1), 2, 2, 0.5), ((0, 0, 0), 3, 7, 1.0), ((2,), 1, 2, 1.0)],
)
def test_basis_norm_sq_examples(p, n, m, expected):
    assert basis_norm_sq(p, SpaceParams(n, m)) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize(
    "p, n, m, expected", [((1, 1), 2, 2, 2.0), ((0, 0), 2, 5, 1.0), ((1,), 1, 1, 1.0)]
)
def test_normalization_constant_examples(p, n, m, expected):
    assert normalization_constant(p, SpaceParams(n, m)) == expected


@pytest.mark.parametrize("n, m", [(1, 10), (2, 6), (3, 4), (2, 40), (1, 80)])
def test_norms_against_exact_rationals(n, m):
    params = SpaceParams(n, m)
    for p in enumerate_indices(params):
        exact = monomial_norm_sq(p, m)
        assert basis_norm_sq(p, params) == pytest.approx(float(exact), rel=1e-12)
        assert basis_norm_sq(p, params) * normalization_constant(p, params) == pytest.approx(1.0, abs=1e-14)


def test_rejects_index_above_weight():
    with pytest.raises(ParamError):
        basis_norm_sq((2, 1), SpaceParams(2, 2))
    with pytest.raises(ParamError):
        normalization_constant((3,), SpaceParams(1, 2))
