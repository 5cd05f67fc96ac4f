"""Multi-index sets J_n(m) and the monomial norm constants of the Bergman spaces."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple

from .errors import ParamError

MultiIndex = Tuple[int, ...]

MAX_DIMENSION = 10**6

# exact factorials for arguments <= 64, log-gamma beyond
_FACTORIALS = tuple(math.factorial(k) for k in range(65))


@dataclass(frozen=True)
class SpaceParams:
    """Complex dimension ``n`` of CP^n and weight ``m`` of the Bergman space."""

    n: int
    m: int

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise ParamError(f"n must be a positive integer, got {self.n!r}")
        if not isinstance(self.m, int) or isinstance(self.m, bool) or self.m < 0:
            raise ParamError(f"m must be a non-negative integer, got {self.m!r}")


def graded_lex_key(p: Sequence[int]):
    """Sort key of the basis order: total degree first, then descending lex.

    Within one degree, (1, 0) precedes (0, 1): the monomial z1 comes before z2.
    """
    return (sum(p), tuple(-x for x in p))


def _compositions(n: int, d: int):
    # all p in Z_+^n with |p| = d, descending lexicographic
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(n - 1, d - first):
            yield (first,) + rest


@lru_cache(maxsize=128)
def _enumerate(n: int, m: int) -> Tuple[MultiIndex, ...]:
    return tuple(p for d in range(m + 1) for p in _compositions(n, d))


def dimension(params: SpaceParams) -> int:
    """Number of basis monomials, C(n+m, n).

    Raises ParamError above ``MAX_DIMENSION``: dense matrices that large are
    out of scope.
    """
    dim = math.comb(params.n + params.m, params.n)
    if dim > MAX_DIMENSION:
        raise ParamError(
            f"dimension C({params.n + params.m}, {params.n}) = {dim} exceeds cap {MAX_DIMENSION}"
        )
    return dim


def enumerate_indices(params: SpaceParams) -> Tuple[MultiIndex, ...]:
    """All p with |p| <= m in graded-lex order (the canonical basis order)."""
    dimension(params)
    return _enumerate(params.n, params.m)


def index_map(params: SpaceParams) -> dict:
    """Position of each multi-index in the canonical order."""
    return {p: i for i, p in enumerate(enumerate_indices(params))}


def _check_index(p: Sequence[int], params: SpaceParams) -> MultiIndex:
    p = tuple(int(x) for x in p)
    if len(p) != params.n:
        raise ParamError(f"multi-index {p} has length {len(p)}, expected n={params.n}")
    if any(x < 0 for x in p):
        raise ParamError(f"multi-index {p} has a negative entry")
    if sum(p) > params.m:
        raise ParamError(f"|p| = {sum(p)} exceeds m = {params.m}")
    return p


def _log_factorial(k: int) -> float:
    return math.lgamma(k + 1)


def normalization_constant(p: Sequence[int], params: SpaceParams) -> float:
    """c_p = m! / (p! (m-|p|)!), the squared normalizing factor of z^p."""
    p = _check_index(p, params)
    m = params.m
    rest = m - sum(p)
    if m <= 64:
        denom = _FACTORIALS[rest]
        for x in p:
            denom *= _FACTORIALS[x]
        # exact integer multinomial coefficient
        return float(_FACTORIALS[m] // denom)
    log_c = _log_factorial(m) - _log_factorial(rest) - sum(_log_factorial(x) for x in p)
    return math.exp(log_c)


def basis_norm_sq(p: Sequence[int], params: SpaceParams) -> float:
    """<z^p, z^p>_m = p! (m-|p|)! / m!."""
    return 1.0 / normalization_constant(p, params)
