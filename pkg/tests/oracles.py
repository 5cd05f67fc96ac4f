"""Independent reference values: exact rationals and mpmath quadrature.

Nothing here imports the package's quadrature; the closed forms come from
the Dirichlet integral

    int_{R_+^n} s^a (1 + |s|)^-b ds = prod_j a_j! * (b - n - |a| - 1)! / (b - 1)!

for non-negative integers a_j and b > n + |a|.
"""
from fractions import Fraction
from math import factorial

import mpmath


def dirichlet(a, b) -> Fraction:
    n = len(a)
    top = b - n - sum(a) - 1
    if top < 0:
        raise ValueError("divergent Dirichlet integral")
    num = factorial(top)
    for x in a:
        num *= factorial(x)
    return Fraction(num, factorial(b - 1))


def multinomial(p, m) -> int:
    den = factorial(m - sum(p))
    for x in p:
        den *= factorial(x)
    return factorial(m) // den


def monomial_norm_sq(p, m) -> Fraction:
    den = factorial(m)
    num = factorial(m - sum(p))
    for x in p:
        num *= factorial(x)
    return Fraction(num, den)


def gamma_rational(p, n, m, numerator_shift=None, extra_power=0) -> Fraction:
    """gamma(p) for a = s^shift / (1 + |s|)^extra_power, exactly."""
    a = list(p)
    if numerator_shift is not None:
        a = [x + y for x, y in zip(a, numerator_shift)]
    scale = Fraction(factorial(n + m), factorial(m))
    return multinomial(p, m) * scale * dirichlet(a, n + m + 1 + extra_power)


def gamma_inv_rho(p, n, m) -> Fraction:
    return gamma_rational(p, n, m, extra_power=1)


def gamma_rj(p, n, m, j) -> Fraction:
    shift = [0] * n
    shift[j] = 1
    return gamma_rational(p, n, m, numerator_shift=shift, extra_power=1)


def gamma_exp(p, n, m) -> float:
    """gamma(p) for a = exp(-rho2), reduced to one dimension by the Liouville formula.

    int s^p f(|s|) ds = prod p_j! / (|p|+n-1)! * int_0^inf t^(|p|+n-1) f(t) dt.
    """
    mpmath.mp.dps = 30
    deg = sum(p) + n - 1
    radial = mpmath.quad(lambda t: t**deg * mpmath.exp(-t) / (1 + t) ** (n + m + 1), [0, 1, mpmath.inf])
    coef = Fraction(factorial(n + m), factorial(m)) * multinomial(p, m)
    for x in p:
        coef *= factorial(x)
    coef /= factorial(deg)
    return float(coef) * float(radial)


def gamma_oracle(symbol: str, p, n, m) -> float:
    """Reference gamma for the radial test set."""
    if symbol == "1":
        return 1.0
    if symbol == "1/(1+rho2)":
        return float(gamma_inv_rho(p, n, m))
    if symbol == "r1^2/(1+rho2)":
        return float(gamma_rj(p, n, m, 0))
    if symbol == "1/(1+rho2)^2":
        return float(gamma_rational(p, n, m, extra_power=2))
    if symbol == "exp(-rho2)":
        return gamma_exp(p, n, m)
    raise KeyError(symbol)


def all_indices(n, m):
    """J_n(m) by brute force over the cube, in no particular order."""
    from itertools import product

    return [p for p in product(range(m + 1), repeat=n) if sum(p) <= m]
