"""Closed-form univariate Gauss sums G(a,d) and half Gauss sums G_{1/2}(a,d).

G(a,d)     = sum over x in Z_d of omega_d^(a x^2)
G_{1/2}(a,d) = sum over x in Z_d of xi_d^(a x^2)

Both require gcd(a,d)=1 and are evaluated in poly(log a, log d) arithmetic
steps: the odd part goes through the Jacobi symbol, the 2-power part through
small direct-sum base cases plus halving recursions, and composite moduli
split multiplicatively via the Chinese remainder theorem.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from .cyclotomic import (
    CyclotomicNumber,
    SignConvention,
    one,
    root_of_unity,
    sqrt_int,
    xi_pow,
)
from .numtheory import crt_split, jacobi_symbol


def _direct_gauss(a: int, d: int) -> CyclotomicNumber:
    acc: dict[int, int] = {}
    for x in range(d):
        e = (a * x * x) % d
        acc[e] = acc.get(e, 0) + 1
    return CyclotomicNumber(d, acc)


def _gauss_odd(a: int, d: int) -> CyclotomicNumber:
    # G(a,d) = (a/d) G(1,d), and G(1,d) is sqrt(d) or i*sqrt(d) by d mod 4.
    j = jacobi_symbol(a, d)
    g1 = sqrt_int(d) if d % 4 == 1 else sqrt_int(d) * root_of_unity(4, 1)
    return g1.scale(j)


@lru_cache(maxsize=1 << 12)
def _gauss_two_power(a: int, k: int) -> CyclotomicNumber:
    if k <= 3:
        return _direct_gauss(a % (1 << k), 1 << k)
    # halving the modulus twice doubles the sum, as for the half sums; the
    # step size is pinned by the exhaustive direct-summation oracle
    return _gauss_two_power(a % (1 << (k - 2)), k - 2).scale(2)


@lru_cache(maxsize=1 << 14)
def _gauss_cached(a: int, d: int) -> CyclotomicNumber:
    if d == 1:
        return one()
    k = (d & -d).bit_length() - 1
    c = d >> k
    if k == 0:
        return _gauss_odd(a, d)
    if c == 1:
        return _gauss_two_power(a % (2 * d), k)
    # G(a, bc) = G(ab, c) G(ac, b) with b = 2^k
    b = 1 << k
    return _gauss_odd((a * b) % c, c) * _gauss_two_power((a * c) % (2 * b), k)


def gauss_sum(a: int, d: int) -> CyclotomicNumber:
    """Exact G(a, d); rejects gcd(a, d) != 1."""
    if d < 1:
        raise ValueError("modulus must be positive")
    if gcd(a, d) != 1:
        raise ValueError(f"gauss_sum requires gcd(a, d) = 1, got a={a}, d={d}")
    return _gauss_cached(a % d if d > 1 else 0, d)


def _direct_half(a: int, d: int, conv: SignConvention) -> CyclotomicNumber:
    acc = one().scale(0)
    for x in range(d):
        acc = acc + xi_pow(d, a * x * x, conv)
    return acc


@lru_cache(maxsize=1 << 12)
def _half_two_power(a: int, m: int, minus: bool) -> CyclotomicNumber:
    if m == 1:
        # 1 + i^a, or 1 + (-i)^a for the minus convention
        t = (3 * a) % 4 if minus else a % 4
        return one() + root_of_unity(4, t)
    if m == 2:
        if minus:
            return _direct_half(a % 8, 4, SignConvention.MINUS_FOR_EVEN)
        return root_of_unity(8, a).scale(2)
    # m >= 3 recursion; the minus variant drops to the plus convention.
    return _half_two_power(a % (1 << (m - 1)), m - 2, False).scale(2)


@lru_cache(maxsize=1 << 14)
def _half_cached(a: int, d: int, conv: SignConvention) -> CyclotomicNumber:
    if d == 1:
        return one()
    if d % 2 == 1:
        # G_{1/2}(a,d) = G(a(d+1)/2, d)
        return gauss_sum((a * ((d + 1) // 2)) % d, d)
    s = crt_split(d)
    minus = conv is SignConvention.MINUS_FOR_EVEN
    m = s.b.bit_length() - 1
    two_part = _half_two_power((a * (s.n1 + s.b * s.n2)) % (2 * s.b), m, minus)
    if s.c == 1:
        return two_part
    return two_part * _half_cached((a * s.n2) % s.c, s.c, SignConvention.PLUS)


def half_gauss_sum(
    a: int, d: int, conv: SignConvention = SignConvention.PLUS
) -> CyclotomicNumber:
    """Exact G_{1/2}(a, d) under the chosen sign convention; rejects gcd(a,d) != 1."""
    if d < 1:
        raise ValueError("modulus must be positive")
    if gcd(a, d) != 1:
        raise ValueError(f"half_gauss_sum requires gcd(a, d) = 1, got a={a}, d={d}")
    mod = d if d % 2 == 1 else 2 * d
    return _half_cached(a % mod, d, conv)


def q_constant(d: int, conv: SignConvention = SignConvention.PLUS) -> CyclotomicNumber:
    """The unit q_d = G_{1/2}(1, d) / sqrt(d), exactly."""
    if d < 2:
        raise ValueError("q_constant needs d >= 2")
    from fractions import Fraction

    return half_gauss_sum(1, d, conv) * sqrt_int(d).scale(Fraction(1, d))
