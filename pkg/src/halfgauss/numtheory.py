"""Integer utilities: gcd/inverse, Jacobi symbol, factorization, CRT splitting.

All functions are pure and safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass

FACTOR_CAP = 1 << 63


@dataclass(frozen=True)
class CrtSplit:
    """Decomposition d = b*c with b the maximal 2-power, plus Bezout data.

    Invariants: b*c = d, gcd(b, c) = 1, c odd, and n1*c + n2*b = 1.
    """

    b: int
    c: int
    n1: int
    n2: int


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, u, v) with g = gcd(a, b) >= 0 and u*a + v*b = g."""
    if a == 0 and b == 0:
        raise ValueError("extended_gcd(0, 0) is undefined")
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def modinv(a: int, m: int) -> int:
    """Inverse of a modulo m; raises if gcd(a, m) != 1."""
    g, u, _ = extended_gcd(a, m)
    if g != 1:
        raise ValueError(f"{a} is not invertible modulo {m}")
    return u % m


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n, via quadratic reciprocity.

    Returns 0 iff gcd(a, n) > 1. Cost is polynomial in log of the inputs.
    """
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd positive n, got {n}")
    a %= n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def crt_split(d: int) -> CrtSplit:
    """Split even d as b*c with b = 2^m maximal; n1 is canonicalized into (-b/2, b/2]."""
    if d < 2 or d % 2 != 0:
        raise ValueError(f"crt_split needs even d >= 2, got {d}")
    b = d & (-d)
    c = d // b
    n1 = modinv(c, b)
    if n1 > b // 2:
        n1 -= b
    n2 = (1 - n1 * c) // b
    assert n1 * c + n2 * b == 1
    return CrtSplit(b=b, c=c, n1=n1, n2=n2)


def factorize(d: int) -> list[tuple[int, int]]:
    """Sorted prime factorization of d by trial division; requires 1 <= d < 2^63."""
    if d < 1:
        raise ValueError(f"factorize needs d >= 1, got {d}")
    if d >= FACTOR_CAP:
        raise ValueError(f"factorize input {d} exceeds the 2^63 cap")
    out: list[tuple[int, int]] = []
    for p in (2, 3):
        if d % p == 0:
            k = 0
            while d % p == 0:
                d //= p
                k += 1
            out.append((p, k))
    # 6k+-1 wheel
    p = 5
    step = 2
    while p * p <= d:
        if d % p == 0:
            k = 0
            while d % p == 0:
                d //= p
                k += 1
            out.append((p, k))
        p += step
        step = 6 - step
    if d > 1:
        out.append((d, 1))
    return sorted(out)


def valuation(x: int, p: int) -> int:
    """p-adic valuation of x; returns a large sentinel for x = 0."""
    if x == 0:
        return 1 << 30
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v
