"""Exponential-time exact reference engines.

These are the ground truth for everything else: general incomplete Gauss
sums Z_I(d, b, f) summed term by term in exact cyclotomic arithmetic,
solution counting, and the Fourier zero-counting identities.  A term budget
(default 10^7, overridable via HG_BUDGET or an explicit argument) guards
against runaway enumerations.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cyclotomic import (
    CyclotomicNumber,
    SignConvention,
    from_omega_counts,
    xi_exponent_modulus,
    xi_pow,
)
from .errors import BudgetExceededError
from .expsum import check_periodicity, eval_half_gauss
from .polynomials import IntPolynomial, QuadraticForm

DEFAULT_BUDGET = 10_000_000


def term_budget(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("HG_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class SumDescriptor:
    """An incomplete Gauss sum instance: variables over Z_d, phases at omega_b."""

    domain_modulus: int
    phase_modulus: int
    poly: IntPolynomial

    def __post_init__(self):
        if self.domain_modulus < 1 or self.phase_modulus < 1:
            raise ValueError("moduli must be positive")
        if self.domain_modulus > self.phase_modulus:
            raise ValueError(
                f"domain modulus {self.domain_modulus} exceeds phase modulus "
                f"{self.phase_modulus}"
            )


def _check_budget(d: int, n: int, budget: int | None):
    needed = d**n
    cap = term_budget(budget)
    if needed > cap:
        raise BudgetExceededError(needed, cap)


def _value_counts(d: int, poly: IntPolynomial, modulus: int) -> np.ndarray:
    """Histogram of f(x) mod modulus over the full grid Z_d^n."""
    n = poly.n
    if d**n <= 512:
        counts = np.zeros(modulus, dtype=np.int64)
        for xs in itertools.product(range(d), repeat=n):
            counts[poly.evaluate(xs, modulus)] += 1
        return counts
    values = np.zeros((d,) * n, dtype=np.int64)
    for mono, c in poly.terms.items():
        term = np.int64(c % modulus)
        for v in mono:
            shape = [1] * n
            shape[v - 1] = d
            term = term * np.arange(d, dtype=np.int64).reshape(shape) % modulus
        values = (values + term) % modulus
    return np.bincount(values.reshape(-1), minlength=modulus)


def brute_sum(s: SumDescriptor, budget: int | None = None) -> CyclotomicNumber:
    """Exact Z_I(d, b, f) by term-by-term cyclotomic summation."""
    _check_budget(s.domain_modulus, s.poly.n, budget)
    counts = _value_counts(s.domain_modulus, s.poly, s.phase_modulus)
    return from_omega_counts(s.phase_modulus, counts)


def brute_half_gauss(
    d: int,
    f: QuadraticForm,
    conv: SignConvention = SignConvention.PLUS,
    budget: int | None = None,
) -> CyclotomicNumber:
    """Exact Z_{1/2}(d, f) by enumeration; works for aperiodic f too."""
    from .cyclotomic import from_xi_counts

    _check_budget(d, f.n, budget)
    mod = xi_exponent_modulus(d)
    counts = _value_counts(d, f.to_int_polynomial(), mod)
    return from_xi_counts(d, counts, conv)


def count_solutions(
    d: int, f: IntPolynomial, j: int, modulus: int, budget: int | None = None
) -> int:
    """Number of x in Z_d^n with f(x) = j (mod modulus)."""
    if modulus < 1:
        raise ValueError("modulus must be positive")
    _check_budget(d, f.n, budget)
    counts = _value_counts(d, f, modulus)
    return int(counts[j % modulus])


def fourier_zero_identity_check(
    d: int, f: QuadraticForm, j: int, budget: int | None = None
) -> bool:
    """Check the inverse-Fourier zero-counting identity at outcome j.

    The left side counts solutions of f = j (mod 2d for even d, mod d for
    odd d) by enumeration; the right side is (1/mod) sum_k xi^{-kj}
    Z_{1/2}(d, k f) with the half sums taken through the fast evaluator.
    Scaling preserves the periodicity condition, which is asserted here.
    """
    mod = xi_exponent_modulus(d)
    lhs = count_solutions(d, f.to_int_polynomial(), j, mod, budget)
    rhs = CyclotomicNumber.zero()
    for k in range(mod):
        kf = f.scale(k).reduce_mod(mod)
        assert check_periodicity(d, kf), "scaling must preserve periodicity"
        rhs = rhs + xi_pow(d, -k * j) * eval_half_gauss(d, kf).value
    return rhs.scale(Fraction(1, mod)) == CyclotomicNumber.from_rational(lhs)
