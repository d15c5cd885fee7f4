"""Integer polynomial containers: sparse general polynomials and quadratic forms.

Variables are 1-indexed.  A monomial is a sorted tuple of variable indices
with repetition, so x1^2*x2 is (1, 1, 2) and the constant term is ().
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping


@dataclass(frozen=True)
class IntPolynomial:
    """Sparse integer-coefficient polynomial in n variables."""

    n: int
    terms: dict[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for mono, c in self.terms.items():
            if c == 0:
                continue
            if any(v < 1 or v > self.n for v in mono):
                raise ValueError(f"monomial {mono} out of range for n={self.n}")
            clean[tuple(sorted(mono))] = clean.get(tuple(sorted(mono)), 0) + c
        object.__setattr__(self, "terms", {m: c for m, c in clean.items() if c != 0})

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def evaluate(self, xs: Iterable[int], modulus: int | None = None) -> int:
        xs = tuple(xs)
        total = 0
        for mono, c in self.terms.items():
            t = c
            for v in mono:
                t *= xs[v - 1]
            total += t
        return total % modulus if modulus else total

    def variables_used(self) -> set[int]:
        return {v for mono in self.terms for v in mono}

    def scale(self, k: int) -> "IntPolynomial":
        return IntPolynomial(self.n, {m: k * c for m, c in self.terms.items()})

    def add_constant(self, c: int) -> "IntPolynomial":
        t = dict(self.terms)
        t[()] = t.get((), 0) + c
        return IntPolynomial(self.n, t)

    def as_quadratic(self) -> "QuadraticForm":
        """View as a QuadraticForm; rejects degree > 2."""
        if self.degree() > 2:
            raise ValueError(f"polynomial has degree {self.degree()}, not quadratic")
        alpha: dict[tuple[int, int], int] = {}
        beta: dict[int, int] = {}
        gamma0 = 0
        for mono, c in self.terms.items():
            if len(mono) == 0:
                gamma0 = c
            elif len(mono) == 1:
                beta[mono[0]] = c
            else:
                alpha[(mono[0], mono[1])] = c
        return QuadraticForm(self.n, alpha, beta, gamma0)


@dataclass(frozen=True)
class QuadraticForm:
    """f(x) = sum_{i<=j} alpha[i,j] x_i x_j + sum_i beta[i] x_i + gamma0."""

    n: int
    alpha: dict[tuple[int, int], int] = field(default_factory=dict)
    beta: dict[int, int] = field(default_factory=dict)
    gamma0: int = 0

    def __post_init__(self):
        a = {}
        for (i, j), c in self.alpha.items():
            if not (1 <= i <= j <= self.n):
                raise ValueError(f"alpha key ({i},{j}) out of range for n={self.n}")
            if c != 0:
                a[(i, j)] = c
        b = {}
        for i, c in self.beta.items():
            if not (1 <= i <= self.n):
                raise ValueError(f"beta key {i} out of range for n={self.n}")
            if c != 0:
                b[i] = c
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    # -- views ----------------------------------------------------------------

    def a(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        return self.alpha.get((i, j), 0)

    def b(self, i: int) -> int:
        return self.beta.get(i, 0)

    def evaluate(self, xs: Iterable[int], modulus: int | None = None) -> int:
        xs = tuple(xs)
        total = self.gamma0
        for (i, j), c in self.alpha.items():
            total += c * xs[i - 1] * xs[j - 1]
        for i, c in self.beta.items():
            total += c * xs[i - 1]
        return total % modulus if modulus else total

    def variables_used(self) -> set[int]:
        out = {i for (i, j) in self.alpha for i in (i, j)}
        out.update(self.beta)
        return out

    def scale(self, k: int) -> "QuadraticForm":
        return QuadraticForm(
            self.n,
            {m: k * c for m, c in self.alpha.items()},
            {i: k * c for i, c in self.beta.items()},
            k * self.gamma0,
        )

    def reduce_mod(self, m: int) -> "QuadraticForm":
        return QuadraticForm(
            self.n,
            {k: c % m for k, c in self.alpha.items()},
            {i: c % m for i, c in self.beta.items()},
            self.gamma0 % m,
        )

    def neg(self) -> "QuadraticForm":
        return self.scale(-1)

    def add(self, other: "QuadraticForm") -> "QuadraticForm":
        if other.n != self.n:
            raise ValueError("variable count mismatch")
        a = dict(self.alpha)
        for k, c in other.alpha.items():
            a[k] = a.get(k, 0) + c
        b = dict(self.beta)
        for i, c in other.beta.items():
            b[i] = b.get(i, 0) + c
        return QuadraticForm(self.n, a, b, self.gamma0 + other.gamma0)

    def add_linear(self, i: int, c: int) -> "QuadraticForm":
        b = dict(self.beta)
        b[i] = b.get(i, 0) + c
        return QuadraticForm(self.n, self.alpha, b, self.gamma0)

    def key(self) -> tuple:
        """Hashable canonical key (used for memo tables)."""
        return (
            self.n,
            tuple(sorted(self.alpha.items())),
            tuple(sorted(self.beta.items())),
            self.gamma0,
        )

    def to_int_polynomial(self) -> IntPolynomial:
        terms: dict[tuple[int, ...], int] = {}
        for (i, j), c in self.alpha.items():
            terms[(i, j)] = c
        for i, c in self.beta.items():
            terms[(i,)] = c
        if self.gamma0:
            terms[()] = self.gamma0
        return IntPolynomial(self.n, terms)


def quadratic_from_mapping(
    n: int,
    alpha: Mapping[tuple[int, int], int] | None = None,
    beta: Mapping[int, int] | None = None,
    gamma0: int = 0,
) -> QuadraticForm:
    """Convenience constructor accepting alpha keys in either order."""
    a: dict[tuple[int, int], int] = {}
    for (i, j), c in (alpha or {}).items():
        if i > j:
            i, j = j, i
        a[(i, j)] = a.get((i, j), 0) + c
    return QuadraticForm(n, a, dict(beta or {}), gamma0)
