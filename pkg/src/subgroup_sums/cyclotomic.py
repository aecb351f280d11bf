"""Integer polynomials, cyclotomic polynomials and reduction tables.

Coefficients are Python ``int`` or :class:`fractions.Fraction`, so every
result here is exact. The reduction table of ``d`` stores, for each
``0 <= k < d``, the coefficients of ``X**k mod phi_d``.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, NamedTuple

import numpy as np

from .errors import DivisionByZeroPolynomial
from .modular import prime_factors

__all__ = [
    "Polynomial",
    "IntPolynomial",
    "ReductionTable",
    "DivModResult",
    "euler_phi",
    "divisors",
    "cyclotomic_polynomial",
    "reduction_table",
    "polynomial_divmod",
]


def _normalize(c):
    if isinstance(c, Fraction):
        return int(c.numerator) if c.denominator == 1 else c
    if isinstance(c, numbers.Integral):
        return int(c)
    return c


@dataclass(frozen=True, init=False)
class Polynomial:
    """Dense univariate polynomial; ``coefficients[i]`` multiplies ``X**i``.

    Trailing zeros are trimmed, so the zero polynomial has no coefficients
    and ``degree == -1``.
    """

    coefficients: tuple

    def __init__(self, coefficients: Iterable = ()):
        cs = [_normalize(c) for c in coefficients]
        for c in cs:
            if not isinstance(c, (int, Fraction)):
                raise TypeError(f"coefficient {c!r} is not an int or Fraction")
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coefficients", tuple(cs))

    @classmethod
    def monomial(cls, k: int, c=1) -> Polynomial:
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coefficients)

    @property
    def leading(self):
        return self.coefficients[-1] if self.coefficients else 0

    def __getitem__(self, i: int):
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def eval_mod(self, x: int, q: int) -> int:
        """Horner evaluation in ``Z/qZ``; requires integral coefficients."""
        acc = 0
        for c in reversed(self.coefficients):
            acc = (acc * x + c) % q
        return acc

    def __add__(self, other: Polynomial) -> Polynomial:
        n = max(len(self.coefficients), len(other.coefficients))
        return Polynomial(self[i] + other[i] for i in range(n))

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coefficients)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            return Polynomial(c * other for c in self.coefficients)
        if self.is_zero or other.is_zero:
            return Polynomial()
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def denominator_lcm(self) -> int:
        return lcm(1, *(Fraction(c).denominator for c in self.coefficients))

    def content(self) -> int:
        """gcd of the coefficients of an integral polynomial (0 for the zero polynomial)."""
        return gcd(*self.coefficients) if self.coefficients else 0

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if mono and c == 1:
                s = mono
            elif mono and c == -1:
                s = f"-{mono}"
            else:
                s = f"{c}{'*' + mono if mono else ''}"
            parts.append(s)
        return " + ".join(parts).replace("+ -", "- ")


IntPolynomial = Polynomial


class DivModResult(NamedTuple):
    quotient: Polynomial
    remainder: Polynomial
    exact: bool


def polynomial_divmod(a: Polynomial, b: Polynomial) -> DivModResult:
    """Euclidean division ``a = quotient*b + remainder`` over the rationals.

    ``exact`` is true when both quotient and remainder have integer coefficients.
    """
    if b.is_zero:
        raise DivisionByZeroPolynomial("division by the zero polynomial")
    rem = [Fraction(c) for c in a.coefficients]
    db, lb = b.degree, Fraction(b.leading)
    quot = [Fraction(0)] * max(len(rem) - db, 0)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i] / lb
        if c:
            quot[i - db] = c
            for j, bc in enumerate(b.coefficients):
                rem[i - db + j] -= c * bc
    q, r = Polynomial(quot), Polynomial(rem[:db] if db > 0 else [])
    return DivModResult(q, r, q.is_integral and r.is_integral)


def euler_phi(n: int) -> int:
    """Euler's totient from the prime factorization of ``n``."""
    out = n
    for ell in prime_factors(n):
        out = out // ell * (ell - 1)
    return out


def divisors(n: int) -> list[int]:
    small, large = [], []
    f = 1
    while f * f <= n:
        if n % f == 0:
            small.append(f)
            if f * f != n:
                large.append(n // f)
        f += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> Polynomial:
    """``phi_d = (X**d - 1) / prod(phi_m for m | d, m < d)`` by exact division."""
    if d < 1:
        raise ValueError("d must be positive")
    num = Polynomial([-1] + [0] * (d - 1) + [1])
    den = Polynomial([1])
    for m in divisors(d)[:-1]:
        den = den * cyclotomic_polynomial(m)
    quot, rem, exact = polynomial_divmod(num, den)
    assert exact and rem.is_zero, f"cyclotomic division for d={d} not exact"
    return quot


@dataclass(frozen=True, eq=False)
class ReductionTable:
    """``entries[j, k]`` is the coefficient of ``X**j`` in ``X**k mod phi_d``."""

    d: int
    euler_phi: int
    entries: np.ndarray

    def column(self, k: int) -> np.ndarray:
        """Reduction of ``X**k`` for any integer ``k`` (``X**d = 1 mod phi_d``)."""
        return self.entries[:, k % self.d]


@lru_cache(maxsize=None)
def reduction_table(d: int) -> ReductionTable:
    """Columns ``X**0 .. X**(d-1)`` reduced modulo ``phi_d`` by shift-and-reduce."""
    phi = cyclotomic_polynomial(d)
    n = phi.degree
    low = [-c for c in phi.coefficients[:n]]  # X**n = sum low[j] X**j
    cols = []
    cur = [0] * n
    cur[0] = 1
    for _ in range(d):
        cols.append(list(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c + top * lj for c, lj in zip(cur, low)]
    entries = np.array(cols, dtype=np.int64).T.copy()
    entries.setflags(write=False)
    return ReductionTable(d, n, entries)
