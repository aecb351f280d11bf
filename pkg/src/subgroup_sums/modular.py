"""Exact arithmetic in the unit group of Z/qZ for odd prime powers q.

Every residue is a Python ``int`` in ``[0, q)``; products never overflow.
The unit group of ``Z/p^alpha`` is cyclic for odd ``p``, so each divisor
``h`` of ``phi(q)`` has exactly one subgroup of order ``h``, generated by
``g^(phi(q)/h)`` for any primitive root ``g``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NotAUnit, NotAdmissible, NotOddPrimePower, OrderDoesNotDivide

__all__ = [
    "Modulus",
    "OrderDElement",
    "SubgroupSpec",
    "factor_prime_power",
    "is_d_admissible",
    "enumerate_admissible",
    "multiplicative_order",
    "primitive_root",
    "element_of_order",
    "elements_of_order",
    "subgroup_of_order",
    "prime_factors",
]


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n >= 1`` in increasing order (trial division)."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    out = []
    if n % 2 == 0:
        out.append(2)
        while n % 2 == 0:
            n //= 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 2
    if n > 1:
        out.append(n)
    return out


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


@dataclass(frozen=True)
class Modulus:
    """An odd prime power ``q = p**alpha``."""

    q: int
    p: int
    alpha: int

    def __post_init__(self):
        if self.p < 3 or self.alpha < 1 or self.p**self.alpha != self.q:
            raise NotOddPrimePower(f"inconsistent modulus q={self.q}, p={self.p}, alpha={self.alpha}")

    @property
    def phi_q(self) -> int:
        return self.p ** (self.alpha - 1) * (self.p - 1)

    @classmethod
    def of(cls, q: int) -> Modulus:
        return factor_prime_power(q)

    def __int__(self) -> int:
        return self.q

    def __str__(self) -> str:
        return str(self.q) if self.alpha == 1 else f"{self.q} = {self.p}^{self.alpha}"


@lru_cache(maxsize=4096)
def factor_prime_power(q: int) -> Modulus:
    """Write ``q`` as ``p**alpha`` with ``p`` an odd prime.

    >>> factor_prime_power(961)
    Modulus(q=961, p=31, alpha=2)
    """
    q = int(q)
    if q < 3 or q % 2 == 0:
        raise NotOddPrimePower(f"{q} is not an odd prime power")
    p = _smallest_prime_factor(q)
    alpha, rest = 0, q
    while rest % p == 0:
        rest //= p
        alpha += 1
    if rest != 1:
        raise NotOddPrimePower(f"{q} has at least two distinct prime factors")
    return Modulus(q, p, alpha)


def _as_modulus(m) -> Modulus:
    return m if isinstance(m, Modulus) else factor_prime_power(int(m))


def is_d_admissible(q: int, d: int) -> bool:
    """True iff ``q = p**alpha`` with ``p`` an odd prime and ``p = 1 (mod d)``."""
    if d < 1:
        return False
    try:
        mod = factor_prime_power(q)
    except NotOddPrimePower:
        return False
    return (mod.p - 1) % d == 0


def _odd_primes_upto(n: int) -> np.ndarray:
    if n < 3:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for f in range(3, math.isqrt(n) + 1, 2):
        if sieve[f]:
            sieve[f * f :: 2 * f] = False
    primes = np.flatnonzero(sieve)
    return primes[primes > 2]


def enumerate_admissible(d: int, lo: int, hi: int) -> list[Modulus]:
    """All ``d``-admissible ``q`` with ``lo <= q <= hi``, ascending."""
    if d < 1:
        raise ValueError("d must be positive")
    out = []
    for p in _odd_primes_upto(hi):
        p = int(p)
        if (p - 1) % d:
            continue
        q, alpha = p, 1
        while q <= hi:
            if q >= lo:
                out.append(Modulus(q, p, alpha))
            q *= p
            alpha += 1
    out.sort(key=lambda m: m.q)
    return out


@lru_cache(maxsize=4096)
def _phi_prime_factors(q: int) -> tuple[int, ...]:
    mod = factor_prime_power(q)
    fs = set(prime_factors(mod.p - 1))
    if mod.alpha > 1:
        fs.add(mod.p)
    return tuple(sorted(fs))


def multiplicative_order(x: int, m) -> int:
    """Least ``k >= 1`` with ``x**k = 1 (mod q)``.

    Starts from ``phi(q)`` and strips prime factors while the power stays 1.
    """
    mod = _as_modulus(m)
    q = mod.q
    x %= q
    if math.gcd(x, q) != 1:
        raise NotAUnit(f"{x} is not invertible modulo {q}")
    order = mod.phi_q
    for ell in _phi_prime_factors(q):
        while order % ell == 0 and pow(x, order // ell, q) == 1:
            order //= ell
    return order


@lru_cache(maxsize=4096)
def _primitive_root(q: int) -> int:
    mod = factor_prime_power(q)
    phi = mod.phi_q
    ells = _phi_prime_factors(q)
    for g in range(2, q):
        if g % mod.p == 0:
            continue
        if all(pow(g, phi // ell, q) != 1 for ell in ells):
            return g
    # q = 3 falls through only if the loop is empty, which it is not
    raise AssertionError(f"no primitive root found modulo {q}")


def primitive_root(m) -> int:
    """Smallest generator of the cyclic group ``(Z/qZ)^x``."""
    return _primitive_root(_as_modulus(m).q)


@dataclass(frozen=True)
class OrderDElement:
    """A residue ``w`` of exact multiplicative order ``d`` modulo ``q``."""

    modulus: Modulus
    d: int
    w: int

    def __post_init__(self):
        if (self.modulus.p - 1) % self.d:
            raise NotAdmissible(f"q={self.modulus.q} is not {self.d}-admissible")
        if multiplicative_order(self.w, self.modulus) != self.d:
            raise NotAdmissible(f"{self.w} does not have order {self.d} modulo {self.modulus.q}")

    def power(self, e: int) -> int:
        """``w**e mod q``; negative exponents go through the modular inverse."""
        return pow(self.w, e, self.modulus.q)

    def powers(self) -> list[int]:
        """The ``d`` elements ``w**0, ..., w**(d-1)`` of the order-``d`` subgroup."""
        q = self.modulus.q
        out, x = [], 1
        for _ in range(self.d):
            out.append(x)
            x = x * self.w % q
        return out


def element_of_order(m, d: int, w: int | None = None) -> OrderDElement:
    """Deterministic element of order ``d``: ``g**(phi(q)/d)`` for the smallest primitive root ``g``.

    Pass ``w`` to use another element of order ``d`` instead; it is validated.
    """
    try:
        mod = _as_modulus(m)
    except NotOddPrimePower as exc:
        raise NotAdmissible(str(exc)) from exc
    if d < 1 or (mod.p - 1) % d:
        raise NotAdmissible(f"q={mod.q} is not {d}-admissible")
    if w is None:
        w = pow(primitive_root(mod), mod.phi_q // d, mod.q)
    return OrderDElement(mod, d, int(w) % mod.q)


def elements_of_order(m, d: int) -> list[OrderDElement]:
    """Every element of order ``d`` (there are ``phi(d)`` of them), sorted by residue."""
    base = element_of_order(m, d)
    ws = sorted(base.power(k) for k in range(1, d + 1) if math.gcd(k, d) == 1)
    return [OrderDElement(base.modulus, d, w) for w in ws]


@dataclass(frozen=True)
class SubgroupSpec:
    """The unique subgroup of ``(Z/qZ)^x`` of a given order, with a generator."""

    modulus: Modulus
    order: int
    generator: int

    def elements(self) -> np.ndarray:
        """``generator**k`` for ``k = 0 .. order-1`` as an int64 array (object dtype for huge q)."""
        q = self.modulus.q
        dtype = np.int64 if q < 2**62 else object
        out = np.empty(self.order, dtype=dtype)
        x = 1
        for k in range(self.order):
            out[k] = x
            x = x * self.generator % q
        return out

    def __len__(self) -> int:
        return self.order

    def __contains__(self, x) -> bool:
        q = self.modulus.q
        x = int(x) % q
        return math.gcd(x, q) == 1 and pow(x, self.order, q) == 1


def subgroup_of_order(m, h: int) -> SubgroupSpec:
    mod = _as_modulus(m)
    if h < 1 or mod.phi_q % h:
        raise OrderDoesNotDivide(f"{h} does not divide phi({mod.q}) = {mod.phi_q}")
    g = pow(primitive_root(mod), mod.phi_q // h, mod.q)
    return SubgroupSpec(mod, h, g)
