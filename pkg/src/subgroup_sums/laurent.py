"""Laurent polynomials on the torus, the reduction polynomials g_d and f_{d,m}.

A point of the torus ``T^n`` is given by its phases ``t`` in ``[0, 1)^n``,
standing for ``(e(t_1), ..., e(t_n))`` with ``e(x) = exp(2 pi i x)``.
Evaluation sums exponents times phases in real arithmetic and reduces mod 1
before taking one complex exponential per term.
"""

from __future__ import annotations

import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .cyclotomic import euler_phi, reduction_table
from .errors import ArityMismatch

__all__ = [
    "LaurentPolynomial",
    "ExponentVector",
    "EmpiricalCloud",
    "build_g",
    "build_f",
    "evaluate",
    "sample_image",
    "SAMPLE_CHUNK",
]

# fixed so that sampled clouds do not depend on the worker count
SAMPLE_CHUNK = 1 << 16


@dataclass(frozen=True)
class ExponentVector:
    """Exponents ``(m_1, ..., m_n)`` of the monomials ``a_i x**m_i``."""

    m: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(v) for v in self.m))
        if not self.m:
            raise ValueError("exponent vector must be nonempty")

    @classmethod
    def parse(cls, text: str) -> ExponentVector:
        return cls(tuple(int(v) for v in text.split(",")))

    def __len__(self) -> int:
        return len(self.m)

    def __iter__(self):
        return iter(self.m)

    def block_orders(self, d: int) -> tuple[int, ...]:
        """``d_i = d / gcd(d, m_i)``: the order of ``w**m_i`` when ``w`` has order ``d``."""
        return tuple(d // math.gcd(d, mi) for mi in self.m)

    def is_coprime_with(self, d: int) -> bool:
        return all(math.gcd(mi, d) == 1 for mi in self.m)

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.m)


def _as_exponent_vector(m) -> ExponentVector:
    if isinstance(m, ExponentVector):
        return m
    if isinstance(m, str):
        return ExponentVector.parse(m)
    if isinstance(m, int):
        return ExponentVector((m,))
    return ExponentVector(tuple(m))


@dataclass(frozen=True, eq=False)
class LaurentPolynomial:
    """Sparse Laurent polynomial with integer coefficients.

    Terms are merged and sorted lexicographically by exponent vector, so two
    polynomials are equal iff their term arrays are equal.
    """

    num_vars: int
    coefficients: np.ndarray  # (T,) int64
    exponents: np.ndarray  # (T, num_vars) int64
    blocks: tuple[int, ...] = field(default=())

    @classmethod
    def from_terms(
        cls,
        num_vars: int,
        terms: Iterable[tuple[int, Sequence[int]]],
        blocks: tuple[int, ...] = (),
    ) -> LaurentPolynomial:
        acc: dict[tuple[int, ...], int] = {}
        for coeff, exps in terms:
            key = tuple(int(e) for e in exps)
            if len(key) != num_vars:
                raise ArityMismatch(f"exponent vector {key} has length {len(key)}, expected {num_vars}")
            acc[key] = acc.get(key, 0) + int(coeff)
        keys = sorted(k for k, c in acc.items() if c != 0)
        coeffs = np.array([acc[k] for k in keys], dtype=np.int64)
        exps = np.array(keys, dtype=np.int64).reshape(len(keys), num_vars)
        coeffs.setflags(write=False)
        exps.setflags(write=False)
        return cls(num_vars, coeffs, exps, tuple(blocks))

    @property
    def num_terms(self) -> int:
        return len(self.coefficients)

    def terms(self) -> list[tuple[int, tuple[int, ...]]]:
        return [(int(c), tuple(int(e) for e in row)) for c, row in zip(self.coefficients, self.exponents)]

    def value_at_ones(self) -> int:
        return int(self.coefficients.sum())

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return (
            self.num_vars == other.num_vars
            and np.array_equal(self.coefficients, other.coefficients)
            and np.array_equal(self.exponents, other.exponents)
        )

    def __hash__(self) -> int:
        return hash((self.num_vars, tuple(self.terms())))

    def __str__(self) -> str:
        """Canonical text form: one ``coeff * z1^e1 ... zn^en`` term per line."""
        lines = []
        for c, exps in self.terms():
            mono = " ".join(f"z{v + 1}^{e}" for v, e in enumerate(exps))
            lines.append(f"{c} * {mono}")
        return "\n".join(lines)

    @classmethod
    def parse(cls, text: str) -> LaurentPolynomial:
        """Inverse of ``str()``."""
        terms, num_vars = [], None
        for line in text.strip().splitlines():
            coeff, _, mono = line.partition("*")
            pairs = re.findall(r"z(\d+)\^(-?\d+)", mono)
            n = len(pairs)
            if num_vars is None:
                num_vars = n
            elif n != num_vars:
                raise ArityMismatch("terms with different numbers of variables")
            exps = [0] * n
            for v, e in pairs:
                exps[int(v) - 1] = int(e)
            terms.append((int(coeff), exps))
        if num_vars is None:
            raise ValueError("empty polynomial text")
        return cls.from_terms(num_vars, terms)


def build_g(d: int) -> LaurentPolynomial:
    """``g_d(z_1..z_phi(d)) = sum_k prod_j z_{j+1}**c[j, k]`` from the reduction table of ``d``."""
    table = reduction_table(d)
    terms = [(1, table.entries[:, k]) for k in range(d)]
    return LaurentPolynomial.from_terms(table.euler_phi, terms, blocks=(table.euler_phi,))


def build_f(d: int, m) -> LaurentPolynomial:
    """``f_{d,m}``: variables come in blocks, block ``i`` has ``phi(d_i)`` of them."""
    m = _as_exponent_vector(m)
    tables = [reduction_table(di) for di in m.block_orders(d)]
    blocks = tuple(t.euler_phi for t in tables)
    terms = []
    for k in range(d):
        exps = np.concatenate([t.column(k) for t in tables])
        terms.append((1, exps))
    return LaurentPolynomial.from_terms(sum(blocks), terms, blocks=blocks)


def evaluate(poly: LaurentPolynomial, phases) -> complex | np.ndarray:
    """Value of ``poly`` at the torus point(s) with the given phases.

    ``phases`` has shape ``(num_vars,)`` for one point or ``(N, num_vars)``
    for a batch; the result is a complex scalar or an ``(N,)`` array.
    """
    ph = np.asarray(phases, dtype=np.float64)
    single = ph.ndim == 1
    if single:
        ph = ph[None, :]
    if ph.ndim != 2 or ph.shape[1] != poly.num_vars:
        raise ArityMismatch(f"expected {poly.num_vars} phases per point, got shape {np.shape(phases)}")
    term_phase = ph @ poly.exponents.T.astype(np.float64)
    term_phase -= np.floor(term_phase)
    vals = np.exp(2j * np.pi * term_phase) @ poly.coefficients.astype(np.complex128)
    return complex(vals[0]) if single else vals


@dataclass(frozen=True, eq=False)
class EmpiricalCloud:
    """A finite multiset of complex values plus where they came from."""

    values: np.ndarray
    source: str = ""
    seed: int | None = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.complex128).ravel())

    @property
    def count(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return self.count


def _sample_chunk(poly: LaurentPolynomial, seed: int, index: int, size: int) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
    phases = rng.random((size, poly.num_vars))
    return evaluate(poly, phases)


def sample_image(poly: LaurentPolynomial, count: int, seed: int = 0, workers: int | None = 1) -> EmpiricalCloud:
    """Monte Carlo sample of the pushforward of Haar measure under ``poly``.

    The count is cut into fixed-size chunks, chunk ``i`` drawing from its own
    child seed ``(seed, i)``, so the cloud depends only on ``(count, seed)``.
    """
    if count < 1:
        raise ValueError("count must be positive")
    sizes = [SAMPLE_CHUNK] * (count // SAMPLE_CHUNK)
    if count % SAMPLE_CHUNK:
        sizes.append(count % SAMPLE_CHUNK)
    jobs = [(poly, seed, i, s) for i, s in enumerate(sizes)]
    if workers is None or workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda j: _sample_chunk(*j), jobs))
    else:
        parts = [_sample_chunk(*j) for j in jobs]
    return EmpiricalCloud(
        np.concatenate(parts),
        source="pushforward",
        seed=seed,
        metadata={"num_vars": poly.num_vars, "num_terms": poly.num_terms},
    )


def num_vars_f(d: int, m) -> int:
    return sum(euler_phi(di) for di in _as_exponent_vector(m).block_orders(d))
