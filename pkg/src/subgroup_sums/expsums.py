"""Exponential sums over the order-d subgroup of (Z/qZ)^x.

For ``w`` of order ``d`` and exponents ``m = (m_1, ..., m_n)`` the restricted
sum is

    theta(a) = sum_{k < d} e(r_k / q),   r_k = sum_i a_i (w**m_i)**k  mod q.

The residues ``r_k`` are computed exactly in integers; only the final
exponentials are floating point, and they are always formed the same way
(:func:`phase_sum`) so a value recomputed from its residues is bitwise equal.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence, Union

import numpy as np

from .cyclotomic import euler_phi
from .errors import RangeInconsistent
from .laurent import ExponentVector, _as_exponent_vector, build_f, build_g, evaluate
from .modular import (
    Modulus,
    OrderDElement,
    _as_modulus,
    element_of_order,
    primitive_root,
    subgroup_of_order,
)

__all__ = [
    "Fixed",
    "Subgroup",
    "FullRing",
    "parse_range",
    "range_values",
    "SumFamilySpec",
    "SumRecord",
    "NAMED_EXPONENTS",
    "phase_sum",
    "monomial_powers",
    "restricted_sum",
    "family_chunks",
    "family_values",
    "sum_family",
    "kloosterman_complete",
    "kloosterman_values",
    "named_sum",
    "verify_identity",
    "identity_residuals",
]

FAMILY_CHUNK = 1 << 16


@dataclass(frozen=True)
class Fixed:
    value: int

    def __str__(self) -> str:
        return f"fixed:{self.value}"


@dataclass(frozen=True)
class Subgroup:
    """The unique subgroup of ``(Z/qZ)^x`` of the given order, enumerated as powers of its generator."""

    order: int

    def __str__(self) -> str:
        return f"subgroup:{self.order}"


@dataclass(frozen=True)
class FullRing:
    def __str__(self) -> str:
        return "full"


Range = Union[Fixed, Subgroup, FullRing]


def parse_range(text: str) -> Range:
    """``full``, ``fixed:<int>`` or ``subgroup:<order>``."""
    kind, _, arg = text.strip().partition(":")
    if kind == "full" and not arg:
        return FullRing()
    try:
        if kind == "fixed":
            return Fixed(int(arg))
        if kind == "subgroup":
            return Subgroup(int(arg))
    except ValueError:
        pass
    raise RangeInconsistent(f"cannot parse parameter range {text!r}")


def range_values(r: Range, m) -> np.ndarray:
    mod = _as_modulus(m)
    if isinstance(r, Fixed):
        return np.array([r.value], dtype=np.int64)
    if isinstance(r, FullRing):
        return np.arange(mod.q, dtype=np.int64)
    if isinstance(r, Subgroup):
        if r.order < 1 or mod.phi_q % r.order:
            raise RangeInconsistent(f"no subgroup of order {r.order} modulo {mod.q}")
        return subgroup_of_order(mod, r.order).elements()
    raise TypeError(f"unknown range {r!r}")


def range_size(r: Range, m) -> int:
    mod = _as_modulus(m)
    if isinstance(r, Fixed):
        return 1
    if isinstance(r, FullRing):
        return mod.q
    if r.order < 1 or mod.phi_q % r.order:
        raise RangeInconsistent(f"no subgroup of order {r.order} modulo {mod.q}")
    return r.order


@dataclass(frozen=True)
class SumFamilySpec:
    d: int
    m: ExponentVector
    ranges: tuple

    def __post_init__(self):
        object.__setattr__(self, "m", _as_exponent_vector(self.m))
        rs = tuple(parse_range(r) if isinstance(r, str) else r for r in self.ranges)
        object.__setattr__(self, "ranges", rs)
        if len(rs) != len(self.m):
            raise RangeInconsistent(f"{len(rs)} ranges for {len(self.m)} exponents")

    def size(self, m) -> int:
        return math.prod(range_size(r, m) for r in self.ranges)

    def describe(self) -> dict:
        return {"d": self.d, "m": list(self.m.m), "ranges": [str(r) for r in self.ranges]}


@dataclass(frozen=True)
class SumRecord:
    params: tuple[int, ...]
    value: complex
    phase_exact: tuple[int, ...]


NAMED_EXPONENTS = {"S": (1,), "K": (1, -1), "B": (3, 1), "Q": (4, 2, 1)}


def phase_sum(residues: np.ndarray, q: int) -> np.ndarray:
    """``sum_k e(residues[..., k] / q)``, accumulated left to right over ``k``."""
    res = np.asarray(residues)
    if res.dtype == object:
        res = res.astype(np.float64)
    acc = np.zeros(res.shape[:-1], dtype=np.complex128)
    for k in range(res.shape[-1]):
        acc += np.exp(2j * np.pi * (res[..., k] / q))
    return acc


def monomial_powers(w: OrderDElement, mvec, count: int | None = None) -> list[list[int]]:
    """``P[i][k] = (w**m_i)**k mod q`` for ``k < count`` (default ``d``)."""
    mvec = _as_exponent_vector(mvec)
    q = w.modulus.q
    count = w.d if count is None else count
    out = []
    for mi in mvec:
        u = w.power(mi)
        row, x = [], 1
        for _ in range(count):
            row.append(x)
            x = x * u % q
        out.append(row)
    return out


def _int_dtype(q: int):
    return np.int64 if q < 3_000_000_000 else object


def _residues(params: np.ndarray, powers: list[list[int]], q: int) -> np.ndarray:
    """``R[N, k] = sum_i params[N, i] * powers[i][k] mod q`` with no overflow."""
    dt = _int_dtype(q)
    a = np.asarray(params, dtype=dt) % q
    p = np.asarray(powers, dtype=dt)
    out = np.zeros((a.shape[0], p.shape[1]), dtype=dt)
    for i in range(p.shape[0]):
        out = (out + (a[:, i : i + 1] * p[i][None, :]) % q) % q
    return out


def _resolve(m, w, d) -> tuple[Modulus, OrderDElement]:
    mod = _as_modulus(m)
    if w is None:
        w = element_of_order(mod, d)
    elif isinstance(w, int):
        w = element_of_order(mod, d, w)
    if w.modulus.q != mod.q or w.d != d:
        raise RangeInconsistent(f"element {w} does not match q={mod.q}, d={d}")
    return mod, w


def restricted_sum(m, w: OrderDElement, mvec, a: Sequence[int]) -> SumRecord:
    mvec = _as_exponent_vector(mvec)
    if len(a) != len(mvec):
        raise RangeInconsistent(f"{len(a)} parameters for {len(mvec)} exponents")
    mod, w = _resolve(m, w, w.d)
    q = mod.q
    powers = monomial_powers(w, mvec)
    residues = tuple(sum(int(ai) * row[k] for ai, row in zip(a, powers)) % q for k in range(w.d))
    value = complex(phase_sum(np.array([residues], dtype=_int_dtype(q)), q)[0])
    return SumRecord(tuple(int(x) for x in a), value, residues)


def _chunk_params(values: list[np.ndarray], start: int, stop: int) -> np.ndarray:
    """Rows ``start..stop`` of the lexicographic product of ``values`` (last index fastest)."""
    idx = np.arange(start, stop, dtype=np.int64)
    cols = []
    for vals in reversed(values):
        cols.append(vals[idx % len(vals)])
        idx //= len(vals)
    return np.stack(cols[::-1], axis=1)


def family_chunks(
    spec: SumFamilySpec,
    m,
    w: OrderDElement | int | None = None,
    workers: int | None = 1,
    chunk: int = FAMILY_CHUNK,
) -> Iterator[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Yield ``(params, residues, values)`` blocks in enumeration order.

    Chunk boundaries are fixed by ``chunk`` alone, so the stream is identical
    for any worker count.
    """
    mod, w = _resolve(m, w, spec.d)
    q = mod.q
    values = [range_values(r, mod) for r in spec.ranges]
    total = math.prod(len(v) for v in values)
    powers = monomial_powers(w, spec.m)

    def work(start: int):
        params = _chunk_params(values, start, min(start + chunk, total))
        res = _residues(params, powers, q)
        return params, res, phase_sum(res, q)

    starts = range(0, total, chunk)
    if workers is None or workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            # bounded look-ahead keeps memory flat for q**2-sized families
            batch = max(1, (workers or 4) * 2)
            starts = list(starts)
            for b in range(0, len(starts), batch):
                yield from pool.map(work, starts[b : b + batch])
    else:
        for s in starts:
            yield work(s)


def family_values(spec: SumFamilySpec, m, w=None, workers: int | None = 1) -> tuple[np.ndarray, np.ndarray]:
    """All ``(params, values)`` of a family as two arrays."""
    ps, vs = [], []
    for params, _, values in family_chunks(spec, m, w, workers):
        ps.append(params)
        vs.append(values)
    if not ps:
        return np.zeros((0, len(spec.m)), dtype=np.int64), np.zeros(0, dtype=np.complex128)
    return np.concatenate(ps), np.concatenate(vs)


def sum_family(spec: SumFamilySpec, m, w=None) -> Iterator[SumRecord]:
    """Stream one :class:`SumRecord` per parameter tuple, lexicographically."""
    for params, res, values in family_chunks(spec, m, w):
        for p, r, v in zip(params, res, values):
            yield SumRecord(tuple(int(x) for x in p), complex(v), tuple(int(x) for x in r))


@lru_cache(maxsize=64)
def _unit_tables(q: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Units ``g**k``, their inverses ``g**-k``, and ``cos``/``sin`` of ``2 pi r / q``."""
    mod = _as_modulus(q)
    g = primitive_root(mod)
    phi = mod.phi_q
    x = np.empty(phi, dtype=np.int64)
    acc = 1
    for k in range(phi):
        x[k] = acc
        acc = acc * g % q
    xinv = np.empty(phi, dtype=np.int64)
    xinv[0] = 1
    xinv[1:] = x[:0:-1]
    angles = 2 * np.pi * (np.arange(q) / q)
    return x, xinv, np.cos(angles), np.sin(angles)


def kloosterman_values(m, a, b, block_terms: int = 1 << 22) -> np.ndarray:
    """Complete Kloosterman sums ``K_q(a_j, b_j)`` for arrays ``a, b`` (real parts).

    Uses ``x -> x**-1`` pairing, under which the sums are real.
    """
    mod = _as_modulus(m)
    q = mod.q
    x, xinv, cos_t, _ = _unit_tables(q)
    a = np.atleast_1d(np.asarray(a, dtype=np.int64)) % q
    b = np.atleast_1d(np.asarray(b, dtype=np.int64)) % q
    out = np.empty(len(a), dtype=np.float64)
    step = max(1, block_terms // len(x))
    for s in range(0, len(a), step):
        aa, bb = a[s : s + step, None], b[s : s + step, None]
        r = ((aa * x[None, :]) % q + (bb * xinv[None, :]) % q) % q
        out[s : s + step] = cos_t[r].sum(axis=1)
    return out


def kloosterman_complete(m, a: int, b: int) -> complex:
    """``K_q(a, b) = sum_{x unit} e((a x + b x**-1) / q)``."""
    mod = _as_modulus(m)
    q = mod.q
    x, xinv, cos_t, sin_t = _unit_tables(q)
    r = ((a % q) * x % q + (b % q) * xinv % q) % q
    return complex(cos_t[r].sum(), sin_t[r].sum())


def named_sum(kind: str, m, d: int, params: Sequence[int], w=None) -> SumRecord:
    """``S``: a x; ``K``: a x + b/x; ``B``: a x^3 + b x; ``Q``: a x^4 + b x^2 + c x."""
    try:
        mvec = NAMED_EXPONENTS[kind.upper()]
    except KeyError:
        raise ValueError(f"unknown sum kind {kind!r}; expected one of S, K, B, Q") from None
    mod, w = _resolve(m, w, d)
    return restricted_sum(mod, w, mvec, params)


def _torus_phases(w: OrderDElement, mvec: ExponentVector, params: np.ndarray) -> tuple[np.ndarray, np.ndarray | None]:
    """Phases for ``f_{d,m}`` (blocked) and, when ``m`` is coprime with ``d``, for ``g_d`` (summed)."""
    q, d = w.modulus.q, w.d
    blocks = []
    for i, (mi, di) in enumerate(zip(mvec, mvec.block_orders(d))):
        row = monomial_powers(w, (mi,), euler_phi(di))
        blocks.append(_residues(params[:, [i]], row, q))
    f_phases = np.concatenate(blocks, axis=1).astype(np.float64) / q
    g_phases = None
    if mvec.is_coprime_with(d):
        powers = monomial_powers(w, mvec, euler_phi(d))
        g_phases = _residues(params, powers, q).astype(np.float64) / q
    return f_phases, g_phases


def identity_residuals(m, w: OrderDElement, mvec, params) -> tuple[np.ndarray, np.ndarray | None, np.ndarray]:
    """Batched identity audit.

    Returns ``(|theta - f(z)|, |theta - g(z)| or None, theta)`` for each row of
    ``params``, with ``z`` built from exact residues.
    """
    mvec = _as_exponent_vector(mvec)
    mod, w = _resolve(m, w, w.d)
    params = np.atleast_2d(np.asarray(params, dtype=_int_dtype(mod.q)))
    theta = phase_sum(_residues(params, monomial_powers(w, mvec), mod.q), mod.q)
    f_ph, g_ph = _torus_phases(w, mvec, params)
    res_f = np.abs(theta - evaluate(build_f(w.d, mvec), f_ph))
    res_g = None if g_ph is None else np.abs(theta - evaluate(build_g(w.d), g_ph))
    return res_f, res_g, theta


def verify_identity(m, w: OrderDElement, mvec, a: Sequence[int]) -> float:
    """Max of ``|theta - f_{d,m}(z)|`` and (coprime case) ``|theta - g_d(z)|``."""
    res_f, res_g, _ = identity_residuals(m, w, mvec, [list(a)])
    out = float(res_f[0])
    if res_g is not None:
        out = max(out, float(res_g[0]))
    return out
