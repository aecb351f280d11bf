"""Equidistribution diagnostics.

Weyl sums are evaluated from exact integer numerators: for a cloud of points
``R / q`` and a frequency vector ``y`` the phases ``R . y mod q`` are integers,
and when their multiset is uniform over a nontrivial subgroup of ``Z/qZ`` the
sum is returned as an exact zero.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .cyclotomic import Polynomial, cyclotomic_polynomial, euler_phi, polynomial_divmod
from .errors import (
    ArityMismatch,
    DegreeTooLarge,
    EmptyCloud,
    ModeRequiresCoprime,
    RangeInconsistent,
    ZeroPolynomial,
)
from .expsums import (
    SumFamilySpec,
    _chunk_params,
    _int_dtype,
    _resolve,
    _residues,
    kloosterman_values,
    monomial_powers,
    range_values,
)
from .laurent import EmpiricalCloud, _as_exponent_vector
from .modular import (
    Modulus,
    OrderDElement,
    SubgroupSpec,
    _as_modulus,
    element_of_order,
    elements_of_order,
    enumerate_admissible,
)

__all__ = [
    "WeylVector",
    "TupleCloud",
    "WeylReport",
    "MyersonCertificate",
    "MyersonCheckResult",
    "GridSpec",
    "KloostermanProfile",
    "tuple_cloud",
    "weyl_sum",
    "weyl_scan",
    "block_weyl_factors",
    "myerson_certificate",
    "myerson_check",
    "subgroup_weyl_profile",
    "histogram",
    "histogram_distance",
    "kloosterman_profile",
    "sato_tate_bin_masses",
    "EmpiricalCloud",
]


@dataclass(frozen=True)
class WeylVector:
    y: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "y", tuple(int(v) for v in self.y))
        if not any(self.y):
            raise ValueError("Weyl vector must be nonzero")

    @property
    def height(self) -> int:
        return max(abs(v) for v in self.y)

    def __len__(self) -> int:
        return len(self.y)


@dataclass(frozen=True, eq=False)
class TupleCloud:
    """Points ``numerators / q`` in ``[0, 1)^dim``, kept as exact integers."""

    numerators: np.ndarray  # (N, dim) ints in [0, q)
    q: int

    @property
    def dim(self) -> int:
        return self.numerators.shape[1]

    @property
    def points(self) -> np.ndarray:
        return self.numerators.astype(np.float64) / self.q

    def __len__(self) -> int:
        return self.numerators.shape[0]


def tuple_cloud(m, w: OrderDElement | int | None, mvec, ranges: Sequence, mode: str = "blocked", d: int | None = None) -> TupleCloud:
    """Fractional tuples attached to a family of parameters.

    ``blocked``: ``(a_i (w**m_i)**j / q)`` for ``j < phi(d_i)``, blocks concatenated.
    ``summed``: ``(sum_i a_i (w**m_i)**j / q)`` for ``j < phi(d)``; needs ``m`` coprime with ``d``.
    """
    mvec = _as_exponent_vector(mvec)
    if d is None:
        if not isinstance(w, OrderDElement):
            raise ValueError("pass d or an OrderDElement")
        d = w.d
    mod, w = _resolve(m, w, d)
    spec = SumFamilySpec(d, mvec, tuple(ranges))
    values = [range_values(r, mod) for r in spec.ranges]
    total = math.prod(len(v) for v in values)
    params = _chunk_params(values, 0, total)
    q = mod.q
    if mode == "summed":
        if not mvec.is_coprime_with(d):
            raise ModeRequiresCoprime(f"m={mvec} is not coprime with d={d}")
        nums = _residues(params, monomial_powers(w, mvec, euler_phi(d)), q)
    elif mode == "blocked":
        blocks = []
        for i, (mi, di) in enumerate(zip(mvec, mvec.block_orders(d))):
            blocks.append(_residues(params[:, [i]], monomial_powers(w, (mi,), euler_phi(di)), q))
        nums = np.concatenate(blocks, axis=1)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return TupleCloud(nums, q)


def _exact_zero(phases: np.ndarray, q: int) -> bool:
    """True when ``phases`` is uniform over a nontrivial subgroup ``g Z/qZ``, so ``sum e(phase/q) = 0``."""
    counts = np.bincount(phases, minlength=q)
    support = np.flatnonzero(counts)
    g = math.gcd(q, int(np.gcd.reduce(support)))
    if g == q:
        return False
    sub = counts[::g]
    return len(support) == q // g and bool((sub == sub[0]).all())


def weyl_sum(cloud: TupleCloud, y) -> complex:
    """``(1 / N) sum_points e(point . y)``."""
    y = y if isinstance(y, WeylVector) else WeylVector(tuple(y))
    if len(y) != cloud.dim:
        raise ArityMismatch(f"Weyl vector has length {len(y)}, cloud has dim {cloud.dim}")
    if len(cloud) == 0:
        raise EmptyCloud("empty tuple cloud")
    q = cloud.q
    dt = _int_dtype(q)
    yv = np.asarray([v % q for v in y.y], dtype=dt)
    phases = np.zeros(len(cloud), dtype=dt)
    for j in range(cloud.dim):
        phases = (phases + cloud.numerators[:, j].astype(dt) * yv[j] % q) % q
    if dt is np.int64 and q <= 1 << 26 and _exact_zero(phases, q):
        return 0j
    angles = 2 * np.pi * (phases.astype(np.float64) / q)
    n = len(phases)
    # real and imaginary parts averaged separately: complex division by n is not exact
    return complex(np.cos(angles).sum() / n, np.sin(angles).sum() / n)


def _sign_representatives(dim: int, height: int) -> Iterable[tuple[int, ...]]:
    """Nonzero ``y`` with ``max |y_i| <= height`` whose first nonzero entry is positive."""
    for y in itertools.product(range(-height, height + 1), repeat=dim):
        first = next((v for v in y if v), 0)
        if first > 0:
            yield y


@dataclass
class WeylReport:
    max_height: int
    moduli: dict = field(default_factory=dict)  # y -> |weyl_sum|

    @property
    def max_modulus(self) -> float:
        return max(self.moduli.values(), default=0.0)

    @property
    def argmax(self):
        return max(self.moduli, key=self.moduli.get) if self.moduli else None


def weyl_scan(cloud: TupleCloud, max_height: int) -> WeylReport:
    """``|weyl_sum|`` for every ``y`` with ``0 < height <= max_height``, one per ``+-y`` pair."""
    report = WeylReport(max_height)
    if max_height < 1:
        return report
    for y in _sign_representatives(cloud.dim, max_height):
        report.moduli[y] = abs(weyl_sum(cloud, y))
    return report


def block_weyl_factors(m, w: OrderDElement, mvec, ranges: Sequence, y) -> list[complex]:
    """Per-block normalised sums ``(1/|H_i|) sum_{a in H_i} e(x_i(a) . y_i)`` for a blocked cloud."""
    mvec = _as_exponent_vector(mvec)
    mod, w = _resolve(m, w, w.d)
    spec = SumFamilySpec(w.d, mvec, tuple(ranges))
    y = list(y)
    out, pos = [], 0
    for i, (mi, di) in enumerate(zip(mvec, mvec.block_orders(w.d))):
        n = euler_phi(di)
        vals = range_values(spec.ranges[i], mod)
        nums = _residues(vals[:, None], monomial_powers(w, (mi,), n), mod.q)
        yi = y[pos : pos + n]
        pos += n
        if not any(yi):
            out.append(1 + 0j)
            continue
        out.append(weyl_sum(TupleCloud(nums, mod.q), yi))
    return out


@dataclass(frozen=True)
class MyersonCertificate:
    """``a * phi_d + b * f = n`` with integral ``a, b`` and ``n >= 1``."""

    f: Polynomial
    d: int
    n: int
    cofactors: tuple[Polynomial, Polynomial]

    def verify(self) -> bool:
        a, b = self.cofactors
        lhs = a * cyclotomic_polynomial(self.d) + b * self.f
        return lhs == Polynomial([self.n]) and a.is_integral and b.is_integral


def myerson_certificate(f: Polynomial, d: int) -> MyersonCertificate:
    """Bezout relation between ``phi_d`` and ``f`` by the extended Euclidean algorithm over Q.

    The rational relation ``u phi_d + v f = c`` is scaled by the least positive
    integer making ``u`` and ``v`` integral. The resulting ``n`` is valid, not
    necessarily minimal.
    """
    f = f if isinstance(f, Polynomial) else Polynomial(f)
    if f.is_zero:
        raise ZeroPolynomial("f must be nonzero")
    phi_deg = euler_phi(d)
    if f.degree >= phi_deg:
        raise DegreeTooLarge(f"deg f = {f.degree} >= phi({d}) = {phi_deg}")
    one, zero = Polynomial([1]), Polynomial()
    r0, r1 = cyclotomic_polynomial(d), f
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero:
        quot, rem, _ = polynomial_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quot * s1
        t0, t1 = t1, t0 - quot * t1
    if r0.degree != 0:
        raise AssertionError(f"phi_{d} and f share a factor: gcd = {r0}")
    scale = math.lcm(s0.denominator_lcm(), t0.denominator_lcm())
    a, b = s0 * scale, t0 * scale
    n = Fraction(r0[0]) * scale
    if n < 0:
        a, b, n = -a, -b, -n
    assert n.denominator == 1
    cert = MyersonCertificate(f, d, int(n), (a, b))
    assert cert.verify()
    return cert


@dataclass(frozen=True)
class MyersonCheckResult:
    q: Modulus
    w: int
    value_mod_q: int
    valuation: int | None  # p-adic valuation of f(w~); None when f(w~) = 0
    complete_sum: int  # sum_{a mod q} e(a f(w) / q), an integer (q or 0)
    passed_a: bool
    passed_b: bool

    @property
    def passed(self) -> bool:
        return self.passed_a and self.passed_b and self.complete_sum == 0


def _valuation(x: int, p: int) -> int | None:
    if x == 0:
        return None
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def myerson_check(cert: MyersonCertificate, q_range, all_elements: bool = False) -> list[MyersonCheckResult]:
    """Check ``q`` does not divide ``f(w)`` and ``p**v_p(f(w~)) <= n`` for admissible ``q > n``.

    ``q_range`` is ``(lo, hi)`` or an iterable of moduli. The lift ``w~`` is the
    residue in ``[0, q)``. With ``all_elements`` every element of order ``d``
    is checked, otherwise the deterministic one.
    """
    if isinstance(q_range, tuple) and len(q_range) == 2 and all(isinstance(v, int) for v in q_range):
        mods = enumerate_admissible(cert.d, max(q_range[0], cert.n + 1), q_range[1])
    else:
        mods = [_as_modulus(q) for q in q_range]
        mods = [m for m in mods if (m.p - 1) % cert.d == 0 and m.q > cert.n]
    out = []
    for mod in mods:
        ws = elements_of_order(mod, cert.d) if all_elements else [element_of_order(mod, cert.d)]
        for w in ws:
            val = cert.f(w.w)
            vq = val % mod.q
            beta = _valuation(val, mod.p)
            complete = mod.q if vq == 0 else 0
            passed_b = beta is not None and mod.p**beta <= cert.n
            out.append(MyersonCheckResult(mod, w.w, vq, beta, complete, vq != 0, passed_b))
    return out


def subgroup_weyl_profile(m, H: SubgroupSpec, f: Polynomial, w: OrderDElement) -> float:
    """``(1/|H|) |sum_{a in H} e(a f(w) / q)|``."""
    f = f if isinstance(f, Polynomial) else Polynomial(f)
    if f.is_zero:
        raise ZeroPolynomial("f must be nonzero")
    if f.degree >= euler_phi(w.d):
        raise DegreeTooLarge(f"deg f = {f.degree} >= phi({w.d})")
    mod = _as_modulus(m)
    if H.modulus.q != mod.q or w.modulus.q != mod.q:
        raise RangeInconsistent("subgroup, element and modulus disagree")
    c = f.eval_mod(w.w, mod.q)
    cloud = TupleCloud(H.elements()[:, None], mod.q)
    return abs(weyl_sum(cloud, (c,))) if c else 1.0


@dataclass(frozen=True)
class GridSpec:
    """``bins x bins`` histogram on ``[-extent, extent]^2``."""

    bins: int = 64
    extent: float = 3.1

    @classmethod
    def for_degree(cls, d: int, bins: int = 64) -> GridSpec:
        return cls(bins, d + 0.1)

    def edges(self) -> np.ndarray:
        return np.linspace(-self.extent, self.extent, self.bins + 1)


def histogram(cloud: EmpiricalCloud | np.ndarray, grid: GridSpec) -> np.ndarray:
    """Normalised 2-D bin frequencies (values outside the grid are dropped before normalising)."""
    vals = cloud.values if isinstance(cloud, EmpiricalCloud) else np.asarray(cloud)
    if len(vals) == 0:
        raise EmptyCloud("cannot bin an empty cloud")
    e = grid.edges()
    h, _, _ = np.histogram2d(vals.real, vals.imag, bins=(e, e))
    total = h.sum()
    if total == 0:
        raise EmptyCloud("no values fall inside the grid")
    return h / total


def histogram_distance(observed, reference, grid: GridSpec | None = None) -> float:
    """L1 distance between binned frequency vectors, in ``[0, 2]``."""
    obs = observed if isinstance(observed, EmpiricalCloud) else EmpiricalCloud(observed)
    ref = reference if isinstance(reference, EmpiricalCloud) else EmpiricalCloud(reference)
    if obs.count == 0 or ref.count == 0:
        raise EmptyCloud("histogram distance needs two nonempty clouds")
    grid = grid or GridSpec()
    return float(np.abs(histogram(obs, grid) - histogram(ref, grid)).sum())


def sato_tate_bin_masses(edges: np.ndarray) -> np.ndarray:
    """Mass of ``(1/2pi) sqrt(4 - x^2) dx`` on each bin of ``[-2, 2]``."""

    def cdf(x):
        x = np.clip(x, -2.0, 2.0)
        return (x * np.sqrt(4 - x * x) / 2 + 2 * np.arcsin(x / 2)) / (2 * np.pi) + 0.5

    return np.diff(cdf(np.asarray(edges, dtype=np.float64)))


def arcsine_bin_masses(edges: np.ndarray) -> np.ndarray:
    """Mass of ``(1/pi) (4 - x^2)^(-1/2) dx`` on each bin of ``[-2, 2]``."""
    x = np.clip(np.asarray(edges, dtype=np.float64), -2.0, 2.0)
    return np.diff(np.arcsin(x / 2) / np.pi + 0.5)


@dataclass
class KloostermanProfile:
    q: int
    values: np.ndarray  # K_q(a, 1) / sqrt(q)
    edges: np.ndarray
    frequencies: np.ndarray
    zero_fraction: float
    sato_tate_l1: float
    arcsine_l1: float  # distance of the nonzero part to the arcsine law


def kloosterman_profile(m, count: int | None = None, seed: int = 0, bins: int = 16) -> KloostermanProfile:
    """Normalised ``K_q(a, 1) / sqrt(q)`` for all units ``a`` (or ``count`` random ones).

    Zero detection uses ``|K| / sqrt(q) < 1e-9``.
    """
    mod = _as_modulus(m)
    q = mod.q
    units = np.array([a for a in range(1, q) if a % mod.p], dtype=np.int64)
    if count is not None and count < len(units):
        rng = np.random.default_rng(seed)
        units = np.sort(rng.choice(units, size=count, replace=False))
    vals = kloosterman_values(mod, units, np.ones_like(units)) / math.sqrt(q)
    edges = np.linspace(-2.0, 2.0, bins + 1)
    zero = np.abs(vals) < 1e-9
    freq, _ = np.histogram(np.clip(vals, -2.0, 2.0), bins=edges)
    freq = freq / max(len(vals), 1)
    st = float(np.abs(freq - sato_tate_bin_masses(edges)).sum())
    nz = vals[~zero]
    if len(nz):
        fz, _ = np.histogram(np.clip(nz, -2.0, 2.0), bins=edges)
        arc = float(np.abs(fz / len(nz) - arcsine_bin_masses(edges)).sum())
    else:
        arc = float("nan")
    return KloostermanProfile(q, vals, edges, freq, float(zero.mean()) if len(vals) else 0.0, st, arc)
