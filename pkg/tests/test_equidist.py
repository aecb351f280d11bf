import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from subgroup_sums.cyclotomic import Polynomial, cyclotomic_polynomial, euler_phi
from subgroup_sums.equidist import (
    GridSpec,
    TupleCloud,
    WeylVector,
    block_weyl_factors,
    histogram_distance,
    kloosterman_profile,
    myerson_certificate,
    myerson_check,
    sato_tate_bin_masses,
    subgroup_weyl_profile,
    tuple_cloud,
    weyl_scan,
    weyl_sum,
)
from subgroup_sums.errors import ArityMismatch, DegreeTooLarge, EmptyCloud, ModeRequiresCoprime, ZeroPolynomial
from subgroup_sums.laurent import EmpiricalCloud, build_g, sample_image
from subgroup_sums.modular import element_of_order, enumerate_admissible, subgroup_of_order


def brute_weyl(cloud: TupleCloud, y) -> complex:
    q = cloud.q
    return sum(cmath.exp(2j * math.pi * (sum(int(r) * v for r, v in zip(row, y)) % q) / q) for row in cloud.numerators) / len(cloud)


def test_tuple_cloud_examples():
    grid = tuple_cloud(101, element_of_order(101, 1), (1,), ["full"])
    assert grid.numerators[:, 0].tolist() == list(range(101))
    one = tuple_cloud(7, element_of_order(7, 3), (1,), ["fixed:1"])
    assert one.numerators.tolist() == [[1, 2]] and np.allclose(one.points, [[1 / 7, 2 / 7]])
    with pytest.raises(ModeRequiresCoprime):
        tuple_cloud(7, element_of_order(7, 3), (3,), ["full"], mode="summed")
    assert tuple_cloud(31, None, (1, -1), ["full", "full"], d=5).dim == 8
    assert tuple_cloud(31, None, (1, -1), ["full", "full"], mode="summed", d=5).dim == 4


def test_weyl_sum_examples():
    grid = tuple_cloud(101, element_of_order(101, 1), (1,), ["full"])
    assert weyl_sum(grid, (1,)) == 0
    origin = TupleCloud(np.zeros((1, 3), dtype=np.int64), 7)
    assert weyl_sum(origin, (1, -2, 5)) == 1
    with pytest.raises(ArityMismatch):
        weyl_sum(origin, (1, 2))
    with pytest.raises(ValueError):
        WeylVector((0, 0))
    cloud = tuple_cloud(7759, element_of_order(7759, 3), (1,), ["full"], mode="summed")
    assert abs(weyl_sum(cloud, (1, 1))) < 0.02


@given(st.integers(3, 400), st.integers(-1000, 1000))
def test_uniform_grid_exact_zero(q, y):
    cloud = TupleCloud(np.arange(q, dtype=np.int64)[:, None], q)
    expected = 1 if y % q == 0 else 0
    assert weyl_sum(cloud, (y,)) == expected if y else True


@given(
    st.sampled_from([(7, 3), (13, 3), (31, 5), (29, 4), (43, 7)]),
    st.sampled_from([("full",), ("full", "fixed:2"), ("subgroup:6", "full")]),
    st.data(),
)
def test_weyl_sum_matches_brute_force(qd, ranges, data):
    q, d = qd
    m = (1,) if len(ranges) == 1 else (1, -1)
    if any(r.startswith("subgroup") and (q - 1) % int(r.split(":")[1]) for r in ranges):
        return
    cloud = tuple_cloud(q, element_of_order(q, d), m, list(ranges))
    y = data.draw(st.lists(st.integers(-3, 3), min_size=cloud.dim, max_size=cloud.dim).filter(any))
    assert weyl_sum(cloud, y) == pytest.approx(brute_weyl(cloud, y), abs=1e-9)


@given(st.sampled_from([(31, 5), (61, 3), (41, 4), (29, 7)]), st.data())
def test_block_factorisation(qd, data):
    q, d = qd
    m = (1, -1)
    ranges = ["full", "subgroup:2"]
    w = element_of_order(q, d)
    cloud = tuple_cloud(q, w, m, ranges)
    y = data.draw(st.lists(st.integers(-2, 2), min_size=cloud.dim, max_size=cloud.dim).filter(any))
    factors = block_weyl_factors(q, w, m, ranges, y)
    assert weyl_sum(cloud, y) == pytest.approx(np.prod(factors), abs=1e-12)


def test_weyl_scan():
    grid = tuple_cloud(101, element_of_order(101, 1), (1,), ["full"])
    rep = weyl_scan(grid, 3)
    assert sorted(rep.moduli) == [(1,), (2,), (3,)] and rep.max_modulus == 0
    assert weyl_scan(grid, 0).moduli == {}
    cloud = tuple_cloud(13, element_of_order(13, 3), (1,), ["full"])
    rep = weyl_scan(cloud, 1)
    # one representative per +-y pair: (3^2 - 1) / 2
    assert len(rep.moduli) == 4
    assert all(next(v for v in y if v) > 0 for y in rep.moduli)


def test_weyl_scan_decreases_over_admissible_q():
    maxima = []
    for q in (7, 13, 19, 31, 37, 43):
        cloud = tuple_cloud(q, element_of_order(q, 3), (1,), ["full"])
        maxima.append(weyl_scan(cloud, 3).max_modulus)
    assert maxima == [1, 1, 1, 0, 0, 0]


def test_myerson_examples():
    cert = myerson_certificate(Polynomial([0, 1]), 3)
    assert cert.n == 1 and cert.verify()
    assert cert.cofactors == (Polynomial([1]), Polynomial([-1, -1]))
    cert = myerson_certificate(Polynomial([-1, 1]), 3)
    assert cert.n == 3
    assert cert.cofactors == (Polynomial([1]), Polynomial([-2, -1]))
    with pytest.raises(DegreeTooLarge):
        myerson_certificate(Polynomial([0, 0, 0, 1]), 3)
    with pytest.raises(ZeroPolynomial):
        myerson_certificate(Polynomial(), 3)


def test_myerson_check_examples():
    for f in ([0, 1], [-1, 1]):
        results = myerson_check(myerson_certificate(Polynomial(f), 3), (1, 2000))
        assert results and all(r.passed for r in results)
        assert all(r.valuation == 0 for r in results)
        assert all(r.q.q > 3 for r in results)


@given(st.sampled_from([3, 4, 5, 7, 9, 12]), st.data())
def test_myerson_certificate_matches_oracle(d, data):
    cs = data.draw(st.lists(st.integers(-10, 10), min_size=euler_phi(d), max_size=euler_phi(d)).filter(any))
    cert = myerson_certificate(Polynomial(cs), d)
    a, b, n = oracles.bezout(cs, d)
    assert cert.n == n
    assert cert.cofactors == (Polynomial(a), Polynomial(b))
    lhs = cert.cofactors[0] * cyclotomic_polynomial(d) + cert.cofactors[1] * Polynomial(cs)
    assert lhs == Polynomial([n])
    for r in myerson_check(cert, (1, 1500), all_elements=True):
        assert r.passed_a and r.passed_b and r.complete_sum == 0
        # the complete sum, computed by direct summation, vanishes too
        if r.q.q < 200:
            c = Polynomial(cs)(r.w)
            s = sum(cmath.exp(2j * math.pi * (a_ * c % r.q.q) / r.q.q) for a_ in range(r.q.q))
            assert abs(s) < 1e-9


def test_subgroup_weyl_profile():
    w = element_of_order(1901, 5)
    assert subgroup_weyl_profile(1901, subgroup_of_order(1901, 1), Polynomial([0, 1]), w) == pytest.approx(1)
    full = subgroup_of_order(1901, 1900)
    # sum of e(a c / p) over all units is -1 for c a unit
    assert subgroup_weyl_profile(1901, full, Polynomial([0, 1]), w) == pytest.approx(1 / 1900)
    with pytest.raises(DegreeTooLarge):
        subgroup_weyl_profile(1901, full, Polynomial([0, 0, 0, 0, 1]), w)


def test_histogram_distance_examples():
    rng = np.random.default_rng(0)
    a = rng.normal(size=1000) + 1j * rng.normal(size=1000)
    assert histogram_distance(a, a) == 0
    assert histogram_distance(np.full(10, -1 + 0j), np.full(10, 1 + 0j)) == 2
    with pytest.raises(EmptyCloud):
        histogram_distance(np.array([]), a)
    assert GridSpec.for_degree(3).edges()[0] == pytest.approx(-3.1)


@given(st.integers(0, 10**6))
def test_histogram_distance_is_pseudometric(seed):
    rng = np.random.default_rng(seed)
    clouds = [EmpiricalCloud(rng.uniform(-3, 3, 200) + 1j * rng.uniform(-3, 3, 200)) for _ in range(3)]
    grid = GridSpec(8, 3.1)
    d = lambda x, y: histogram_distance(x, y, grid)
    a, b, c = clouds
    assert d(a, b) == d(b, a)
    assert 0 <= d(a, b) <= 2
    assert d(a, c) <= d(a, b) + d(b, c) + 1e-12


def test_sums_distance_matches_oracle_binning():
    q = 151
    w = element_of_order(q, 5)
    cloud = [oracles.theta(q, w.w, (1,), (a,), 5) for a in range(q)]
    ref = sample_image(build_g(5), 20000, seed=1).values
    assert histogram_distance(np.array(cloud), ref, GridSpec(16, 5.1)) == pytest.approx(
        oracles.l1(cloud, list(ref), 5.1, 16), abs=1e-9
    )


def test_sato_tate_masses_sum_to_one():
    m = sato_tate_bin_masses(np.linspace(-2, 2, 17))
    assert m.sum() == pytest.approx(1) and np.all(m > 0)


def test_kloosterman_profile():
    prof = kloosterman_profile(961)
    assert abs(prof.zero_fraction - 0.5) < 0.02
    assert len(prof.values) == 961 - 31
    assert kloosterman_profile(6007).sato_tate_l1 < 0.1
    tiny = kloosterman_profile(3)
    assert np.isfinite(tiny.sato_tate_l1) and len(tiny.values) == 2
    sample = kloosterman_profile(6007, count=500, seed=1)
    assert len(sample.values) == 500
    assert np.array_equal(sample.values, kloosterman_profile(6007, count=500, seed=1).values)
