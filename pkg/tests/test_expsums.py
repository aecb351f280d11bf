import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from subgroup_sums.errors import RangeInconsistent
from subgroup_sums.expsums import (
    Fixed,
    FullRing,
    Subgroup,
    SumFamilySpec,
    family_values,
    identity_residuals,
    kloosterman_complete,
    kloosterman_values,
    named_sum,
    parse_range,
    phase_sum,
    restricted_sum,
    sum_family,
    verify_identity,
)
from subgroup_sums.modular import element_of_order, elements_of_order, enumerate_admissible


def test_parse_range():
    assert parse_range("full") == FullRing()
    assert parse_range("fixed:-3") == Fixed(-3)
    assert parse_range("subgroup:950") == Subgroup(950)
    assert [str(r) for r in map(parse_range, ("full", "fixed:1", "subgroup:4"))] == ["full", "fixed:1", "subgroup:4"]
    with pytest.raises(ValueError):
        parse_range("half")


def test_restricted_sum_examples():
    w = element_of_order(7, 3)
    rec = restricted_sum(7, w, (1,), (1,))
    assert rec.phase_exact == (1, 2, 4)
    assert rec.value == pytest.approx((-1 + 1j * math.sqrt(7)) / 2, abs=1e-14)
    assert restricted_sum(151, element_of_order(151, 5), (1, -1), (0, 0)).value == 5
    assert restricted_sum(101, element_of_order(101, 1), (1,), (17,)).value == pytest.approx(cmath.exp(2j * math.pi * 17 / 101))
    with pytest.raises(RangeInconsistent):
        restricted_sum(7, w, (1, -1), (1,))


def test_named_sums():
    assert named_sum("S", 7, 3, (1,)).value == restricted_sum(7, element_of_order(7, 3), (1,), (1,)).value
    assert named_sum("K", 151, 5, (0, 0)).value == 5
    rec = named_sum("Q", 67, 3, (2, 5, 7))
    assert rec.value == pytest.approx(oracles.theta(67, element_of_order(67, 3).w, (4, 2, 1), (2, 5, 7), 3), abs=1e-12)
    with pytest.raises(ValueError):
        named_sum("Z", 7, 3, (1,))


@given(
    st.sampled_from([(7, 3), (31, 5), (151, 5), (961, 3), (29, 7), (73, 9), (13, 4)]),
    st.sampled_from([(1,), (1, -1), (3, 1), (4, 2, 1), (3,), (2, -5)]),
    st.data(),
)
def test_restricted_sum_matches_oracle(qd, m, data):
    q, d = qd
    a = tuple(data.draw(st.integers(-10**6, 10**6)) for _ in m)
    w = element_of_order(q, d)
    rec = restricted_sum(q, w, m, a)
    assert rec.value == pytest.approx(oracles.theta(q, w.w, m, a, d), abs=1e-11)
    assert abs(rec.value) <= d + 1e-12
    assert all(0 <= r < q for r in rec.phase_exact)
    # recomputing from the exact phases reproduces the value bitwise
    assert phase_sum(np.array([rec.phase_exact]), q)[0] == rec.value
    # lift independence and conjugation symmetry
    shifted = restricted_sum(q, w, m, tuple(x + q for x in a))
    assert shifted.value == rec.value
    neg = restricted_sum(q, w, m, tuple(-x for x in a))
    assert neg.value == pytest.approx(rec.value.conjugate(), abs=1e-12)


def test_sum_family_examples():
    spec = SumFamilySpec(5, (1, -1), ("full", "full"))
    params, values = family_values(spec, 151)
    assert len(values) == 151**2
    assert params[:3].tolist() == [[0, 0], [0, 1], [0, 2]]
    recs = list(sum_family(SumFamilySpec(3, (1,), ("fixed:0",)), 7))
    assert len(recs) == 1 and recs[0].value == 3
    spec = SumFamilySpec(5, (1, -1), ("subgroup:950", "fixed:1"))
    assert spec.size(1901) == 950
    assert len(family_values(spec, 1901)[1]) == 950
    with pytest.raises(RangeInconsistent):
        SumFamilySpec(5, (1, -1), ("full",))
    with pytest.raises(RangeInconsistent):
        family_values(SumFamilySpec(5, (1,), ("subgroup:7",)), 151)


def test_family_stream_matches_arrays_and_workers():
    spec = SumFamilySpec(3, (1, -1), ("full", "full"))
    params, values = family_values(spec, 331, workers=1)
    _, values4 = family_values(spec, 331, workers=4)
    assert np.array_equal(values, values4)
    recs = list(sum_family(spec, 331))
    assert [r.params for r in recs[:5]] == [tuple(p) for p in params[:5].tolist()]
    assert np.array_equal(np.array([r.value for r in recs]), values)


@pytest.mark.parametrize("q, d, m", [(31, 5, (1, -1)), (61, 3, (1, -1)), (29, 7, (3, 1)), (73, 9, (1,)), (41, 4, (4, 2, 1))])
def test_sum_multiset_independent_of_choice_of_w(q, d, m):
    spec = SumFamilySpec(d, m, tuple("full" for _ in m))
    reference = None
    for w in elements_of_order(q, d):
        _, vals = family_values(spec, q, w)
        key = sorted(zip(np.round(vals.real, 9), np.round(vals.imag, 9)))
        if reference is None:
            reference = key
        assert key == reference


def test_kloosterman_examples():
    assert kloosterman_complete(3, 0, 0) == 2
    assert kloosterman_complete(5, 1, 1).real == pytest.approx(2 + 2 * math.cos(4 * math.pi / 5), abs=1e-12)
    k = kloosterman_complete(961, 1, 1)
    assert abs(k.imag) < 1e-9 and abs(k) <= 62


@given(st.sampled_from([3, 5, 7, 9, 25, 27, 49, 121, 125, 961]), st.integers(0, 10**6), st.integers(0, 10**6))
def test_kloosterman_matches_oracle(q, a, b):
    k = kloosterman_complete(q, a, b)
    assert k == pytest.approx(oracles.kloosterman(q, a, b), abs=1e-9)
    assert kloosterman_values(q, [a], [b])[0] == pytest.approx(k.real, abs=1e-9)


def test_weil_bound_spot_checks():
    rng = np.random.default_rng(0)
    for mod in enumerate_admissible(1, 3, 3000):
        q, p = mod.q, mod.p
        k = rng.integers(0, mod.phi_q, size=(200, 2))
        pairs = k + k // (p - 1) + 1
        assert np.all(pairs % p != 0)
        vals = kloosterman_values(mod, pairs[:, 0], pairs[:, 1])
        assert np.abs(vals).max() <= 2 * math.sqrt(q) + 1e-6


def test_identity_examples():
    w = element_of_order(151, 5)
    assert verify_identity(151, w, (1, -1), (0, 0)) < 1e-12
    rng = np.random.default_rng(7)
    res_f, res_g, theta = identity_residuals(151, w, (1, -1), rng.integers(0, 151, size=(1000, 2)))
    assert res_f.max() < 1e-9 and res_g.max() < 1e-9
    res_f, res_g, _ = identity_residuals(151, element_of_order(151, 5), (5,), [[3]])
    assert res_g is None and res_f.max() < 1e-12


@given(
    st.sampled_from([(13, 3), (31, 5), (1861, 3), (3721, 5), (29, 4), (37, 9), (43, 7), (1331, 5), (61, 12)]),
    st.sampled_from([(1,), (1, -1), (3, 1), (4, 2, 1), (3,), (6, -2)]),
    st.data(),
)
def test_identity_for_every_choice_of_w(qd, m, data):
    q, d = qd
    a = [data.draw(st.integers(0, q - 1)) for _ in m]
    for w in elements_of_order(q, d):
        assert verify_identity(q, w, m, a) < 1e-9 * d
