import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.spatial import cKDTree

from subgroup_sums.errors import ResolutionTooLow
from subgroup_sums.geometry import (
    boundary_distance,
    grid_contains,
    hypocycloid_region,
    image_region,
    in_region,
    minkowski_region,
    rasterize,
    read_raster_pgm,
    write_boundary_csv,
    write_raster_pgm,
)
from subgroup_sums.laurent import build_g, sample_image


def test_hypocycloid_examples():
    h2 = hypocycloid_region(2)
    assert np.abs(h2.boundary.imag).max() < 1e-12 and np.abs(h2.boundary.real).max() <= 2
    h3 = hypocycloid_region(3)
    assert h3.boundary[0] == 3 and h3.boundary[-1] == 3
    assert len(hypocycloid_region(3, 512).boundary) == 513
    with pytest.raises(ResolutionTooLow):
        hypocycloid_region(3, 100)
    with pytest.raises(ValueError):
        hypocycloid_region(1)


@pytest.mark.parametrize("d", [2, 3, 5, 7, 11])
def test_boundary_modulus_and_cusps(d):
    h = hypocycloid_region(d)
    assert np.abs(h.boundary).max() <= d + 1e-12
    step = h.resolution // d
    cusps = h.boundary[:-1][::step]
    assert np.allclose(cusps, d * np.exp(2j * np.pi * np.arange(d) / d), atol=1e-12)


@pytest.mark.parametrize("d", [3, 5, 7])
def test_region_symmetry(d):
    h = hypocycloid_region(d)
    v = h.boundary[:-1]
    tree = cKDTree(np.c_[v.real, v.imag])
    for image in (v * np.exp(2j * np.pi / d), v.conj()):
        dist, _ = tree.query(np.c_[image.real, image.imag])
        assert dist.max() < 1e-9


def test_in_region_examples():
    h3 = hypocycloid_region(3)
    assert in_region(h3, 0)
    assert in_region(h3, 3, tol=1e-6)
    assert not in_region(h3, 3.1, tol=1e-3)
    h2 = hypocycloid_region(2)
    assert in_region(h2, 1.5) and not in_region(h2, 1.5 + 0.01j) and in_region(h2, 1.5 + 0.01j, tol=0.02)


def test_negative_tolerance_is_strict_interior():
    h3 = hypocycloid_region(3)
    assert in_region(h3, 0, tol=-0.5)
    assert not in_region(h3, 3 - 1e-4, tol=-1e-2)
    assert in_region(h3, 3 - 1e-4, tol=1e-3)


def test_boundary_distance_on_vertices():
    h = hypocycloid_region(5)
    assert boundary_distance(h, h.boundary[:50]).max() == 0


def test_surjectivity_spot_check():
    d = 3
    h = hypocycloid_region(d)
    rng = np.random.default_rng(0)
    box = rng.uniform(-d, d, size=(8000, 2)) @ np.array([1, 1j])
    targets = box[in_region(h, box, tol=-1e-2)][:1000]
    assert len(targets) == 1000
    vals = sample_image(build_g(d), 2 * 10**6, seed=9).values
    dist, _ = cKDTree(np.c_[vals.real, vals.imag]).query(np.c_[targets.real, targets.imag])
    assert dist.max() < 1e-2


def test_rasterize_and_grid_contains():
    r = rasterize(hypocycloid_region(3), 0.05)
    assert grid_contains(r, 0) and not grid_contains(r, 3.5) and not grid_contains(r, 100)
    assert r.half_extent >= 3
    vals = sample_image(build_g(3), 20000, seed=4).values
    assert grid_contains(r, vals).all()


def test_minkowski_examples():
    single = minkowski_region(3, 1, 0.05)
    assert np.array_equal(single.occupancy, rasterize(hypocycloid_region(3), 0.05).occupancy)
    m32 = minkowski_region(3, 2, 0.02)
    assert grid_contains(m32, 9) and not grid_contains(m32, 9.2) and m32.half_extent >= 9
    seg = minkowski_region(2, 2, 0.05)
    assert grid_contains(seg, 3.9) and grid_contains(seg, -3.9) and not grid_contains(seg, 0.3j)
    with pytest.raises(ValueError):
        minkowski_region(4, 2)


def test_minkowski_monotonicity():
    # raster(3, 2) contains raster(3, 1) translated by the point 6 = 3 + 3 of H_3 + H_3
    cell = 0.05
    small = minkowski_region(3, 1, cell)
    big = minkowski_region(3, 2, cell)
    pts = small.cell_centers() + 6
    assert grid_contains(big, pts).all()
    assert grid_contains(big, small.cell_centers()).all()


def test_image_region_kinds():
    assert image_region(6) is None and image_region(1) is None
    assert image_region(5).d == 5
    assert image_region(9).label == "sum of 3 x H_3"


def test_exports_round_trip(tmp_path):
    h = hypocycloid_region(3, 512)
    write_boundary_csv(h, tmp_path / "b.csv")
    rows = (tmp_path / "b.csv").read_text().splitlines()
    assert rows[0] == "x,y" and len(rows) == 514
    back = np.array([complex(float(x), float(y)) for x, y in (r.split(",") for r in rows[1:])])
    assert np.array_equal(back, h.boundary)
    m = minkowski_region(3, 2, 0.05)
    write_raster_pgm(m, tmp_path / "m.pgm")
    r = read_raster_pgm(tmp_path / "m.pgm")
    assert np.array_equal(r.occupancy, m.occupancy)
    assert (r.origin, r.cell_size, r.tolerance_cells) == (m.origin, m.cell_size, m.tolerance_cells)


@given(st.floats(-4, 4), st.floats(-4, 4))
def test_grid_and_polygon_agree_away_from_boundary(x, y):
    h = hypocycloid_region(3)
    r = rasterize(h, 0.05)
    z = complex(x, y)
    if in_region(h, z, tol=-0.2):
        assert grid_contains(r, z)
    if not in_region(h, z, tol=0.2):
        assert not grid_contains(r, z)
