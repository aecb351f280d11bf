# coding: utf-8

# # Images of g_d: hypocycloids and their Minkowski sums
#
# For prime d the image of g_d is the region bounded by the d-cusp hypocycloid.
# For d = r^b it is a Minkowski sum of r^(b-1) copies of the r-cusp region,
# which we handle on a grid.

import tempfile
from pathlib import Path

import numpy as np

from subgroup_sums import build_g, grid_contains, hypocycloid_region, in_region, minkowski_region, sample_image
from subgroup_sums.geometry import write_boundary_csv, write_raster_pgm

# ## Sampling the pushforward of Haar measure

for d in (2, 3, 5, 7):
    vals = sample_image(build_g(d), 100_000, seed=d).values
    inside = in_region(hypocycloid_region(d), vals, tol=1e-3)
    print(f"d={d}: max |g| = {np.abs(vals).max():.4f}, inside H_{d}: {inside.mean():.0%}")

# ## A prime power: d = 9

region = minkowski_region(3, 2, 0.02)
vals = sample_image(build_g(9), 100_000, seed=9).values
print("raster", region.occupancy.shape, "contains 9:", grid_contains(region, 9), "contains 9.2:", grid_contains(region, 9.2))
print("g_9 samples inside:", f"{grid_contains(region, vals).mean():.0%}")

# ## Exports for plotting

out = Path(tempfile.mkdtemp(prefix="regions-"))
write_boundary_csv(hypocycloid_region(5), out / "h5.csv")
write_raster_pgm(minkowski_region(3, 2, 0.05), out / "h3x3.pgm")
print("wrote", sorted(p.name for p in out.iterdir()), "to", out)
