# coding: utf-8

# # Equidistribution at desk scale
#
# As q grows, the sums spread out like the pushforward of Haar measure under
# g_d. We measure this with binned L1 distances and with Weyl sums of the
# underlying fractional tuples.

from subgroup_sums import (
    GridSpec,
    SumFamilySpec,
    build_g,
    element_of_order,
    enumerate_admissible,
    family_values,
    histogram_distance,
    sample_image,
    tuple_cloud,
    weyl_scan,
)

ref = sample_image(build_g(3), 1_000_000, seed=1)
grid = GridSpec.for_degree(3)

# ## Gauss periods S_q(a, 3) for growing q

for q in (1861, 19993, 326041):
    _, vals = family_values(SumFamilySpec(3, (1,), ("full",)), q)
    print(f"q={q:7d}: L1 to g_3 pushforward = {histogram_distance(vals, ref, grid):.4f}")

# ## Weyl sums of the tuples (a/q, a w/q)
#
# With a over all of Z/qZ the sum is exactly 1 or 0, depending on whether
# some small y kills (1, w) mod q.

for m in enumerate_admissible(3, 1, 80):
    cloud = tuple_cloud(m, element_of_order(m, 3), (1,), ["full"])
    rep = weyl_scan(cloud, 3)
    where = f", attained at y={rep.argmax}" if rep.max_modulus else ""
    print(f"q={m.q:3d}: max |Weyl| over height <= 3 is {rep.max_modulus}{where}")

# ## Restricting a to a subgroup
#
# Kloosterman-type sums with a in a subgroup of index 2, 6 and 1.

ref5 = sample_image(build_g(5), 1_000_000, seed=2)
for q, h in ((1901, 950), (421**2, 29470), (971**2, 941870)):
    _, vals = family_values(SumFamilySpec(5, (1, -1), (f"subgroup:{h}", "fixed:1")), q)
    print(f"q={q:7d} |H|={h:6d}: L1 to g_5 = {histogram_distance(vals, ref5, GridSpec.for_degree(5)):.4f}")
