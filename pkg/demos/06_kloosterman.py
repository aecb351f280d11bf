# coding: utf-8

# # Complete Kloosterman sums
#
# |K_q(a, b)| <= 2 sqrt q. For q = p^2 half of the normalised values are
# exactly zero and the rest follow an arcsine law. For prime q they follow the
# semicircle (Sato-Tate) law.

import math

import numpy as np

from subgroup_sums import enumerate_admissible, kloosterman_complete, kloosterman_profile, kloosterman_values

print("K_5(1, 1) =", kloosterman_complete(5, 1, 1))
print("K_961(1, 1) =", kloosterman_complete(961, 1, 1))

# ## Weil bound on a sample of moduli

rng = np.random.default_rng(0)
worst = 0.0
for m in enumerate_admissible(1, 3, 3000):
    k = rng.integers(0, m.phi_q, size=(200, 2))
    units = k + k // (m.p - 1) + 1
    worst = max(worst, np.abs(kloosterman_values(m, units[:, 0], units[:, 1])).max() / (2 * math.sqrt(m.q)))
print(f"max |K| / 2 sqrt q over odd prime powers up to 3000: {worst:.6f}")

# ## The two distributions

for q in (961, 6007):
    prof = kloosterman_profile(q)
    print(f"q={q}: zero fraction {prof.zero_fraction:.3f}, L1 to Sato-Tate {prof.sato_tate_l1:.3f}, "
          f"nonzero part L1 to arcsine {prof.arcsine_l1:.3f}")
