# coding: utf-8

# # Bezout certificates: q never divides f(w) once q is large
#
# phi_d is irreducible, so any nonzero f of degree below phi(d) is coprime to
# it and a phi_d + b f = n for integral a, b and a positive integer n.
# Evaluating at w kills phi_d, so q cannot divide f(w) when q > n.

import numpy as np

from subgroup_sums import (
    Polynomial,
    element_of_order,
    enumerate_admissible,
    myerson_certificate,
    myerson_check,
    subgroup_of_order,
    subgroup_weyl_profile,
)
from subgroup_sums.cli import random_polynomial

cert = myerson_certificate(Polynomial([-1, 1]), 3)
a, b = cert.cofactors
print(f"({a}) * phi_3 + ({b}) * (X - 1) = {cert.n}")

rng = np.random.default_rng(4)
for d in (3, 4, 5, 7):
    f = random_polynomial(rng, {3: 2, 4: 2, 5: 4, 7: 6}[d], bound=2)
    cert = myerson_certificate(f, d)
    if cert.n > 10**6:
        # n grows fast with the degree; only q > n is covered by the certificate
        print(f"d={d} f={f}: n={cert.n}, too large to scan here")
        continue
    results = myerson_check(cert, (1, cert.n + 5000), all_elements=True)
    worst = max((r.valuation or 0) for r in results) if results else None
    print(f"d={d} f={f}: n={cert.n}, {len(results)} checks, all pass: {all(r.passed for r in results)}, max beta={worst}")

# ## Subgroup sums of e(a f(w) / q)
#
# Take q = p^2 and H the subgroup of order p - 1, so |H| is about sqrt q.
# The normalised sums are small and tend to shrink as q grows.

f = Polynomial([1, 2])
for p in (11, 31, 61, 101, 151, 211, 281, 401, 601, 811):
    m = enumerate_admissible(5, p * p, p * p)[0]
    val = subgroup_weyl_profile(m, subgroup_of_order(m, p - 1), f, element_of_order(m, 5))
    print(f"q={p}^2 |H|={p - 1:4d}: |mean e(a f(w)/q)| = {val:.4f}")
