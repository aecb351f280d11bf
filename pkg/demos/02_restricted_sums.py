# coding: utf-8

# # Restricted exponential sums and their Laurent polynomial form
#
# theta(a) = sum over x^d = 1 of e((a_1 x^m_1 + ... + a_n x^m_n) / q).
# The value is the Laurent polynomial f_{d,m} (or g_d when m is coprime with d)
# evaluated at a torus point built from exact residues.

import numpy as np

from subgroup_sums import (
    build_f,
    build_g,
    element_of_order,
    identity_residuals,
    named_sum,
    restricted_sum,
)

# ## A first example: d = 3, q = 7

w = element_of_order(7, 3)
rec = restricted_sum(7, w, (1,), (1,))
print("residues", rec.phase_exact, "value", rec.value)
print("(-1 + i sqrt 7)/2 =", (-1 + 1j * np.sqrt(7)) / 2)

# ## Named families
#
# S: a x,  K: a x + b/x,  B: a x^3 + b x,  Q: a x^4 + b x^2 + c x

for kind, params in (("S", (5,)), ("K", (5, 11)), ("B", (5, 11)), ("Q", (5, 11, 2))):
    print(kind, named_sum(kind, 1009, 7, params).value)

# ## The polynomials

print("g_3:")
print(build_g(3))
print("f_{5,(1,-1)} has", build_f(5, (1, -1)).num_vars, "variables")
print("f_{3,(3)}:", build_f(3, (3,)))

# ## The identity, checked on random parameters

rng = np.random.default_rng(0)
for q, d, m in ((151, 5, (1, -1)), (1009, 7, (3, 1)), (3721, 5, (4, 2, 1)), (961, 3, (3,))):
    w = element_of_order(q, d)
    params = rng.integers(0, q, size=(1000, len(m)))
    res_f, res_g, _ = identity_residuals(q, w, m, params)
    g_part = "n/a (m not coprime with d)" if res_g is None else f"{res_g.max():.1e}"
    print(f"q={q} d={d} m={m}: max |theta - f| = {res_f.max():.1e}, max |theta - g| = {g_part}")
