# coding: utf-8

# # Order-d subgroups and cyclotomic reduction
#
# For an odd prime power q = p^a with p = 1 mod d, the unit group mod q is cyclic
# and has exactly one subgroup of order d. This script walks through how the
# package picks a generator of it and how X^k is reduced modulo phi_d.

from subgroup_sums import (
    cyclotomic_polynomial,
    element_of_order,
    elements_of_order,
    enumerate_admissible,
    primitive_root,
    reduction_table,
)

# ## Admissible moduli

for d in (3, 5, 7):
    mods = enumerate_admissible(d, 1, 200)
    print(f"d={d}:", ", ".join(str(m) for m in mods))

# ## The deterministic element of order d
#
# w = g^(phi(q)/d) where g is the smallest primitive root.

for q, d in ((7, 3), (151, 5), (3721, 5), (961, 3)):
    w = element_of_order(q, d)
    print(f"q={q:5d} d={d}  g={primitive_root(q):3d}  w={w.w:5d}  subgroup={w.powers()}")

# Every other choice differs by an exponent coprime to d.
print("all order-5 elements mod 31:", [w.w for w in elements_of_order(31, 5)])

# ## phi_d and the reduction table
#
# Column k holds the coefficients of X^k mod phi_d, constant term first.

for d in (3, 5, 9):
    print(f"phi_{d} = {cyclotomic_polynomial(d)}")
    print(reduction_table(d).entries)

# ## phi_d vanishes at every element of order d

for d in range(1, 13):
    phi = cyclotomic_polynomial(d)
    bad = [
        (m.q, w.w)
        for m in enumerate_admissible(d, 1, 2000)
        for w in elements_of_order(m, d)
        if phi.eval_mod(w.w, m.q)
    ]
    print(f"d={d:2d}: {'ok' if not bad else bad}")
