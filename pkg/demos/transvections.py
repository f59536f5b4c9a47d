"""Transvections in SL2(F_l), their fixed lines, and inertia chains.

Two transvections with different fixed lines generate all of SL2(F_l). This
is the group-theoretic step behind surjectivity once inertia at an edge of
multiplicative reduction supplies one transvection.
"""

import random

from tropec import Sl2Matrix, check_surjectivity, fixed_line, generate_subgroup, inertia_chain, sl2_order

for ell in (3, 5, 7):
    upper = Sl2Matrix(1, 1, 0, 1, ell)
    lower = Sl2Matrix(1, 0, 1, 1, ell)
    group = generate_subgroup([upper, lower])
    print(f"l = {ell}: |<upper, lower>| = {len(group)}, |SL2(F_l)| = {sl2_order(ell)}")

rng = random.Random(3)
ell = 5
tau = Sl2Matrix(1, 1, 0, 1, ell)
print()
for _ in range(4):
    g = Sl2Matrix(1, rng.randrange(ell), 0, 1, ell) @ Sl2Matrix(1, 0, rng.randrange(ell), 1, ell)
    conj = g @ tau @ g.inverse()
    print(f"g = {g.rows()}: fixed line of g tau g^-1 = {fixed_line(conj)}, generates SL2: {check_surjectivity([tau, conj])}")

# Along an edge subdivided n times, inertia of order m shrinks to m / gcd(i, m).
print()
for n, m in ((6, 6), (4, 2), (12, 4)):
    print(f"inertia chain n={n}, m={m}:", inertia_chain(n, m).orders)
