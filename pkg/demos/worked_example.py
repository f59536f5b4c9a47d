"""The two-vertex model and the curve y^2 = x^3 + x^2 + t, from start to finish.

The model has the Gauss point (0, 0) and the disk (0, 1) of radius 1 around
t = 0, joined by an edge of length 1. The discriminant vanishes at t = 0,
which retracts onto the inner vertex, and at t = -4/27, which retracts onto
the root.
"""

from tropec import (
    SkeletonTree,
    SubgraphSelection,
    WeierstrassEquation,
    classify,
    completion_closure,
    invariants,
    minimality_report,
    specialize_divisor,
    transvection_check,
    vertical_profile,
)
from tropec.functions import FactoredFunction
from tropec.valued import fmt_q


def q(values):
    return [fmt_q(x) for x in values]


tree = SkeletonTree.chain(0, [0, 1])
curve = WeierstrassEquation(0, 1, 0, 0, "(t)")

inv = invariants(curve)
print("Delta =", inv.disc)
print("c4    =", inv.c4)
print("j     =", inv.j)

# The divisor of Delta specializes to the graph divisor (-1, +1).
disc = FactoredFunction.parse("-432*(t)*(t + 4/27)")
print("rho(div Delta) =", q(specialize_divisor(tree, disc)))

prof = vertical_profile(curve, tree)
print("phi_Delta =", q(prof.disc.values), " phi_c4 =", q(prof.c4.values), " phi_j =", q(prof.j.values))

rep = minimality_report(curve, tree)
print("minimal at every vertex:", rep.is_minimal(), " d =", q(rep.d))

t1 = SubgraphSelection({0})
t2 = SubgraphSelection({1}, {0})
print()
print("T1 = {root}               ->", classify(curve, tree, t1).verdict)
print("T2 = {open edge, inner}   ->", classify(curve, tree, t2).verdict)
# The closure adds the root, where Delta is a unit but the edge is multiplicative.
print("closure of T2             ->", classify(curve, tree, completion_closure(tree, t2)).verdict)

# j has a simple pole along the edge, so every l >= 3 gives a transvection.
cert = transvection_check(curve, tree, 0, ell=5, group_order=120)
print()
print("transvection certificate:", cert.to_json())
