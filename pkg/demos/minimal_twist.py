"""A non-minimal equation and the twist that repairs it.

y^2 = x^3 - 3 t^4 x + t^6 + t^7 is minimal at the root but not on the disk
around t = 0: every invariant is divisible by a power of t there. A single
change of coordinates x = u^2 x', y = u^3 y' with u = t removes the excess
at that vertex without disturbing the root.
"""

from tropec import SkeletonTree, WeierstrassEquation, construct_s_minimal_twist, minimality_report, transform
from tropec.valued import fmt_q


def q(values):
    return [fmt_q(x) for x in values]


tree = SkeletonTree.chain(0, [0, 1])
curve = WeierstrassEquation(0, 0, 0, "-3*(t)^4", ["(t)^6", "(t)^7"])

before = minimality_report(curve, tree)
print("kappa before:", q(before.kappa), " d:", q(before.d))

tr = construct_s_minimal_twist(curve, tree)
print("u =", tr.u_factored)
twisted = transform(curve, tr)
print("twisted curve a =", twisted.to_json()["a"])

after = minimality_report(twisted, tree)
print("kappa after:", q(after.kappa), " d:", q(after.d))

# Scaling by a power of pi is repaired the same way, with a constant u.
scaled = WeierstrassEquation(0, 0, 0, "-3*pi^4", ["pi^6*(t)", "pi^6"])
print()
print("pi-scaled curve, kappa:", q(minimality_report(scaled, tree).kappa))
print("u =", construct_s_minimal_twist(scaled, tree).u_factored)

# On a long edge the vertex centers may not suffice. Extra centers help.
long = SkeletonTree.chain(0, [0, 2])
w = WeierstrassEquation(0, 0, 0, "-3*(t)^2", "(t)^3")
print()
print("long edge, kappa:", q(minimality_report(w, long).kappa))
tr = construct_s_minimal_twist(w, long, extra_centers=["pi"])
print("u with an extra center at pi:", tr.u_factored)
print("kappa after:", q(minimality_report(transform(w, tr), long).kappa))
