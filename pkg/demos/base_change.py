"""How a ramified base change subdivides the tree.

Adjoining pi^(1/n) refines the value lattice to (1/n)Z. Each edge of length
1 becomes n edges of length 1/n, and every profile is interpolated linearly.
Good and multiplicative reduction survive. Additive reduction may become good.
"""

from tropec import (
    SkeletonTree,
    SubgraphSelection,
    WeierstrassEquation,
    base_change_stability,
    classify,
    classify_on_subdivision,
    regularize,
    vertical_profile,
)

tree = SkeletonTree.chain(0, [0, 1])
curve = WeierstrassEquation(0, 1, 0, 0, "(t)")
edge = SubgraphSelection({1}, {0})

for n in (1, 2, 3):
    sub = regularize(tree, n)
    print(f"n = {n}: phi_Delta on the subdivided edge =", [str(x) for x in vertical_profile(curve, sub).disc.values])
    print("        types:", {v: str(t) for v, t in classify_on_subdivision(curve, tree, edge, n).items()})
print("multiplicative survives base change of degree 3:", base_change_stability(curve, tree, edge, 3))

# y^2 = x^3 + pi^2 has additive reduction over K, but Delta has valuation 4.
# Over K(pi^(1/3)) the twist u = pi^(1/3) makes it a unit, so it becomes good.
gauss = SkeletonTree.chain(0, [0])
additive = WeierstrassEquation(0, 0, 0, 0, "pi^2")
print()
print("y^2 = x^3 + pi^2 over K:          ", classify(additive, gauss, SubgraphSelection({0})).verdict)
ext = regularize(gauss, 3)
print("y^2 = x^3 + pi^2 over K(pi^(1/3)):", classify(additive, ext, SubgraphSelection({0})).verdict)
